use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use log::{info, warn};
use rayon::prelude::*;
use serde::Serialize;

use degen4::charge::format_ratio;
use degen4::generators::stream::StreamItem;
use degen4::potential::gamma;
use degen4::reducer::{extract_with_report, ExtractionReport, ReducerError};
use degen4::verify_certificate;

use super::{bound_violation, kept_fraction, report_counterexample};
use crate::config::{csv_header, json_header, RunConfig};
use crate::input::{csv_writer, load, writer};
use crate::{ExtractArgs, Status};

#[derive(Serialize)]
struct Row {
    graph: usize,
    n: usize,
    edges: usize,
    avg_degree: String,
    gamma: String,
    deletions: Option<usize>,
    collected: Option<usize>,
    fraction: Option<String>,
    fallback_hits: Option<usize>,
    status: String,
}

struct Outcome {
    row: Row,
    report: Option<ExtractionReport>,
    status: Status,
}

fn process(item: &StreamItem) -> Outcome {
    let g = &item.graph;
    let mut row = Row {
        graph: item.index,
        n: g.vertex_count(),
        edges: g.edge_count(),
        avg_degree: g.average_degree().map(|d| format_ratio(&d)).unwrap_or_default(),
        gamma: format_ratio(&gamma(g)),
        deletions: None,
        collected: None,
        fraction: None,
        fallback_hits: None,
        status: String::new(),
    };
    if item.embedding.is_err() {
        warn!("graph {} is not planar", item.index);
        row.status = "not_planar".into();
        return Outcome { row, report: None, status: Status::InputError };
    }
    let report = match extract_with_report(g) {
        Ok(r) => r,
        Err(ReducerError::Counterexample(found)) => {
            report_counterexample(item.index, &found);
            row.status = "counterexample".into();
            return Outcome { row, report: None, status: Status::Counterexample };
        }
        Err(ReducerError::NotPlanar(_)) => {
            row.status = "not_planar".into();
            return Outcome { row, report: None, status: Status::InputError };
        }
    };
    let cert = &report.certificate;
    row.deletions = Some(cert.deletions.len());
    row.collected = Some(report.collected());
    row.fraction = Some(format_ratio(&kept_fraction(row.n, cert.deletions.len())));
    row.fallback_hits = Some(report.fallback_hits);
    let problem = match verify_certificate(g, cert) {
        Err(e) => Some(format!("certificate rejected: {e}")),
        Ok(_) => bound_violation(g, cert),
    };
    let status = match problem {
        Some(p) => {
            warn!("graph {}: {p}", item.index);
            row.status = format!("violation: {p}");
            Status::Violation
        }
        None => {
            row.status = "ok".into();
            Status::Pass
        }
    };
    Outcome { row, report: Some(report), status }
}

pub fn run(args: &ExtractArgs, config: &RunConfig) -> Result<Status> {
    let corpus = load(&args.input)?;
    info!("extracting from {} graphs ({} over the size limit)", corpus.items.len(), corpus.skipped.len());
    let outcomes: Vec<Outcome> = corpus.items.par_iter().map(process).collect();

    let mut csv = csv_writer(args.output.as_deref(), &csv_header(config, &corpus.digest))?;
    for o in &outcomes {
        csv.serialize(&o.row)?;
    }
    csv.flush()?;

    if let Some(path) = &args.certificates {
        let mut out = writer(Some(path))?;
        writeln!(out, "{}", json_header(config, &corpus.digest))?;
        // One line per input graph, in input order; skipped graphs get null.
        let mut by_index = outcomes.iter().map(|o| (o.row.graph, o)).peekable();
        let total = corpus.items.len() + corpus.skipped.len();
        for index in 0..total {
            match by_index.next_if(|(i, _)| *i == index) {
                Some((_, Outcome { report: Some(r), .. })) => writeln!(out, "{}", r.certificate.to_json())?,
                _ => writeln!(out, "null")?,
            }
        }
        out.flush()?;
    }
    if let Some(dir) = &args.cert_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        fs::write(dir.join("run.meta.json"), json_header(config, &corpus.digest).to_string())?;
        for o in &outcomes {
            if let Some(r) = &o.report {
                let path = dir.join(format!("{}.json", o.row.graph));
                fs::write(&path, r.certificate.to_json()).with_context(|| format!("cannot write {}", path.display()))?;
            }
        }
    }
    Ok(outcomes.iter().map(|o| o.status).max().unwrap_or(Status::Pass))
}
