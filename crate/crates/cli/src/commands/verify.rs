use anyhow::{bail, Context, Result};
use log::info;
use rayon::prelude::*;
use serde::Serialize;

use degen4::charge::format_ratio;
use degen4::cuts::{check_dichotomy, good_subgraph};
use degen4::discharging::{check_distance_inflow, check_lemma_faces, expected_total, run_staged, DischargeConfig};
use degen4::embed::EmbeddedGraph;
use degen4::generators::stream::StreamItem;
use degen4::graph::Graph;
use degen4::reducer::{extract, theorem2_witness, ReducerError, Theorem2Outcome};
use degen4::{verify_certificate, ExtractionCertificate};

use super::{kept_fraction, pattern_config, report_counterexample, theorem1_floor};
use crate::config::{csv_header, RunConfig};
use crate::input::{csv_writer, load, read_text};
use crate::{Status, Suite, VerifyArgs};

#[derive(Serialize)]
struct Row {
    graph: usize,
    suite: Suite,
    status: &'static str,
    detail: String,
}

enum Verdict {
    Pass(String),
    Skip(String),
    Fail(String),
    Counterexample(String),
}

impl Verdict {
    fn from_check(ok: bool, detail: String) -> Verdict {
        if ok {
            Verdict::Pass(detail)
        } else {
            Verdict::Fail(detail)
        }
    }
}

/// Certificates by input index, from the JSON-lines file written by
/// `extract --certificates`.
fn load_certificates(text: &str) -> Result<Vec<Option<ExtractionCertificate>>> {
    let mut certs = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (line_no == 0 && line.starts_with("{\"degen4\"")) {
            continue;
        }
        if line == "null" {
            certs.push(None);
        } else {
            let cert = ExtractionCertificate::from_json(line).with_context(|| format!("certificate line {}", line_no + 1))?;
            certs.push(Some(cert));
        }
    }
    Ok(certs)
}

fn embedded(item: &StreamItem) -> Result<&EmbeddedGraph, Verdict> {
    item.embedding.as_ref().map_err(|_| Verdict::Skip("not planar".into()))
}

fn conservation(eg: &EmbeddedGraph, config: DischargeConfig) -> Verdict {
    let expected = expected_total(eg);
    let (s0, s1, s2, s3) = run_staged(eg, config);
    for (stage, s) in [("initial", &s0), ("step 1", &s1), ("step 2", &s2), ("step 3", &s3)] {
        let total = s.total(eg);
        if total != expected {
            return Verdict::Fail(format!("total {total} after {stage}, expected {expected}"));
        }
    }
    Verdict::Pass(format!("total {expected}"))
}

fn lemma7(eg: &EmbeddedGraph, config: DischargeConfig) -> Verdict {
    let state = run_staged(eg, config).3;
    let check = check_lemma_faces(&state, eg);
    if !check.hypothesis_met {
        return Verdict::Skip("needs a connected graph of minimum degree 5".into());
    }
    let detail = match check.violations.first() {
        Some(v) => format!("face f{} (length {}) received {} and ends at {}", v.face, v.length, v.received, v.final_charge),
        None => format!("vertex total {}", check.vertex_total),
    };
    Verdict::from_check(check.passed(), detail)
}

fn lemma9(eg: &EmbeddedGraph, config: DischargeConfig) -> Verdict {
    let g = &eg.graph;
    if !g.is_connected() || g.min_degree().unwrap_or(0) < 5 {
        return Verdict::Skip("needs a connected graph of minimum degree 5".into());
    }
    let gs = match good_subgraph(eg) {
        Ok(gs) => gs,
        Err(e) => return Verdict::Fail(format!("no good subgraph: {e}")),
    };
    let state = run_staged(eg, config).3;
    let check = check_dichotomy(&gs, &state);
    let detail = match check.rich_extraordinary {
        Some(v) => format!("extraordinary v{v} keeps {}", state.vertex_charge[v]),
        None => format!("ordinary total {}", check.ordinary_total),
    };
    Verdict::from_check(check.passed(), detail)
}

fn lemma12(eg: &EmbeddedGraph, config: DischargeConfig) -> Verdict {
    let state = run_staged(eg, config).3;
    match check_distance_inflow(&state, eg).first() {
        Some(v) => Verdict::Fail(format!("v{} (degree {}, {} fives) received {} > {}", v.receiver, v.degree, v.fives, v.inflow, v.bound)),
        None => Verdict::Pass(String::new()),
    }
}

fn extraction(item: &StreamItem) -> Result<ExtractionCertificate, Verdict> {
    embedded(item)?;
    extract(&item.graph).map_err(|e| match e {
        ReducerError::Counterexample(found) => {
            report_counterexample(item.index, &found);
            Verdict::Counterexample(found.context.clone())
        }
        ReducerError::NotPlanar(_) => Verdict::Skip("not planar".into()),
    })
}

fn theorem1(item: &StreamItem) -> Verdict {
    let g = &item.graph;
    let Some(floor) = theorem1_floor(g) else {
        return Verdict::Skip("needs a connected graph of average degree at least 2".into());
    };
    match extraction(item) {
        Ok(cert) => {
            let kept = kept_fraction(g.vertex_count(), cert.deletions.len());
            Verdict::from_check(kept >= floor, format!("kept {} >= {}", format_ratio(&kept), format_ratio(&floor)))
        }
        Err(v) => v,
    }
}

fn corollary3(item: &StreamItem) -> Verdict {
    let n = item.graph.vertex_count();
    if n == 0 {
        return Verdict::Skip("empty graph".into());
    }
    match extraction(item) {
        Ok(cert) => {
            let s = cert.deletions.len();
            Verdict::from_check(9 * s < n, format!("{s} deletions, n = {n}"))
        }
        Err(v) => v,
    }
}

fn theorem2(item: &StreamItem) -> Verdict {
    if let Err(v) = embedded(item) {
        return v;
    }
    match theorem2_witness(&item.graph) {
        Ok(Some(Theorem2Outcome::CollectAll(_))) => Verdict::Pass("collect all".into()),
        Ok(Some(Theorem2Outcome::Witness { deleted, collected })) => Verdict::Pass(format!("delete {deleted}, collect {collected:?}")),
        Ok(None) => Verdict::Skip("fewer than 7 vertices".into()),
        Err(ReducerError::Counterexample(found)) => {
            report_counterexample(item.index, &found);
            Verdict::Counterexample(found.context.clone())
        }
        Err(ReducerError::NotPlanar(_)) => Verdict::Skip("not planar".into()),
    }
}

fn certificate(g: &Graph, cert: Option<&ExtractionCertificate>) -> Verdict {
    let Some(cert) = cert else {
        return Verdict::Skip("no certificate".into());
    };
    match verify_certificate(g, cert) {
        Ok(r) => Verdict::Pass(format!("{} deletions, {} collected, gamma {}", r.deletions, r.collected, format_ratio(&r.gamma))),
        Err(e) => Verdict::Fail(e.to_string()),
    }
}

fn check(suite: Suite, item: &StreamItem, config: DischargeConfig, cert: Option<&ExtractionCertificate>) -> Verdict {
    let on_embedding = |f: fn(&EmbeddedGraph, DischargeConfig) -> Verdict| match embedded(item) {
        Ok(eg) => f(eg, config),
        Err(v) => v,
    };
    match suite {
        Suite::Conservation => on_embedding(conservation),
        Suite::Lemma7 => on_embedding(lemma7),
        Suite::Lemma9 => on_embedding(lemma9),
        Suite::Lemma12 => on_embedding(lemma12),
        Suite::Theorem1 => theorem1(item),
        Suite::Corollary3 => corollary3(item),
        Suite::Theorem2 => theorem2(item),
        Suite::Certificate => certificate(&item.graph, cert),
    }
}

pub fn run(args: &VerifyArgs, config: &RunConfig) -> Result<Status> {
    let certs = match &args.certificates {
        Some(path) => load_certificates(&read_text(path)?)?,
        None if args.suite.contains(&Suite::Certificate) => bail!("the certificate suite needs --certificates"),
        None => Vec::new(),
    };
    let corpus = load(&args.input)?;
    info!("verifying {} graphs against {:?}", corpus.items.len(), args.suite);
    let discharge = pattern_config(args.pattern);
    let rows: Vec<(Row, Status)> = corpus
        .items
        .par_iter()
        .flat_map_iter(|item| {
            let cert = certs.get(item.index).and_then(Option::as_ref);
            args.suite.iter().map(move |&suite| {
                let (status, detail, code) = match check(suite, item, discharge, cert) {
                    Verdict::Pass(d) => ("pass", d, Status::Pass),
                    Verdict::Skip(d) => ("skip", d, Status::Pass),
                    Verdict::Fail(d) => ("fail", d, Status::Violation),
                    Verdict::Counterexample(d) => ("counterexample", d, Status::Counterexample),
                };
                (Row { graph: item.index, suite, status, detail }, code)
            })
        })
        .collect();
    let mut csv = csv_writer(args.output.as_deref(), &csv_header(config, &corpus.digest))?;
    for (row, _) in &rows {
        csv.serialize(row)?;
    }
    csv.flush()?;
    Ok(rows.iter().map(|r| r.1).max().unwrap_or(Status::Pass))
}
