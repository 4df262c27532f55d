use anyhow::Result;
use log::warn;
use rayon::prelude::*;
use serde::Serialize;

use degen4::charge::{floor_ratio, format_ratio};
use degen4::generators::stream::StreamItem;
use degen4::oracle::{min_deletion_exact, OracleError};
use degen4::potential::gamma;
use degen4::reducer::{extract, ReducerError};

use super::report_counterexample;
use crate::config::{csv_header, RunConfig};
use crate::input::{csv_writer, load};
use crate::{OracleArgs, Status};

/// Largest order run through the oracle when `--max-n` is not given.
const DEFAULT_MAX_N: usize = 20;

#[derive(Serialize)]
struct Row {
    graph: usize,
    n: usize,
    optimum: Option<usize>,
    optimal: Option<bool>,
    extract_s: Option<usize>,
    floor_gamma: i64,
    gamma: String,
    explored: Option<u64>,
    time_ms: Option<u128>,
    status: String,
}

fn process(item: &StreamItem, args: &OracleArgs) -> (Row, Status) {
    let g = &item.graph;
    let gam = gamma(g);
    let mut row = Row {
        graph: item.index,
        n: g.vertex_count(),
        optimum: None,
        optimal: None,
        extract_s: None,
        floor_gamma: floor_ratio(&gam),
        gamma: format_ratio(&gam),
        explored: None,
        time_ms: None,
        status: String::new(),
    };
    match min_deletion_exact(g, args.k, args.budget) {
        Ok(r) => {
            row.optimum = Some(r.optimum_deletions);
            row.optimal = Some(r.optimal);
            row.explored = Some(r.explored);
            row.time_ms = Some(r.time.as_millis());
        }
        Err(OracleError::TooLarge(n)) => {
            row.status = format!("too_large ({n})");
            return (row, Status::InputError);
        }
        Err(e) => {
            row.status = e.to_string();
            return (row, Status::InputError);
        }
    }
    // The sandwich compares against extraction, which is defined for k = 4
    // on planar input only.
    if args.k != 4 {
        row.status = "ok".into();
        return (row, Status::Pass);
    }
    if item.embedding.is_err() {
        row.status = "not_planar".into();
        return (row, Status::InputError);
    }
    let s = match extract(g) {
        Ok(cert) => cert.deletions.len(),
        Err(ReducerError::Counterexample(found)) => {
            report_counterexample(item.index, &found);
            row.status = "counterexample".into();
            return (row, Status::Counterexample);
        }
        Err(ReducerError::NotPlanar(_)) => {
            row.status = "not_planar".into();
            return (row, Status::InputError);
        }
    };
    row.extract_s = Some(s);
    let optimum = row.optimum.unwrap_or(0);
    // Without a completed search the optimum is only an upper bound, so the
    // lower half of the sandwich is not checked.
    let exact = row.optimal == Some(true);
    let problem = if exact && optimum > s {
        Some(format!("optimum {optimum} exceeds extraction's {s}"))
    } else if s as i64 > row.floor_gamma {
        Some(format!("extraction deleted {s} > floor(gamma) = {}", row.floor_gamma))
    } else {
        None
    };
    match problem {
        Some(p) => {
            warn!("graph {}: sandwich violated: {p}", item.index);
            row.status = format!("violation: {p}");
            (row, Status::Violation)
        }
        None => {
            row.status = if exact { "ok".into() } else { "budget_exhausted".into() };
            (row, Status::Pass)
        }
    }
}

pub fn run(args: &OracleArgs, config: &RunConfig) -> Result<Status> {
    let mut input = args.input.clone();
    input.max_n = Some(input.max_n.unwrap_or(DEFAULT_MAX_N));
    let corpus = load(&input)?;
    let rows: Vec<(Row, Status)> = corpus.items.par_iter().map(|item| process(item, args)).collect();
    let mut csv = csv_writer(args.output.as_deref(), &csv_header(config, &corpus.digest))?;
    for (row, _) in &rows {
        csv.serialize(row)?;
    }
    csv.flush()?;
    Ok(rows.iter().map(|r| r.1).max().unwrap_or(Status::Pass))
}
