use anyhow::{bail, Result};
use serde::Serialize;

use degen4::discharging::{expected_total, report_rows, run_discharging_with, Element};

use super::pattern_config;
use crate::config::{csv_header, RunConfig};
use crate::input::{csv_writer, load};
use crate::{DischargeArgs, Status};

#[derive(Serialize)]
struct Row {
    graph: usize,
    element: String,
    kind: &'static str,
    size: Option<usize>,
    #[serde(rename = "type")]
    type_label: &'static str,
    initial: Option<String>,
    step1: Option<String>,
    step2: Option<String>,
    step3: Option<String>,
    #[serde(rename = "final")]
    final_charge: String,
}

pub fn run(args: &DischargeArgs, config: &RunConfig, verbosity: u8) -> Result<Status> {
    let corpus = load(&args.input)?;
    let mut csv = csv_writer(args.output.as_deref(), &csv_header(config, &corpus.digest))?;
    let mut status = Status::Pass;
    for item in &corpus.items {
        let Ok(eg) = &item.embedding else {
            csv.flush()?;
            bail!("graph {} is not planar", item.index);
        };
        let state = run_discharging_with(eg, pattern_config(args.pattern));
        if verbosity >= 2 {
            for t in &state.ledger {
                eprintln!("graph {} step {}: {} -> {} {}", item.index, t.step, t.source, t.target, t.amount);
            }
        }
        for r in report_rows(&state, eg) {
            csv.serialize(Row {
                graph: item.index,
                element: r.element.to_string(),
                kind: match r.element {
                    Element::Vertex(_) => "vertex",
                    Element::Face(_) => "face",
                },
                size: Some(r.size),
                type_label: r.type_label.unwrap_or(""),
                initial: Some(r.initial.to_string()),
                step1: Some(r.step_deltas[0].to_string()),
                step2: Some(r.step_deltas[1].to_string()),
                step3: Some(r.step_deltas[2].to_string()),
                final_charge: r.final_charge.to_string(),
            })?;
        }
        let total = state.total(eg);
        let expected = expected_total(eg);
        if total != expected {
            log::warn!("graph {}: total charge {total}, expected {expected}", item.index);
            status = status.max(Status::Violation);
        }
        csv.serialize(Row {
            graph: item.index,
            element: "total".into(),
            kind: "total",
            size: None,
            type_label: "",
            initial: None,
            step1: None,
            step2: None,
            step3: None,
            final_charge: total.to_string(),
        })?;
    }
    csv.flush()?;
    Ok(status)
}
