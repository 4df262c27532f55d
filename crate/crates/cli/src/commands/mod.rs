pub mod discharge;
pub mod extract;
pub mod gen;
pub mod oracle;
pub mod verify;

use num_rational::Rational64;
use serde_json::json;

use degen4::charge::format_ratio;
use degen4::graph::Graph;
use degen4::reducer::CounterexampleFound;
use degen4::ExtractionCertificate;

/// Share of vertices kept by a deletion set of size `deletions`.
pub fn kept_fraction(n: usize, deletions: usize) -> Rational64 {
    if n == 0 {
        Rational64::from_integer(1)
    } else {
        Rational64::new((n - deletions) as i64, n as i64)
    }
}

/// The kept-fraction floor for a connected graph of average degree `d >= 2`;
/// `None` when the bound does not apply.
pub fn theorem1_floor(g: &Graph) -> Option<Rational64> {
    let d = g.average_degree().ok()?;
    (g.is_connected() && d >= Rational64::from_integer(2)).then(|| (Rational64::from_integer(38) - d) / 36)
}

/// Checks both size bounds on an extraction. Returns a description of the
/// first one that fails.
pub fn bound_violation(g: &Graph, cert: &ExtractionCertificate) -> Option<String> {
    let (n, s) = (g.vertex_count(), cert.deletions.len());
    if let Some(floor) = theorem1_floor(g) {
        let kept = kept_fraction(n, s);
        if kept < floor {
            return Some(format!("kept fraction {} below {}", format_ratio(&kept), format_ratio(&floor)));
        }
    }
    if n > 0 && 9 * s >= n {
        return Some(format!("{s} deletions is not below n/9 for n = {n}"));
    }
    None
}

/// Writes a counterexample report to stderr as one JSON object.
pub fn report_counterexample(index: usize, found: &CounterexampleFound) {
    let ledger: Vec<_> = found
        .ledger
        .iter()
        .map(|t| json!({ "source": t.source.to_string(), "target": t.target.to_string(), "amount": t.amount.to_string(), "step": t.step }))
        .collect();
    let report = json!({ "counterexample": { "graph": index, "graph6": found.graph6, "context": found.context, "ledger": ledger } });
    eprintln!("{report}");
}

pub fn pattern_config(p: crate::PatternArg) -> degen4::discharging::DischargeConfig {
    use degen4::discharging::{DischargeConfig, DistancePattern};
    DischargeConfig {
        pattern: match p {
            crate::PatternArg::Strict => DistancePattern::Strict,
            crate::PatternArg::Relaxed => DistancePattern::Relaxed,
        },
    }
}
