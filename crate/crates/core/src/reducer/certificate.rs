//! Extraction certificates and their independent verifier.
//!
//! The verifier recomputes everything from the input graph: Γ, every degree
//! at every collect event, and a fresh peeling of the kept vertices. It uses
//! nothing from the extraction path besides [`Graph`].

use std::collections::HashSet;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::charge::{format_ratio, parse_ratio};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum Event {
    Collect { v: VertexId },
    Delete { v: VertexId },
}

impl Event {
    pub fn vertex(self) -> VertexId {
        match self {
            Event::Collect { v } | Event::Delete { v } => v,
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Collect { v } => write!(f, "collect {v}"),
            Event::Delete { v } => write!(f, "delete {v}"),
        }
    }
}

/// The deletion set and the full interleaved log of one extraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractionCertificate {
    /// Γ of the input graph.
    #[serde(serialize_with = "ratio_out", deserialize_with = "ratio_in")]
    pub gamma: Rational64,
    pub events: Vec<Event>,
    pub deletions: Vec<VertexId>,
}

fn ratio_out<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

fn ratio_in<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
    let s = String::deserialize(d)?;
    parse_ratio(&s).ok_or_else(|| serde::de::Error::custom(format!("not a rational: {s:?}")))
}

impl ExtractionCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<ExtractionCertificate, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("event {position} ({event}): vertex is not in the graph")]
    UnknownVertex { position: usize, event: Event },
    #[error("event {position} ({event}): vertex was already removed")]
    DoubleEvent { position: usize, event: Event },
    #[error("event {position} ({event}): degree {degree} exceeds 4")]
    IllegalCollect { position: usize, event: Event, degree: usize },
    #[error("deletion list disagrees with the delete events")]
    DeletionMismatch,
    #[error("{remaining} vertices are never removed")]
    Incomplete { remaining: usize },
    #[error("certificate claims gamma {claimed}, graph has {actual}")]
    GammaMismatch { claimed: String, actual: String },
    #[error("{deletions} deletions exceed the budget {gamma}")]
    OverBudget { deletions: usize, gamma: String },
    #[error("kept vertices do not induce a 4-degenerate subgraph ({stuck} remain after peeling)")]
    NotDegenerate { stuck: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub gamma: Rational64,
    pub deletions: usize,
    pub collected: usize,
}

/// 36·Γ computed from scratch: 3|V| + (2|E| - 5|V|) + 2·(tree components).
fn independent_gamma(g: &Graph) -> Rational64 {
    let ids: Vec<VertexId> = g.vertices().collect();
    let mut seen = HashSet::new();
    let mut trees = 0i64;
    for &s in &ids {
        if !seen.insert(s) {
            continue;
        }
        let (mut nodes, mut degree_sum) = (0usize, 0usize);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            nodes += 1;
            degree_sum += g.neighbors(u).len();
            for &w in g.neighbors(u) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if degree_sum / 2 + 1 == nodes {
            trees += 1;
        }
    }
    let n = ids.len() as i64;
    let e = ids.iter().map(|&v| g.neighbors(v).len()).sum::<usize>() as i64 / 2;
    Rational64::new(3 * n + 2 * e - 5 * n + 2 * trees, 36)
}

/// Replays `cert` against `g` and checks every certificate invariant,
/// returning the first violation.
pub fn verify_certificate(g: &Graph, cert: &ExtractionCertificate) -> Result<VerifyReport, CertificateError> {
    let bound = g.id_bound();
    let mut live = vec![false; bound];
    let mut degree = vec![0usize; bound];
    for v in g.vertices() {
        live[v] = true;
        degree[v] = g.neighbors(v).len();
    }
    let mut remaining = g.vertex_count();
    let mut deleted = Vec::new();
    for (position, &event) in cert.events.iter().enumerate() {
        let v = event.vertex();
        if v >= bound || !g.contains(v) {
            return Err(CertificateError::UnknownVertex { position, event });
        }
        if !live[v] {
            return Err(CertificateError::DoubleEvent { position, event });
        }
        match event {
            Event::Collect { .. } if degree[v] > 4 => {
                return Err(CertificateError::IllegalCollect { position, event, degree: degree[v] });
            }
            Event::Delete { .. } => deleted.push(v),
            Event::Collect { .. } => {}
        }
        live[v] = false;
        remaining -= 1;
        for &w in g.neighbors(v) {
            if live[w] {
                degree[w] -= 1;
            }
        }
    }
    if deleted != cert.deletions {
        return Err(CertificateError::DeletionMismatch);
    }
    if remaining > 0 {
        return Err(CertificateError::Incomplete { remaining });
    }
    let actual = independent_gamma(g);
    if actual != cert.gamma {
        return Err(CertificateError::GammaMismatch { claimed: format_ratio(&cert.gamma), actual: format_ratio(&actual) });
    }
    if Rational64::from_integer(deleted.len() as i64) > actual {
        return Err(CertificateError::OverBudget { deletions: deleted.len(), gamma: format_ratio(&actual) });
    }
    // Fresh peeling of G - S, independent of the logged order.
    let removed: HashSet<VertexId> = deleted.iter().copied().collect();
    let mut deg = vec![0usize; bound];
    let mut gone = vec![true; bound];
    let mut stack = Vec::new();
    for v in g.vertices().filter(|v| !removed.contains(v)) {
        gone[v] = false;
        deg[v] = g.neighbors(v).iter().filter(|w| !removed.contains(w)).count();
    }
    stack.extend(g.vertices().filter(|&v| !gone[v] && deg[v] <= 4));
    for &v in &stack {
        gone[v] = true;
    }
    let mut peeled = 0;
    while let Some(v) = stack.pop() {
        peeled += 1;
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
                if deg[w] <= 4 {
                    gone[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let kept = g.vertex_count() - deleted.len();
    if peeled < kept {
        return Err(CertificateError::NotDegenerate { stuck: kept - peeled });
    }
    Ok(VerifyReport { gamma: actual, deletions: deleted.len(), collected: kept })
}
