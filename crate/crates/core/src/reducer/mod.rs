//! Reductions and certified extraction.
//!
//! A reduction deletes one vertex of a minimum-degree-5 graph and collects
//! the whole closure that follows. The extraction loop alternates collect
//! closures with reductions until the graph is empty; every reduction lowers
//! Γ by at least 1 and collecting never raises it, so the number of
//! deletions is at most Γ of the input.

mod certificate;

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use log::{debug, warn};
use num_rational::Rational64;
use rayon::prelude::*;
use thiserror::Error;

use crate::collect::{collect_closure, collect_in_place, COLLECT_DEGREE};
use crate::cuts::{find_bad_cuts, find_bad_cuts_embedded, good_subgraph, BadCut};
use crate::discharging::{run_discharging, Transfer};
use crate::embed::{EmbedError, EmbeddedGraph};
use crate::graph::{Graph, VertexId};
use crate::graph6::to_graph6;
use crate::potential::{gamma, tree_components};

pub use certificate::{verify_certificate, CertificateError, Event, ExtractionCertificate, VerifyReport};

/// One deletion followed by the collect closure it triggers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub deleted: VertexId,
    pub collected: Vec<VertexId>,
    pub gamma_before: Rational64,
    pub gamma_after: Rational64,
}

impl ReductionStep {
    pub fn delta_gamma(&self) -> Rational64 {
        self.gamma_before - self.gamma_after
    }
}

/// A graph on which the search for a reduction failed. This
/// never happens on planar input; the report carries everything needed to
/// reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleFound {
    pub graph6: String,
    pub context: String,
    /// Discharging ledger of the component, when it was computed.
    pub ledger: Vec<Transfer>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReducerError {
    #[error("input is not planar")]
    NotPlanar(#[from] EmbedError),
    #[error("no reduction found ({}): {}", .0.context, .0.graph6)]
    Counterexample(Box<CounterexampleFound>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theorem2Outcome {
    /// The closure empties the graph.
    CollectAll(Vec<VertexId>),
    /// Deleting `deleted` lets the closure collect at least 6 vertices;
    /// `collected` holds the first 6 in closure order.
    Witness { deleted: VertexId, collected: Vec<VertexId> },
}

/// Either the graph is 4-degenerate, or some vertex deletion lets the
/// closure collect at least 6 vertices. Graphs with fewer than 7 vertices
/// that are neither are reported as `Ok(None)`; on 7 or more vertices that
/// outcome is an error.
pub fn theorem2_witness(g: &Graph) -> Result<Option<Theorem2Outcome>, ReducerError> {
    let all = collect_closure(g, COLLECT_DEGREE);
    if all.remainder.is_empty() {
        return Ok(Some(Theorem2Outcome::CollectAll(all.order)));
    }
    // Core vertices first: deleting one of them is what can start a cascade.
    let core: BTreeSet<VertexId> = all.remainder.vertices().collect();
    let order = core.iter().copied().chain(g.vertices().filter(|v| !core.contains(v)));
    for w in order {
        let r = collect_closure(&g.delete_vertex(w).expect("live vertex"), COLLECT_DEGREE);
        if r.order.len() >= 6 {
            let collected = r.order[..6].to_vec();
            return Ok(Some(Theorem2Outcome::Witness { deleted: w, collected }));
        }
    }
    if g.vertex_count() < 7 {
        return Ok(None);
    }
    Err(ReducerError::Counterexample(Box::new(CounterexampleFound {
        graph6: to_graph6(g),
        context: "no vertex deletion collects 6 vertices".into(),
        ledger: Vec::new(),
    })))
}

/// Closure of `g - w` for a graph `g` of minimum degree at least 5, in
/// collection order. Only the cascade started at `w` is touched.
pub fn closure_after_delete(g: &Graph, w: VertexId) -> Vec<VertexId> {
    let mut deg: HashMap<VertexId, usize> = HashMap::new();
    let mut removed: BTreeSet<VertexId> = BTreeSet::from([w]);
    let mut heap = BinaryHeap::new();
    let lower = |v: VertexId, deg: &mut HashMap<VertexId, usize>, heap: &mut BinaryHeap<Reverse<VertexId>>| {
        let d = deg.entry(v).or_insert_with(|| g.degree(v));
        *d -= 1;
        if *d == COLLECT_DEGREE {
            heap.push(Reverse(v));
        }
    };
    for &u in g.neighbors(w) {
        lower(u, &mut deg, &mut heap);
    }
    let mut order = Vec::new();
    while let Some(Reverse(v)) = heap.pop() {
        removed.insert(v);
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed.contains(&u) {
                lower(u, &mut deg, &mut heap);
            }
        }
    }
    order
}

/// Exact decrease of Γ when `removed` leaves a graph with no tree
/// component and none is left behind: `(ΔE - ΔV) / 18`.
fn delta_gamma_closed(g: &Graph, removed: &[VertexId]) -> Rational64 {
    let set: BTreeSet<VertexId> = removed.iter().copied().collect();
    let degree_sum: usize = removed.iter().map(|&v| g.degree(v)).sum();
    let inner = removed.iter().map(|&v| g.neighbors(v).iter().filter(|u| set.contains(u)).count()).sum::<usize>() / 2;
    let lost_edges = (degree_sum - inner) as i64;
    Rational64::new(lost_edges - removed.len() as i64, 18)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Candidate {
    deleted: VertexId,
    collected: Vec<VertexId>,
    delta: Rational64,
}

fn evaluate(g: &Graph, w: VertexId) -> Option<Candidate> {
    let collected = closure_after_delete(g, w);
    if collected.len() < 6 {
        return None;
    }
    let removed: Vec<VertexId> = std::iter::once(w).chain(collected.iter().copied()).collect();
    let delta = delta_gamma_closed(g, &removed);
    (delta >= Rational64::from_integer(1)).then_some(Candidate { deleted: w, collected, delta })
}

/// Best candidate: most collected, then largest ΔΓ, then smallest id.
fn best(g: &Graph, candidates: &[VertexId]) -> Option<Candidate> {
    candidates
        .par_iter()
        .filter_map(|&w| evaluate(g, w))
        .min_by(|a, b| b.collected.len().cmp(&a.collected.len()).then(b.delta.cmp(&a.delta)).then(a.deleted.cmp(&b.deleted)))
}

/// Closed distance-2 neighbourhood of `seeds`, ascending.
pub fn ball2(g: &Graph, seeds: &[VertexId]) -> Vec<VertexId> {
    let mut out: BTreeSet<VertexId> = BTreeSet::new();
    for &s in seeds {
        out.insert(s);
        for &u in g.neighbors(s) {
            out.insert(u);
            out.extend(g.neighbors(u).iter().copied());
        }
    }
    out.into_iter().collect()
}

/// Where a reduction was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchPhase {
    Hotspot,
    Fallback,
}

/// A reduction on a graph of minimum degree at least 5: deleted vertices
/// are tried near the hot spots first, then anywhere. The collected list
/// is the full closure.
pub fn find_reduction(g: &Graph, hotspots: &[VertexId]) -> Option<(ReductionStep, SearchPhase)> {
    let gamma_before = gamma(g);
    let step =
        |c: Candidate| ReductionStep { deleted: c.deleted, gamma_after: gamma_before - c.delta, collected: c.collected, gamma_before };
    let near = ball2(g, hotspots);
    if let Some(c) = best(g, &near) {
        return Some((step(c), SearchPhase::Hotspot));
    }
    let near: BTreeSet<VertexId> = near.into_iter().collect();
    let rest: Vec<VertexId> = g.vertices().filter(|v| !near.contains(v)).collect();
    best(g, &rest).map(|c| (step(c), SearchPhase::Fallback))
}

/// Positive-charge vertices of the good subgraph: ordinary vertices with
/// positive final charge and extraordinary vertices with charge at least 2.
/// When no good subgraph is available every positive vertex counts.
pub fn hotspots(eg: &EmbeddedGraph) -> (Vec<VertexId>, Vec<Transfer>) {
    let state = run_discharging(eg);
    let positive = |v: &VertexId| state.vertex_charge[*v].is_positive();
    let spots = match good_subgraph(eg) {
        Ok(gs) => {
            let two = crate::charge::Charge::int(2);
            let mut s: Vec<VertexId> = gs.ordinary.iter().copied().filter(positive).collect();
            s.extend(gs.extraordinary.iter().copied().filter(|&v| state.vertex_charge[v] >= two));
            s.sort_unstable();
            s
        }
        Err(e) => {
            warn!("good subgraph unavailable ({e}); using every positive vertex");
            eg.graph.vertices().filter(positive).collect()
        }
    };
    (spots, state.ledger)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionReport {
    pub certificate: ExtractionCertificate,
    pub steps: Vec<ReductionStep>,
    /// Reductions that had to be found outside the hot-spot neighbourhoods.
    pub fallback_hits: usize,
}

impl ExtractionReport {
    pub fn collected(&self) -> usize {
        self.certificate.events.iter().filter(|e| matches!(e, Event::Collect { .. })).count()
    }
}

pub fn extract(g: &Graph) -> Result<ExtractionCertificate, ReducerError> {
    extract_with_report(g).map(|r| r.certificate)
}

/// Runs the extraction loop on a planar graph.
pub fn extract_with_report(g: &Graph) -> Result<ExtractionReport, ReducerError> {
    let original_gamma = gamma(g);
    let mut events = Vec::new();
    let mut deletions = Vec::new();
    let mut steps = Vec::new();
    let mut fallback_hits = 0;
    let mut current = g.clone();
    let mut embedding: Option<EmbeddedGraph> = None;
    loop {
        events.extend(collect_in_place(&mut current, COLLECT_DEGREE).into_iter().map(|v| Event::Collect { v }));
        if current.is_empty() {
            break;
        }
        let host = match &embedding {
            Some(eg) => eg,
            None => embedding.insert(EmbeddedGraph::from_graph(g.clone())?),
        };
        for comp in current.connected_components() {
            let (sub, back) = host.restrict(&comp);
            let (spots, ledger) = hotspots(&sub);
            let Some((step, phase)) = find_reduction(&sub.graph, &spots) else {
                return Err(ReducerError::Counterexample(Box::new(CounterexampleFound {
                    graph6: to_graph6(&sub.graph),
                    context: format!("min-degree-5 component of {} vertices has no reduction", sub.graph.vertex_count()),
                    ledger,
                })));
            };
            if phase == SearchPhase::Fallback {
                fallback_hits += 1;
                warn!("reduction found outside the hot-spot neighbourhoods (deleted {})", back[step.deleted]);
            }
            debug!("delete {} collect {} dgamma {}", back[step.deleted], step.collected.len(), step.delta_gamma());
            let deleted = back[step.deleted];
            current.remove_vertex(deleted).expect("live vertex");
            deletions.push(deleted);
            events.push(Event::Delete { v: deleted });
            for &v in &step.collected {
                current.remove_vertex(back[v]).expect("live vertex");
                events.push(Event::Collect { v: back[v] });
            }
            steps.push(ReductionStep { deleted, collected: step.collected.iter().map(|&v| back[v]).collect(), ..step });
        }
        debug_assert!(Rational64::from_integer(deletions.len() as i64) + gamma(&current) <= original_gamma);
    }
    Ok(ExtractionReport { certificate: ExtractionCertificate { gamma: original_gamma, events, deletions }, steps, fallback_hits })
}

/// Bookkeeping of one reduction against the paper's inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionAudit {
    /// Removed vertices of degree 5, 6, 7, 8, 9 and at least 10.
    pub b: [usize; 6],
    /// Edges inside the removed set.
    pub sigma_e: usize,
    pub delta_vertices: usize,
    pub delta_phi: i64,
    pub delta_phi_bound: i64,
    /// Tree components destroyed minus created (`tc` before minus after).
    pub delta_tc: i64,
    pub delta_gamma: Rational64,
    /// Whether the no-new-tree-component rule applied.
    pub tc_rule_applies: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("step does not replay: vertex {vertex} at position {position}")]
    Replay { position: usize, vertex: VertexId },
    #[error("exact potential drop {exact} is below the bound {bound}")]
    BoundViolated { exact: i64, bound: i64 },
    #[error("new tree components appeared (delta tc = {0}) where none may")]
    TreeComponents(i64),
}

fn distances_from(g: &Graph, s: VertexId, limit: usize) -> HashMap<VertexId, usize> {
    let mut dist = HashMap::from([(s, 0)]);
    let mut frontier = vec![s];
    for d in 1..=limit {
        let mut next = Vec::new();
        for u in frontier {
            for &w in g.neighbors(u) {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}

fn bad_cut_vertices(g: &Graph) -> BTreeSet<VertexId> {
    let cuts: Vec<BadCut> = match EmbeddedGraph::from_graph(g.clone()) {
        Ok(eg) => find_bad_cuts_embedded(&eg),
        Err(_) => find_bad_cuts(g),
    };
    cuts.into_iter().flat_map(|c| c.vertices).collect()
}

/// Recomputes the step on `g_before` and checks the inequality
/// `ΔΦ >= 5b5 + 7b6 + 9b7 + 11b8 + 13b9 + 15b10 - 2Σe`. The rule that no
/// tree component appears is enforced when the graph has minimum degree 5
/// and some removed vertex `c`, on no bad cut, has every removed vertex
/// within distance 2 and at most one at distance exactly 2.
pub fn audit_reduction(g_before: &Graph, step: &ReductionStep) -> Result<ReductionAudit, AuditError> {
    let removed: Vec<VertexId> = std::iter::once(step.deleted).chain(step.collected.iter().copied()).collect();
    let mut after = g_before.clone();
    for (position, &v) in removed.iter().enumerate() {
        if !after.contains(v) || (position > 0 && after.degree(v) > COLLECT_DEGREE) {
            return Err(AuditError::Replay { position, vertex: v });
        }
        after.remove_vertex(v).expect("checked live");
    }
    let set: BTreeSet<VertexId> = removed.iter().copied().collect();
    let mut b = [0usize; 6];
    for &v in &removed {
        let d = g_before.degree(v);
        if d >= 5 {
            b[(d - 5).min(5)] += 1;
        }
    }
    let sigma_e = removed.iter().map(|&v| g_before.neighbors(v).iter().filter(|u| set.contains(u)).count()).sum::<usize>() / 2;
    let weights = [5, 7, 9, 11, 13, 15];
    let delta_phi_bound = b.iter().zip(weights).map(|(&n, w)| n as i64 * w).sum::<i64>() - 2 * sigma_e as i64;
    let phi = |h: &Graph| 2 * h.edge_count() as i64 - 5 * h.vertex_count() as i64;
    let delta_phi = phi(g_before) - phi(&after);
    let delta_tc = tree_components(g_before) as i64 - tree_components(&after) as i64;
    let delta_gamma = gamma(g_before) - gamma(&after);
    let audit = ReductionAudit {
        b,
        sigma_e,
        delta_vertices: removed.len(),
        delta_phi,
        delta_phi_bound,
        delta_tc,
        delta_gamma,
        tc_rule_applies: false,
    };
    let all_degrees_counted = removed.iter().all(|&v| g_before.degree(v) >= 5);
    if all_degrees_counted && delta_phi < delta_phi_bound {
        return Err(AuditError::BoundViolated { exact: delta_phi, bound: delta_phi_bound });
    }
    let applies = g_before.min_degree().is_some_and(|d| d >= 5) && {
        let local = |c: VertexId| {
            let dist = distances_from(g_before, c, 2);
            let far = removed.iter().filter(|v| dist.get(v) == Some(&2)).count();
            removed.iter().all(|v| dist.contains_key(v)) && far <= 1
        };
        let centers: Vec<VertexId> = removed.iter().copied().filter(|&c| local(c)).collect();
        !centers.is_empty() && {
            let on_cuts = bad_cut_vertices(g_before);
            centers.iter().any(|c| !on_cuts.contains(c))
        }
    };
    if applies && delta_tc != 0 {
        return Err(AuditError::TreeComponents(delta_tc));
    }
    Ok(ReductionAudit { tc_rule_applies: applies, ..audit })
}

#[cfg(test)]
mod tests;
