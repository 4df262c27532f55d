//! Brute-force ground truth for small graphs.
//!
//! [`min_deletion_exact`] finds a smallest vertex set whose removal leaves a
//! `k`-degenerate graph. It works on 64-bit vertex masks with its own
//! peeling routine, so it shares nothing with the collect closure it checks.
//!
//! The search enumerates deletion sets in increasing id order and only adds
//! vertices of the current `(k+1)`-core: a vertex outside the core of
//! `G - S` stays outside it for every superset of `S`, so a minimal solution
//! never needs it.

use std::time::{Duration, Instant};

use log::warn;
use num_rational::Rational64;
use thiserror::Error;

use crate::embed::embed;
use crate::graph::{Graph, VertexId};
use crate::graph6::to_graph6;
use crate::potential::gamma;
use crate::reducer::{extract, theorem2_witness, ReducerError, Theorem2Outcome};

/// Largest order the mask representation supports.
pub const MAX_ORACLE_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum_deletions: usize,
    /// A deletion set of that size, in ids of the input graph.
    pub witness_set: Vec<VertexId>,
    /// Search nodes visited.
    pub explored: u64,
    pub time: Duration,
    /// False when the node budget ran out; the result is then an upper bound.
    pub optimal: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {0} vertices; the oracle handles at most 64")]
    TooLarge(usize),
    #[error("sandwich violated on {graph6}: {detail}")]
    Sandwich { graph6: String, detail: String },
    #[error(transparent)]
    Reducer(#[from] ReducerError),
}

struct Masks {
    adj: Vec<u64>,
    all: u64,
}

impl Masks {
    /// The `(k+1)`-core of the subgraph induced by `alive`.
    fn core(&self, alive: u64, k: u32) -> u64 {
        let mut alive = alive;
        loop {
            let mut peel = 0u64;
            let mut rest = alive;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (self.adj[v] & alive).count_ones() <= k {
                    peel |= 1 << v;
                }
            }
            if peel == 0 {
                return alive;
            }
            alive &= !peel;
        }
    }

    fn edges(&self, alive: u64) -> u64 {
        let mut total = 0u64;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += u64::from((self.adj[v] & alive).count_ones());
        }
        total / 2
    }

    /// Deletions needed at least: a `k`-degenerate graph on `N >= k` vertices
    /// has at most `kN - k(k+1)/2` edges, and deleting a vertex removes at
    /// most its degree.
    fn lower_bound(&self, core: u64, k: u32) -> usize {
        if core == 0 {
            return 0;
        }
        let n = core.count_ones() as u64;
        let k = u64::from(k);
        let mut m = self.edges(core);
        let mut degrees: Vec<u64> = Vec::with_capacity(n as usize);
        let mut rest = core;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            degrees.push(u64::from((self.adj[v] & core).count_ones()));
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let cap = |left: u64| if left >= k { k * left - k * (k + 1) / 2 } else { left * left.saturating_sub(1) / 2 };
        for (t, d) in std::iter::once(0).chain(degrees.iter().copied()).enumerate() {
            m = m.saturating_sub(d);
            if m <= cap(n - t as u64) {
                return t.max(1);
            }
        }
        n as usize
    }
}

struct Search<'a> {
    masks: &'a Masks,
    k: u32,
    explored: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl Search<'_> {
    /// Is there a deletion set of at most `left` more vertices, all with ids
    /// above `floor`, starting from `alive`? Returns it.
    fn find(&mut self, alive: u64, floor: Option<usize>, left: usize) -> Option<u64> {
        self.explored += 1;
        if self.budget.is_some_and(|b| self.explored > b) {
            self.exhausted = true;
            return None;
        }
        let core = self.masks.core(alive, self.k);
        if core == 0 {
            return Some(0);
        }
        if left == 0 || self.masks.lower_bound(core, self.k) > left {
            return None;
        }
        let above = match floor {
            Some(f) if f >= 63 => 0,
            Some(f) => !((1u64 << (f + 1)) - 1),
            None => u64::MAX,
        };
        let mut candidates = core & above;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if let Some(rest) = self.find(alive & !(1 << v), Some(v), left - 1) {
                return Some(rest | 1 << v);
            }
            if self.exhausted {
                return None;
            }
        }
        None
    }
}

fn greedy(masks: &Masks, k: u32) -> u64 {
    let mut alive = masks.all;
    let mut deleted = 0u64;
    loop {
        let core = masks.core(alive, k);
        if core == 0 {
            return deleted;
        }
        let mut best = (0, 0usize);
        let mut rest = core;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (masks.adj[v] & core).count_ones();
            if d > best.0 {
                best = (d, v);
            }
        }
        deleted |= 1 << best.1;
        alive &= !(1 << best.1);
    }
}

/// Smallest number of deletions after which repeatedly removing vertices
/// of degree at most `k` empties `g`. With a node `budget`, an exhausted
/// search returns the best known upper bound with `optimal = false`.
pub fn min_deletion_exact(g: &Graph, k: usize, budget: Option<u64>) -> Result<OracleResult, OracleError> {
    let start = Instant::now();
    let (h, back) = g.compact();
    let n = h.vertex_count();
    if n > MAX_ORACLE_ORDER {
        return Err(OracleError::TooLarge(n));
    }
    let adj = (0..n).map(|v| h.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let masks = Masks { adj, all };
    let k = k.min(64) as u32;
    let upper = greedy(&masks, k);
    let lower = masks.lower_bound(masks.core(all, k), k);
    let mut search = Search { masks: &masks, k, explored: 0, budget, exhausted: false };
    let mut found = upper;
    let mut optimal = true;
    for target in lower..upper.count_ones() as usize {
        if let Some(set) = search.find(all, None, target) {
            found = set;
            break;
        }
        if search.exhausted {
            warn!("oracle budget exhausted at target {target}; reporting an upper bound");
            optimal = false;
            break;
        }
    }
    let mut witness_set = Vec::new();
    let mut rest = found;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        witness_set.push(back[v]);
    }
    Ok(OracleResult { optimum_deletions: witness_set.len(), witness_set, explored: search.explored, time: start.elapsed(), optimal })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theorem2Summary {
    pub collect_all: usize,
    pub witness: usize,
    pub skipped_nonplanar: usize,
    pub skipped_small: usize,
}

/// Runs the Theorem 2 search on every graph of `stream`. Non-planar and
/// too-small graphs are skipped and counted; the first failure is returned
/// as an error carrying the graph.
pub fn verify_theorem2_exhaustive(stream: impl IntoIterator<Item = Graph>) -> Result<Theorem2Summary, ReducerError> {
    let mut summary = Theorem2Summary::default();
    for g in stream {
        if embed(&g).is_err() {
            warn!("skipping non-planar graph {}", to_graph6(&g));
            summary.skipped_nonplanar += 1;
            continue;
        }
        if g.vertex_count() < 7 {
            summary.skipped_small += 1;
            continue;
        }
        match theorem2_witness(&g)? {
            Some(Theorem2Outcome::CollectAll(_)) => summary.collect_all += 1,
            Some(Theorem2Outcome::Witness { .. }) => summary.witness += 1,
            None => unreachable!("graphs of order at least 7 either succeed or error"),
        }
    }
    Ok(summary)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    pub optimum: usize,
    pub optimal: bool,
    pub extract_deletions: usize,
    pub gamma: Rational64,
}

/// Checks `optimum <= |S| <= floor(Γ)` and `optimum <= Γ` for the deletion
/// set `S` produced by extraction.
pub fn compare_extract_to_oracle(g: &Graph) -> Result<OracleComparison, OracleError> {
    let oracle = min_deletion_exact(g, 4, None)?;
    let cert = extract(g)?;
    let gamma = gamma(g);
    let s = cert.deletions.len();
    let cmp = OracleComparison { optimum: oracle.optimum_deletions, optimal: oracle.optimal, extract_deletions: s, gamma };
    let optimum = Rational64::from_integer(cmp.optimum as i64);
    let detail = if cmp.optimum > s {
        Some(format!("oracle optimum {} exceeds extraction's {s}", cmp.optimum))
    } else if (s as i64) > gamma.floor().to_integer() {
        Some(format!("extraction deleted {s} > floor(gamma) = {}", gamma.floor()))
    } else if optimum > gamma {
        Some(format!("oracle optimum {} exceeds gamma {gamma}", cmp.optimum))
    } else {
        None
    };
    match detail {
        Some(detail) => Err(OracleError::Sandwich { graph6: to_graph6(g), detail }),
        None => Ok(cmp),
    }
}
