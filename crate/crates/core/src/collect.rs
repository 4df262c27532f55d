//! Collect closure: greedily removing vertices of degree at most `k`.
//!
//! The set collected by any maximal greedy sequence is the same (the remainder
//! is always the `(k+1)`-core), so only the order depends on tie-breaking.
//! Among the vertices currently collectable, the smallest id goes first.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{Graph, VertexId};

/// Degree threshold of the collect operation used throughout.
pub const COLLECT_DEGREE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectResult {
    /// Collected vertices in collection order.
    pub order: Vec<VertexId>,
    /// What is left: the `(k+1)`-core of the input.
    pub remainder: Graph,
}

/// Collects every vertex that can eventually reach degree `<= k`.
pub fn collect_closure(g: &Graph, k: usize) -> CollectResult {
    let mut remainder = g.clone();
    let order = collect_in_place(&mut remainder, k);
    CollectResult { order, remainder }
}

/// In-place variant of [`collect_closure`]: removes the collected vertices
/// from `g` and returns them in collection order.
pub fn collect_in_place(g: &mut Graph, k: usize) -> Vec<VertexId> {
    let bound = g.id_bound();
    let mut deg = vec![0usize; bound];
    let mut queued = vec![false; bound];
    let mut heap = BinaryHeap::new();
    for v in g.vertices() {
        deg[v] = g.degree(v);
        if deg[v] <= k {
            queued[v] = true;
            heap.push(Reverse(v));
        }
    }
    let mut order = Vec::new();
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in g.neighbors(v) {
            deg[w] -= 1;
            if deg[w] <= k && !queued[w] {
                queued[w] = true;
                heap.push(Reverse(w));
            }
        }
        g.remove_vertex(v).expect("queued vertices are live");
    }
    order
}

/// True iff repeatedly removing vertices of degree `<= k` empties `g`.
pub fn is_k_degenerate(g: &Graph, k: usize) -> bool {
    collect_closure(g, k).remainder.is_empty()
}

/// Vertices of the `(k+1)`-core of `g` (what a closure cannot collect),
/// ascending.
pub fn core_vertices(g: &Graph, k: usize) -> Vec<VertexId> {
    let mut deg: Vec<usize> = (0..g.id_bound()).map(|v| if g.contains(v) { g.degree(v) } else { 0 }).collect();
    let mut removed: Vec<bool> = (0..g.id_bound()).map(|v| !g.contains(v)).collect();
    let mut stack: Vec<VertexId> = g.vertices().filter(|&v| deg[v] <= k).collect();
    for &v in &stack {
        removed[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] <= k {
                    removed[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    g.vertices().filter(|&v| !removed[v]).collect()
}
