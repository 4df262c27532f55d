//! The potentials Φ and Γ that bound the deletion budget.

use num_rational::Rational64;

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaBreakdown {
    pub vertex_count: usize,
    /// Σ (deg(v) − 5).
    pub phi: i64,
    /// Components that are trees (isolated vertices included).
    pub tree_components: usize,
    /// |V|/12 + Φ/36 + tc/18.
    pub gamma: Rational64,
}

/// Number of connected components that are trees.
pub fn tree_components(g: &Graph) -> usize {
    g.connected_components()
        .iter()
        .filter(|comp| {
            let twice_edges: usize = comp.iter().map(|&v| g.degree(v)).sum();
            twice_edges / 2 + 1 == comp.len()
        })
        .count()
}

/// Σ (deg(v) − 5) = 2|E| − 5|V|.
pub fn phi(g: &Graph) -> i64 {
    2 * g.edge_count() as i64 - 5 * g.vertex_count() as i64
}

/// 36·Γ(g) = 3|V| + Φ + 2·tc, which is always an integer.
pub fn gamma36(g: &Graph) -> i64 {
    3 * g.vertex_count() as i64 + phi(g) + 2 * tree_components(g) as i64
}

pub fn gamma_breakdown(g: &Graph) -> GammaBreakdown {
    GammaBreakdown {
        vertex_count: g.vertex_count(),
        phi: phi(g),
        tree_components: tree_components(g),
        gamma: Rational64::new(gamma36(g), 36),
    }
}

pub fn gamma(g: &Graph) -> Rational64 {
    Rational64::new(gamma36(g), 36)
}
