//! Test corpus production: named solids and fixtures, random triangulations,
//! exhaustive enumeration and stream ingestion.

pub mod enumerate;
pub mod fixtures;
pub mod random;
pub mod stream;

use thiserror::Error;

use crate::embed::{EmbedError, EmbeddedGraph};
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no triangulation with minimum degree {target} found for n = {n} within {attempts} flip attempts")]
    BudgetExhausted { n: usize, target: usize, attempts: usize },
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Names accepted by [`named`] and [`named_graph`].
pub const NAMES: &[&str] = &["K4", "octahedron", "icosahedron", "cube", "dodecahedron", "glued_octahedra", "lemma10_fixture"];

fn cycle_edges(ids: &[usize]) -> Vec<(usize, usize)> {
    (0..ids.len()).map(|i| (ids[i], ids[(i + 1) % ids.len()])).collect()
}

/// Generalized Petersen graph GP(n, k).
fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut g = Graph::new(2 * n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).unwrap();
        g.add_edge(i, n + i).unwrap();
        g.add_edge(n + i, n + (i + k) % n).unwrap();
    }
    g
}

fn octahedron() -> Graph {
    // Antipodal pairs are (0,1), (2,3), (4,5).
    let mut g = Graph::new(6);
    for u in 0..6 {
        for v in u + 1..6 {
            if u / 2 != v / 2 {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn icosahedron() -> Graph {
    // 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom.
    let mut edges = Vec::new();
    let upper: Vec<usize> = (1..=5).collect();
    let lower: Vec<usize> = (6..=10).collect();
    edges.extend(cycle_edges(&upper));
    edges.extend(cycle_edges(&lower));
    for i in 1..=5 {
        edges.push((0, i));
        edges.push((11, 5 + i));
        edges.push((i, 5 + i));
        edges.push((i, 5 + i % 5 + 1));
    }
    Graph::from_edges(12, &edges).unwrap()
}

fn glued_octahedra() -> Graph {
    // A second octahedron on 0, 2, 4, 6, 7, 8 shares the triangle 024; 6, 7
    // and 8 are the antipodes of 0, 2 and 4.
    let mut g = octahedron();
    for _ in 0..3 {
        g.add_vertex();
    }
    for (u, v) in [(6, 2), (6, 4), (7, 0), (7, 4), (8, 0), (8, 2), (6, 7), (7, 8), (8, 6)] {
        g.add_edge(u, v).unwrap();
    }
    g
}

/// The abstract graph behind a named solid or fixture.
pub fn named_graph(name: &str) -> Result<Graph, GeneratorError> {
    Ok(match name {
        "K4" => Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        "octahedron" => octahedron(),
        "icosahedron" => icosahedron(),
        "cube" => generalized_petersen(4, 1),
        "dodecahedron" => generalized_petersen(10, 2),
        "glued_octahedra" => glued_octahedra(),
        "lemma10_fixture" => return Ok(fixtures::lemma10().eg.graph),
        other => return Err(GeneratorError::UnknownName(other.to_string())),
    })
}

/// A named solid or fixture with its plane embedding. All of them are
/// 3-connected, so the embedding is unique up to reflection.
pub fn named(name: &str) -> Result<EmbeddedGraph, GeneratorError> {
    if name == "lemma10_fixture" {
        return Ok(fixtures::lemma10().eg);
    }
    Ok(EmbeddedGraph::from_graph(named_graph(name)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let expect = [
            ("K4", 4, 6, 4),
            ("octahedron", 6, 12, 8),
            ("icosahedron", 12, 30, 20),
            ("cube", 8, 12, 6),
            ("dodecahedron", 20, 30, 12),
            ("glued_octahedra", 9, 21, 14),
            ("lemma10_fixture", 26, 72, 48),
        ];
        for (name, v, e, f) in expect {
            let eg = named(name).unwrap();
            assert_eq!((eg.graph.vertex_count(), eg.graph.edge_count(), eg.faces.len()), (v, e, f), "{name}");
        }
        assert_eq!(NAMES.len(), expect.len());
    }

    #[test]
    fn regular_solids() {
        for (name, d) in [("octahedron", 4), ("icosahedron", 5), ("cube", 3), ("dodecahedron", 3)] {
            let g = named_graph(name).unwrap();
            assert!(g.vertices().all(|v| g.degree(v) == d), "{name}");
        }
    }

    #[test]
    fn icosahedron_minus_vertex_degrees() {
        let g = named_graph("icosahedron").unwrap();
        for v in 0..12 {
            let h = g.delete_vertex(v).unwrap();
            let mut degs: Vec<usize> = h.vertices().map(|u| h.degree(u)).collect();
            degs.sort_unstable();
            assert_eq!(degs, vec![4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5]);
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(named("K5"), Err(GeneratorError::UnknownName("K5".into())));
    }
}
