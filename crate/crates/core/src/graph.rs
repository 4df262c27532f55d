//! Simple undirected graphs with stable vertex identifiers.

use std::collections::VecDeque;

use num_rational::Rational64;
use thiserror::Error;

/// Dense vertex identifier. Identifiers survive deletions: a deleted vertex
/// leaves a tombstone and its id is never reused.
pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("operation needs a nonempty graph")]
    Empty,
}

/// A simple undirected graph. Neighbour lists are kept sorted so adjacency
/// tests are a binary search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    alive: Vec<bool>,
    vertex_count: usize,
    edge_count: usize,
}

impl Graph {
    /// Graph on vertices `0..n` with no edges.
    pub fn new(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], alive: vec![true; n], vertex_count: n, edge_count: 0 }
    }

    /// Builds a graph on `0..n`; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Vec::new());
        self.alive.push(true);
        self.vertex_count += 1;
        self.adj.len() - 1
    }

    /// Adds `uv`; returns `false` when the edge was already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edge_count += 1;
                Ok(true)
            }
        }
    }

    /// Removes `uv`; returns `false` when the edge was absent.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("asymmetric adjacency");
                self.adj[v].remove(pos);
                self.edge_count -= 1;
                Ok(true)
            }
            Err(_) => Ok(false),
        }
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    /// One past the largest id ever allocated, tombstones included.
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0
    }

    /// Live vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adj.len()).filter(move |&v| self.alive[v])
    }

    /// Sorted neighbours of `v`. Panics on an unknown vertex.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        assert!(self.contains(v), "vertex {v} is not in the graph");
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.contains(u) && self.contains(v) && self.adj[u].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| self.adj[u].iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.adj[v].len()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.adj[v].len()).max()
    }

    /// Removes `v` and its incident edges in place, leaving a tombstone.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        self.check(v)?;
        let nbrs = std::mem::take(&mut self.adj[v]);
        for &u in &nbrs {
            let pos = self.adj[u].binary_search(&v).expect("asymmetric adjacency");
            self.adj[u].remove(pos);
        }
        self.edge_count -= nbrs.len();
        self.alive[v] = false;
        self.vertex_count -= 1;
        Ok(())
    }

    /// The graph without `v` and its incident edges. Other ids are unchanged.
    pub fn delete_vertex(&self, v: VertexId) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.remove_vertex(v)?;
        Ok(g)
    }

    /// `2|E| / |V|` exactly.
    pub fn average_degree(&self) -> Result<Rational64, GraphError> {
        if self.vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Rational64::new(2 * self.edge_count as i64, self.vertex_count as i64))
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.adj.len()];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Induced subgraph on `keep`, relabelled densely in the order given.
    /// Returns the subgraph and the map from new ids back to ids of `self`.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut local = vec![usize::MAX; self.adj.len()];
        for (i, &v) in keep.iter().enumerate() {
            assert!(self.contains(v), "vertex {v} is not in the graph");
            local[v] = i;
        }
        let mut sub = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            let mut row: Vec<VertexId> = self.adj[v].iter().filter_map(|&w| (local[w] != usize::MAX).then_some(local[w])).collect();
            row.sort_unstable();
            sub.edge_count += row.len();
            sub.adj[i] = row;
        }
        sub.edge_count /= 2;
        (sub, keep.to_vec())
    }

    /// Relabels live vertices densely in ascending id order, dropping
    /// tombstones. Returns the compacted graph and the back map.
    pub fn compact(&self) -> (Graph, Vec<VertexId>) {
        let keep: Vec<VertexId> = self.vertices().collect();
        self.induced_subgraph(&keep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named_graph;

    #[test]
    fn adjacency_stays_symmetric() {
        let mut g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(1, 0) && g.has_edge(0, 1));
        assert_eq!(g.add_edge(2, 2), Err(GraphError::SelfLoop(2)));
        g.remove_vertex(2).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(3), &[] as &[usize]);
        assert!(!g.contains(2));
        assert_eq!(g.id_bound(), 4);
        for u in g.vertices() {
            assert_eq!(g.degree(u), g.neighbors(u).len());
            for &v in g.neighbors(u) {
                assert!(g.neighbors(v).contains(&u));
            }
        }
    }

    #[test]
    fn delete_vertex_examples() {
        let ico = named_graph("icosahedron").unwrap();
        let g = ico.delete_vertex(0).unwrap();
        let mut degs: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5]);

        let single = Graph::new(1);
        assert!(single.delete_vertex(0).unwrap().is_empty());

        let k4 = named_graph("K4").unwrap();
        let tri = k4.delete_vertex(3).unwrap();
        assert_eq!((tri.vertex_count(), tri.edge_count()), (3, 3));

        assert_eq!(k4.delete_vertex(9), Err(GraphError::UnknownVertex(9)));
        assert_eq!(tri.delete_vertex(3), Err(GraphError::UnknownVertex(3)));
    }

    #[test]
    fn average_degree_examples() {
        assert_eq!(named_graph("icosahedron").unwrap().average_degree().unwrap(), Rational64::from_integer(5));
        assert_eq!(named_graph("K4").unwrap().average_degree().unwrap(), Rational64::from_integer(3));
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.average_degree().unwrap(), Rational64::new(4, 3));
        assert_eq!(Graph::new(0).average_degree(), Err(GraphError::Empty));
    }

    #[test]
    fn component_examples() {
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(two.connected_components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(named_graph("icosahedron").unwrap().connected_components().len(), 1);
        assert!(Graph::new(0).connected_components().is_empty());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let k4 = named_graph("K4").unwrap();
        let (sub, back) = k4.induced_subgraph(&[3, 1, 2]);
        assert_eq!(sub.edge_count(), 3);
        assert_eq!(back, vec![3, 1, 2]);
        let mut g = k4.clone();
        g.remove_vertex(0).unwrap();
        let (c, back) = g.compact();
        assert_eq!(back, vec![1, 2, 3]);
        assert_eq!(c.vertex_count(), 3);
    }
}
