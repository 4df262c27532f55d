//! Exhaustive enumeration of small plane triangulations and connected planar
//! graphs, one representative per isomorphism class.
//!
//! Triangulations are reached by breadth-first search over edge flips from
//! the bipyramid (the flip graph is connected), deduplicated by a canonical
//! code of the rotation system. Connected planar graphs are reached by
//! deleting non-bridge edges from triangulations, deduplicated by a
//! canonical adjacency code.

use std::collections::{HashSet, VecDeque};

use crate::embed::{EmbeddedGraph, RotationSystem};
use crate::graph::{Graph, VertexId};

type Rot = Vec<Vec<u8>>;

fn position(r: &[u8], x: u8) -> usize {
    r.iter().position(|&y| y == x).expect("not a neighbour")
}

/// Canonical code of a plane triangulation given by its rotation lists,
/// invariant under relabelling and reflection.
pub fn triangulation_code(rot: &[Vec<u8>]) -> Vec<u8> {
    let key = |u: usize, v: u8| (rot[u].len(), rot[v as usize].len());
    let best = (0..rot.len()).flat_map(|u| rot[u].iter().map(move |&v| key(u, v))).max().unwrap();
    let mut code: Option<Vec<u8>> = None;
    let mut number = vec![0u8; rot.len()];
    let mut refer = vec![0u8; rot.len()];
    let mut buf = Vec::with_capacity(rot.len() * 7);
    for u in 0..rot.len() {
        for &v in &rot[u] {
            if key(u, v) != best {
                continue;
            }
            for mirror in [false, true] {
                buf.clear();
                number.iter_mut().for_each(|x| *x = 0);
                number[u] = 1;
                refer[u] = v;
                let mut order = vec![u as u8];
                let mut head = 0;
                while head < order.len() {
                    let x = order[head] as usize;
                    head += 1;
                    let r = &rot[x];
                    let start = position(r, refer[x]);
                    for k in 0..r.len() {
                        let idx = if mirror { (start + r.len() - k) % r.len() } else { (start + k) % r.len() };
                        let y = r[idx] as usize;
                        if number[y] == 0 {
                            order.push(y as u8);
                            number[y] = order.len() as u8;
                            refer[y] = x as u8;
                        }
                        buf.push(number[y]);
                    }
                    buf.push(0);
                }
                if code.as_ref().is_none_or(|c| buf < *c) {
                    code = Some(buf.clone());
                }
            }
        }
    }
    code.expect("nonempty triangulation")
}

fn bipyramid(n: usize) -> Rot {
    if n == 4 {
        return vec![vec![1, 3, 2], vec![0, 2, 3], vec![1, 0, 3], vec![2, 0, 1]];
    }
    // Apexes 0 and 1 over the cycle 2..n.
    let m = n - 2;
    let ring = |i: usize| (2 + i % m) as u8;
    let mut rot = vec![(0..m).map(ring).collect::<Vec<u8>>(), (0..m).rev().map(ring).collect()];
    for i in 0..m {
        rot.push(vec![0, ring(i + m - 1), 1, ring(i + 1)]);
    }
    rot
}

fn flipped(rot: &Rot, u: u8, v: u8) -> Option<Rot> {
    let (ui, vi) = (u as usize, v as usize);
    if rot[ui].len() <= 3 || rot[vi].len() <= 3 {
        return None;
    }
    let succ = |a: usize, b: u8| rot[a][(position(&rot[a], b) + 1) % rot[a].len()];
    let x = succ(vi, u);
    let y = succ(ui, v);
    if x == y || rot[x as usize].contains(&y) {
        return None;
    }
    let mut r = rot.clone();
    r[ui].retain(|&w| w != v);
    r[vi].retain(|&w| w != u);
    let i = position(&r[x as usize], v);
    r[x as usize].insert(i + 1, y);
    let i = position(&r[y as usize], u);
    r[y as usize].insert(i + 1, x);
    Some(r)
}

fn to_embedded(rot: &Rot) -> EmbeddedGraph {
    let n = rot.len();
    let mut g = Graph::new(n);
    for (u, r) in rot.iter().enumerate() {
        for &v in r {
            if u < v as usize {
                g.add_edge(u, v as usize).unwrap();
            }
        }
    }
    let lists = rot.iter().map(|r| r.iter().map(|&x| x as VertexId).collect()).collect();
    EmbeddedGraph::new(g, RotationSystem::from_lists(lists)).expect("flips keep the embedding plane")
}

/// All plane triangulations on `n` vertices (`4 <= n <= 64`), one per
/// isomorphism class.
pub fn triangulations(n: usize) -> Vec<EmbeddedGraph> {
    assert!((4..=64).contains(&n), "triangulation enumeration supports 4 <= n <= 64");
    let start = bipyramid(n);
    let mut seen: HashSet<Vec<u8>> = HashSet::from([triangulation_code(&start)]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(rot) = queue.pop_front() {
        for u in 0..rot.len() as u8 {
            for &v in &rot[u as usize] {
                if u < v {
                    if let Some(next) = flipped(&rot, u, v) {
                        if seen.insert(triangulation_code(&next)) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        out.push(to_embedded(&rot));
    }
    out
}

/// Canonical code of a small graph (at most 16 vertices, ids `0..n`):
/// the lexicographically largest upper-triangle adjacency bit string over
/// labellings compatible with equitable refinement. Twins (vertices with
/// equal open or closed neighbourhoods) are interchangeable, so only one per
/// twin class is individualized.
pub fn graph_code(g: &Graph) -> (u8, u128) {
    let n = g.id_bound();
    assert!(n <= 16 && g.vertex_count() == n, "graph_code needs a compact graph on at most 16 vertices");
    let adj: Vec<u16> = (0..n).map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w)).collect();
    let mut twin_rep: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            let open = adj[u] == adj[v];
            let closed = adj[u] | 1 << u == adj[v] | 1 << v;
            if open || closed {
                twin_rep[v] = twin_rep[u];
                break;
            }
        }
    }
    let mut best = None;
    let cells = refine(&adj, vec![(0..n).collect()]);
    search(&adj, &twin_rep, cells, &mut best);
    (n as u8, best.unwrap_or(0))
}

fn refine(adj: &[u16], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let mask: u16 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell.iter().map(|&v| ((adj[v] & mask).count_ones(), v)).collect();
                keyed.sort_unstable();
                let mut group = vec![keyed[0].1];
                for w in keyed.windows(2) {
                    if w[1].0 != w[0].0 {
                        next.push(std::mem::take(&mut group));
                        changed = true;
                    }
                    group.push(w[1].1);
                }
                next.push(group);
            }
            cells = next;
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

fn search(adj: &[u16], twin_rep: &[usize], cells: Vec<Vec<usize>>, best: &mut Option<u128>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let mut label = vec![0usize; adj.len()];
        for (i, c) in cells.iter().enumerate() {
            label[c[0]] = i;
        }
        let n = adj.len();
        let mut inv = vec![0usize; n];
        for v in 0..n {
            inv[label[v]] = v;
        }
        let mut code = 0u128;
        for j in 1..n {
            for i in 0..j {
                code = code << 1 | u128::from(adj[inv[i]] >> inv[j] & 1);
            }
        }
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cells[target] {
        if tried.contains(&twin_rep[v]) {
            continue;
        }
        tried.push(twin_rep[v]);
        let mut next = cells.clone();
        let rest: Vec<usize> = next[target].iter().copied().filter(|&x| x != v).collect();
        next[target] = vec![v];
        next.insert(target + 1, rest);
        search(adj, twin_rep, refine(adj, next), best);
    }
}

/// All connected planar graphs on `n` vertices (`1 <= n <= 16`), one per
/// isomorphism class.
pub fn connected_planar_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=16).contains(&n), "planar graph enumeration supports 1 <= n <= 16");
    if n <= 3 {
        let mut out = vec![];
        let mut path = Graph::new(n);
        for i in 1..n {
            path.add_edge(i - 1, i).unwrap();
        }
        out.push(path);
        if n == 3 {
            out.push(Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap());
        }
        return out;
    }
    let mut seen: HashSet<(u8, u128)> = HashSet::new();
    let mut queue: VecDeque<Graph> = VecDeque::new();
    for t in triangulations(n) {
        if seen.insert(graph_code(&t.graph)) {
            queue.push_back(t.graph);
        }
    }
    let mut out = Vec::new();
    while let Some(g) = queue.pop_front() {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        for (u, v) in edges {
            let mut h = g.clone();
            h.remove_edge(u, v).unwrap();
            if h.is_connected() && seen.insert(graph_code(&h)) {
                queue.push_back(h);
            }
        }
        out.push(g);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named_graph;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        let edges: Vec<_> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(g.id_bound(), &edges).unwrap()
    }

    #[test]
    fn triangulation_counts() {
        let counts: Vec<usize> = (4..=10).map(|n| triangulations(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 50, 233]);
    }

    #[test]
    fn enumerated_triangulations_are_valid() {
        for t in triangulations(9) {
            assert_eq!(t.graph.edge_count(), 21);
            assert!(t.faces.iter().all(|f| f.length == 3));
        }
    }

    #[test]
    fn connected_planar_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| connected_planar_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 20, 99, 646]);
    }

    #[test]
    fn graph_code_is_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for name in ["icosahedron", "cube", "octahedron", "glued_octahedra"] {
            let g = named_graph(name).unwrap();
            let code = graph_code(&g);
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..g.id_bound()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(graph_code(&relabel(&g, &perm)), code);
            }
        }
        assert_ne!(graph_code(&named_graph("cube").unwrap()), graph_code(&named_graph("glued_octahedra").unwrap()));
    }

    #[test]
    fn triangulation_code_is_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for t in triangulations(9) {
            let rot: Rot = t.rotation.lists().iter().map(|r| r.iter().map(|&x| x as u8).collect()).collect();
            let code = triangulation_code(&rot);
            let mut perm: Vec<usize> = (0..rot.len()).collect();
            perm.shuffle(&mut rng);
            let mut moved = vec![Vec::new(); rot.len()];
            for (v, r) in rot.iter().enumerate() {
                moved[perm[v]] = r.iter().map(|&x| perm[x as usize] as u8).collect();
            }
            assert_eq!(triangulation_code(&moved), code);
            let mirrored: Rot = rot.iter().map(|r| r.iter().rev().copied().collect()).collect();
            assert_eq!(triangulation_code(&mirrored), code);
        }
    }
}
