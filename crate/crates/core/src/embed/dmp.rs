//! Planarity testing and embedding by path addition (Demoucron, Malgrange
//! and Pertuiset), run on each biconnected block. Block rotations are
//! concatenated at cut vertices, which always yields a plane embedding.
//!
//! Quadratic, so the left-right algorithm is the default; this one stays as
//! an independent reference.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{EmbedError, RotationSystem};
use crate::graph::{Graph, VertexId};

/// Path-addition counterpart of [`super::embed`].
pub fn embed_path_addition(g: &Graph) -> Result<RotationSystem, EmbedError> {
    let n = g.vertex_count();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return Err(EmbedError::NotPlanar);
    }
    let mut rot = vec![Vec::new(); g.id_bound()];
    for block in biconnected_blocks(g) {
        if let [(u, v)] = block[..] {
            rot[u].push(v);
            rot[v].push(u);
            continue;
        }
        let mut verts: Vec<VertexId> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let local = |x: VertexId| verts.binary_search(&x).unwrap();
        let mut adj = vec![Vec::new(); verts.len()];
        for &(u, v) in &block {
            adj[local(u)].push(local(v));
            adj[local(v)].push(local(u));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        let lrot = embed_biconnected(&adj)?;
        for (i, r) in lrot.into_iter().enumerate() {
            rot[verts[i]].extend(r.into_iter().map(|x| verts[x]));
        }
    }
    Ok(RotationSystem::from_lists(rot))
}

/// Edge sets of the biconnected blocks (iterative Tarjan).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<(VertexId, VertexId)>> {
    const NONE: usize = usize::MAX;
    let bound = g.id_bound();
    let mut disc = vec![NONE; bound];
    let mut low = vec![0; bound];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for root in g.vertices() {
        if disc[root] != NONE {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut stack = vec![(root, NONE, 0usize)];
        while let Some(&(v, parent, idx)) = stack.last() {
            let nb = g.neighbors(v);
            if idx < nb.len() {
                stack.last_mut().unwrap().2 += 1;
                let w = nb[idx];
                if disc[w] == NONE {
                    edges.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edges.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    let mut block = Vec::new();
                    loop {
                        let e = edges.pop().expect("tree edge on stack");
                        block.push(e);
                        if e == (p, v) {
                            break;
                        }
                    }
                    blocks.push(block);
                }
            }
        }
    }
    blocks
}

/// A part of the graph not yet embedded: a single edge between embedded
/// vertices, or a component of unembedded vertices with its attachments.
enum Fragment {
    Chord(usize, usize),
    Component { label: usize, attachments: Vec<usize> },
}

impl Fragment {
    fn attachments(&self) -> Vec<usize> {
        match self {
            Fragment::Chord(a, b) => vec![*a, *b],
            Fragment::Component { attachments, .. } => attachments.clone(),
        }
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Embeds a biconnected simple graph with at least three vertices.
fn embed_biconnected(adj: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, EmbedError> {
    let n = adj.len();
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if m > 3 * n - 6 {
        return Err(EmbedError::NotPlanar);
    }
    let cycle = find_cycle(adj);
    let mut embedded = vec![false; n];
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        embedded[cycle[i]] = true;
        done.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while done.len() < m {
        let (fragments, label) = fragments(adj, &embedded, &done);
        let mut vertex_faces: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                vertex_faces[v].push(fi);
            }
        }
        let mut choice: Option<(usize, usize, usize)> = None;
        for (k, frag) in fragments.iter().enumerate() {
            let att = frag.attachments();
            let admissible: Vec<usize> =
                vertex_faces[att[0]].iter().copied().filter(|f| att[1..].iter().all(|&a| vertex_faces[a].contains(f))).collect();
            if admissible.is_empty() {
                return Err(EmbedError::NotPlanar);
            }
            if choice.is_none_or(|(_, _, count)| admissible.len() < count) {
                choice = Some((k, admissible[0], admissible.len()));
                if admissible.len() == 1 {
                    break;
                }
            }
        }
        let (k, fi, _) = choice.expect("an unembedded edge implies a fragment");
        let path = match &fragments[k] {
            Fragment::Chord(a, b) => vec![*a, *b],
            Fragment::Component { label: c, attachments } => component_path(adj, &embedded, &label, *c, attachments[0]),
        };
        let face = std::mem::take(&mut faces[fi]);
        let (a, b) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let arc = |from: usize, to: usize| {
            let mut out = Vec::new();
            let mut t = (from + 1) % len;
            while t != to {
                out.push(face[t]);
                t = (t + 1) % len;
            }
            out
        };
        let mut first = path.clone();
        first.extend(arc(j, i));
        let mut second: Vec<usize> = path.iter().rev().copied().collect();
        second.extend(arc(i, j));
        faces[fi] = first;
        faces.push(second);
        for w in path.windows(2) {
            done.insert(key(w[0], w[1]));
        }
        for &v in &path {
            embedded[v] = true;
        }
    }

    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for f in &faces {
        let l = f.len();
        for i in 0..l {
            succ[f[i]].insert(f[(i + l - 1) % l], f[(i + 1) % l]);
        }
    }
    Ok((0..n)
        .map(|v| {
            let mut r = Vec::with_capacity(adj[v].len());
            let mut u = adj[v][0];
            for _ in 0..adj[v].len() {
                r.push(u);
                u = succ[v][&u];
            }
            r
        })
        .collect())
}

/// A simple cycle: the tree path closed by the first non-tree edge of a BFS.
fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            } else if parent[u] != w {
                let (mut x, mut y) = (u, w);
                let mut left = vec![x];
                let mut right = vec![y];
                while x != y {
                    if depth[x] >= depth[y] {
                        x = parent[x];
                        left.push(x);
                    } else {
                        y = parent[y];
                        right.push(y);
                    }
                }
                right.pop();
                left.extend(right.into_iter().rev());
                return left;
            }
        }
    }
    unreachable!("biconnected blocks with three or more vertices contain a cycle")
}

/// Fragments relative to the embedded subgraph, plus a component label per
/// unembedded vertex.
fn fragments(adj: &[Vec<usize>], embedded: &[bool], done: &HashSet<(usize, usize)>) -> (Vec<Fragment>, Vec<usize>) {
    let n = adj.len();
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    let mut next = 0;
    for s in 0..n {
        if embedded[s] || label[s] != usize::MAX {
            continue;
        }
        let mut attachments = Vec::new();
        let mut queue = VecDeque::from([s]);
        label[s] = next;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if embedded[w] {
                    attachments.push(w);
                } else if label[w] == usize::MAX {
                    label[w] = next;
                    queue.push_back(w);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        out.push(Fragment::Component { label: next, attachments });
        next += 1;
    }
    for u in 0..n {
        if embedded[u] {
            for &w in &adj[u] {
                if u < w && embedded[w] && !done.contains(&(u, w)) {
                    out.push(Fragment::Chord(u, w));
                }
            }
        }
    }
    (out, label)
}

/// A path from attachment `a` through component `c` to another attachment.
fn component_path(adj: &[Vec<usize>], embedded: &[bool], label: &[usize], c: usize, a: usize) -> Vec<usize> {
    let start = *adj[a].iter().find(|&&x| !embedded[x] && label[x] == c).expect("attachment touches component");
    let mut parent: HashMap<usize, usize> = HashMap::from([(start, a)]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if let Some(&b) = adj[u].iter().find(|&&w| embedded[w] && w != a) {
            let mut path = vec![b];
            let mut x = u;
            while x != a {
                path.push(x);
                x = parent[&x];
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in &adj[u] {
            if !embedded[w] && !parent.contains_key(&w) {
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    unreachable!("components of a biconnected graph have two attachments")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::EmbeddedGraph;
    use crate::generators::named_graph;
    use crate::generators::random::random_triangulation;
    use proptest::prelude::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn k33() -> Graph {
        let mut g = Graph::new(6);
        for u in 0..3 {
            for v in 3..6 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn kuratowski_graphs_rejected() {
        assert_eq!(embed_path_addition(&complete(5)), Err(EmbedError::NotPlanar));
        assert_eq!(embed_path_addition(&k33()), Err(EmbedError::NotPlanar));
        // Subdivided K3,3 passes the edge-count filter.
        let mut g = k33();
        g.remove_edge(0, 3).unwrap();
        let s = g.add_vertex();
        g.add_edge(0, s).unwrap();
        g.add_edge(s, 3).unwrap();
        assert_eq!(embed_path_addition(&g), Err(EmbedError::NotPlanar));
        // Petersen graph.
        let mut p = Graph::new(10);
        for i in 0..5 {
            p.add_edge(i, (i + 1) % 5).unwrap();
            p.add_edge(i, i + 5).unwrap();
            p.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        assert_eq!(embed_path_addition(&p), Err(EmbedError::NotPlanar));
    }

    #[test]
    fn small_planar_graphs() {
        let k4 = EmbeddedGraph::from_graph(complete(4)).unwrap();
        assert_eq!(k4.faces.len(), 4);
        assert!(k4.faces.iter().all(|f| f.length == 3));
        let ico = EmbeddedGraph::from_graph(named_graph("icosahedron").unwrap()).unwrap();
        assert_eq!(ico.faces.len(), 20);
        assert!(ico.faces.iter().all(|f| f.length == 3));
        let dod = EmbeddedGraph::from_graph(named_graph("dodecahedron").unwrap()).unwrap();
        assert!(dod.faces.iter().all(|f| f.length == 5));
    }

    #[test]
    fn blocks_of_a_bowtie_with_tail() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)]).unwrap();
        let mut sizes: Vec<usize> = biconnected_blocks(&g).iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 3]);
        let eg = EmbeddedGraph::from_graph(g).unwrap();
        assert_eq!(eg.faces.len(), 3);
    }

    #[test]
    fn deterministic() {
        let g = random_triangulation(80, 11, 3).unwrap().graph;
        assert_eq!(embed_path_addition(&g).unwrap(), embed_path_addition(&g).unwrap());
    }

    proptest! {
        #[test]
        fn re_embeds_triangulations(n in 4usize..80, seed in any::<u64>()) {
            let g = random_triangulation(n, seed, 3).unwrap().graph;
            let eg = EmbeddedGraph::from_graph(g).unwrap();
            prop_assert_eq!(eg.faces.len(), 2 * n - 4);
            prop_assert!(eg.faces.iter().all(|f| f.length == 3));
        }

        #[test]
        fn embeds_sparse_planar_subgraphs(n in 4usize..60, seed in any::<u64>(), mask in any::<u64>()) {
            let t = random_triangulation(n, seed, 3).unwrap().graph;
            let edges: Vec<_> = t.edges().enumerate().filter(|(i, _)| (mask >> (i % 64)) & 1 == 1).map(|(_, e)| e).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            prop_assert!(EmbeddedGraph::from_graph(g).is_ok());
        }

        #[test]
        fn adding_an_edge_to_a_triangulation_fails(n in 5usize..40, seed in any::<u64>()) {
            let mut g = random_triangulation(n, seed, 3).unwrap().graph;
            let (u, v) = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| !g.has_edge(u, v)).unwrap();
            g.add_edge(u, v).unwrap();
            prop_assert_eq!(embed_path_addition(&g), Err(EmbedError::NotPlanar));
        }
    }
}
