//! Seeded random planar triangulations and trees.
//!
//! The generator is ChaCha8 seeded from a `u64`, so output is identical
//! across runs and platforms. Triangulations start from K4, insert vertices
//! into uniformly chosen faces, then apply random edge flips. The resulting
//! distribution is not uniform over triangulations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GeneratorError;
use crate::embed::{EmbeddedGraph, RotationSystem};
use crate::graph::{Graph, VertexId};

/// Rotation lists of a triangulation under construction.
struct Tri {
    rot: Vec<Vec<VertexId>>,
}

impl Tri {
    fn k4() -> Tri {
        Tri { rot: vec![vec![1, 3, 2], vec![0, 2, 3], vec![1, 0, 3], vec![2, 0, 1]] }
    }

    fn pos(&self, v: VertexId, u: VertexId) -> usize {
        self.rot[v].iter().position(|&x| x == u).expect("not a neighbour")
    }

    fn succ(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = &self.rot[v];
        r[(self.pos(v, u) + 1) % r.len()]
    }

    fn insert_after(&mut self, v: VertexId, after: VertexId, new: VertexId) {
        let i = self.pos(v, after);
        self.rot[v].insert(i + 1, new);
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rot[u].contains(&v)
    }

    /// Adds a vertex inside the face `a -> b -> c`.
    fn insert(&mut self, [a, b, c]: [VertexId; 3]) -> VertexId {
        let z = self.rot.len();
        self.insert_after(b, a, z);
        self.insert_after(a, c, z);
        self.insert_after(c, b, z);
        self.rot.push(vec![a, c, b]);
        z
    }

    /// The two apexes of edge `uv`, if flipping it keeps the graph simple.
    fn flip_target(&self, u: VertexId, v: VertexId) -> Option<(VertexId, VertexId)> {
        let x = self.succ(v, u);
        let y = self.succ(u, v);
        (x != y && !self.has_edge(x, y)).then_some((x, y))
    }

    fn flip(&mut self, u: VertexId, v: VertexId, x: VertexId, y: VertexId) {
        let i = self.pos(u, v);
        self.rot[u].remove(i);
        let i = self.pos(v, u);
        self.rot[v].remove(i);
        self.insert_after(x, v, y);
        self.insert_after(y, u, x);
    }

    fn degree(&self, v: VertexId) -> usize {
        self.rot[v].len()
    }

    fn into_embedded(self) -> EmbeddedGraph {
        let n = self.rot.len();
        let mut g = Graph::new(n);
        for (u, r) in self.rot.iter().enumerate() {
            for &v in r {
                if u < v {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        EmbeddedGraph::new(g, RotationSystem::from_lists(self.rot)).expect("flips and insertions keep the embedding plane")
    }
}

fn deficit(d: usize, target: usize) -> usize {
    target.saturating_sub(d)
}

/// A random triangulation on `n >= 4` vertices. With `min_degree_target = 5`
/// the flips are steered to reach minimum degree 5; failure within the
/// attempt budget is reported as [`GeneratorError::BudgetExhausted`].
pub fn random_triangulation(n: usize, seed: u64, min_degree_target: usize) -> Result<EmbeddedGraph, GeneratorError> {
    if n < 4 {
        return Err(GeneratorError::InvalidParameter(format!("triangulations need n >= 4, got {n}")));
    }
    if !(3..=5).contains(&min_degree_target) {
        return Err(GeneratorError::InvalidParameter(format!("min_degree_target must be 3, 4 or 5, got {min_degree_target}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tri::k4();
    let mut faces: Vec<[VertexId; 3]> = vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
    while t.rot.len() < n {
        let fi = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[fi];
        let z = t.insert([a, b, c]);
        faces[fi] = [a, b, z];
        faces.push([b, c, z]);
        faces.push([c, a, z]);
    }
    // Mixing flips.
    for _ in 0..2 * n {
        let u = rng.gen_range(0..n);
        let v = *t.rot[u].choose(&mut rng).unwrap();
        if t.degree(u) > 3 && t.degree(v) > 3 {
            if let Some((x, y)) = t.flip_target(u, v) {
                t.flip(u, v, x, y);
            }
        }
    }
    let target = min_degree_target;
    let mut total: usize = (0..n).map(|v| deficit(t.degree(v), target)).sum();
    let budget = 400 * n + 20_000;
    let mut attempts = 0;
    while total > 0 {
        if attempts == budget {
            return Err(GeneratorError::BudgetExhausted { n, target, attempts });
        }
        attempts += 1;
        // Half the time aim at a deficient vertex: flip an edge opposite it.
        let (u, v) = if rng.gen_bool(0.5) {
            let needy: Vec<VertexId> = (0..n).filter(|&v| t.degree(v) < target).collect();
            let x = *needy.choose(&mut rng).unwrap();
            let i = rng.gen_range(0..t.degree(x));
            let r = &t.rot[x];
            (r[i], r[(i + 1) % r.len()])
        } else {
            let u = rng.gen_range(0..n);
            (u, *t.rot[u].choose(&mut rng).unwrap())
        };
        let Some((x, y)) = t.flip_target(u, v) else { continue };
        let change = |w: VertexId, delta: isize| {
            let d = t.degree(w) as isize;
            deficit((d + delta) as usize, target) as isize - deficit(d as usize, target) as isize
        };
        let delta = change(u, -1) + change(v, -1) + change(x, 1) + change(y, 1);
        if delta <= 0 && t.degree(u) > 3 && t.degree(v) > 3 {
            t.flip(u, v, x, y);
            total = (total as isize + delta) as usize;
        }
    }
    Ok(t.into_embedded())
}

/// A random tree on `n` vertices: vertex `i` attaches to a uniformly chosen
/// earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for i in 1..n {
        let p = rng.gen_range(0..i);
        g.add_edge(p, i).unwrap();
    }
    g
}

/// Keeps each edge of `eg` independently with probability `keep`, with the
/// inherited embedding.
pub fn thin(eg: &EmbeddedGraph, seed: u64, keep: f64) -> EmbeddedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = eg.graph.clone();
    for (u, v) in eg.graph.edges() {
        if !rng.gen_bool(keep) {
            g.remove_edge(u, v).unwrap();
        }
    }
    let rot = eg.rotation.lists().iter().enumerate().map(|(u, r)| r.iter().copied().filter(|&v| g.has_edge(u, v)).collect()).collect();
    EmbeddedGraph::new(g, RotationSystem::from_lists(rot)).expect("edge deletion keeps the embedding plane")
}
