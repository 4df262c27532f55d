//! Bad cut-sets (separating triangles and chordless separating 4-cycles),
//! good subgraphs and the ordinary/extraordinary split of their kernel.
//!
//! "Interior of a cut" is taken combinatorially: any component of `G - V(C)`
//! can be drawn inside `C`, so the innermost region is the smallest such
//! component.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::charge::Charge;
use crate::discharging::ChargeState;
use crate::embed::{EmbeddedGraph, FaceId};
use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutKind {
    Triangle,
    ChordlessQuad,
}

/// A bad cut-set. Triangles are listed ascending; quadrilaterals in cycle
/// order starting from the smallest vertex, second vertex smaller than the
/// fourth.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BadCut {
    pub kind: CutKind,
    pub vertices: Vec<VertexId>,
}

impl fmt::Display for BadCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            CutKind::Triangle => "triangle",
            CutKind::ChordlessQuad => "quad",
        };
        write!(f, "{kind}{:?}", self.vertices)
    }
}

/// Triangles of `g`, each once, ascending.
pub fn triangles(g: &Graph) -> Vec<[VertexId; 3]> {
    let mut out = Vec::new();
    for a in g.vertices() {
        let na = g.neighbors(a);
        for &b in na.iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if na.binary_search(&c).is_ok() {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Induced 4-cycles of `g`, each once, in the orientation documented on
/// [`BadCut`].
pub fn chordless_quads(g: &Graph) -> Vec<[VertexId; 4]> {
    let mut out = Vec::new();
    let mut middles: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for a in g.vertices() {
        middles.clear();
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b) {
                if c > a && !g.has_edge(a, c) {
                    middles.entry(c).or_default().push(b);
                }
            }
        }
        let mut keys: Vec<VertexId> = middles.keys().copied().collect();
        keys.sort_unstable();
        for c in keys {
            let mut mids = middles[&c].clone();
            mids.sort_unstable();
            for (i, &b) in mids.iter().enumerate() {
                for &d in &mids[i + 1..] {
                    if !g.has_edge(b, d) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Components of `g - removed`, each ascending, ordered by smallest member.
pub fn components_without(g: &Graph, removed: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut h = g.clone();
    for &v in removed {
        h.remove_vertex(v).expect("removed vertex must be in the graph");
    }
    h.connected_components()
}

/// Bad cuts by direct component counting. Works on any graph.
pub fn find_bad_cuts(g: &Graph) -> Vec<BadCut> {
    let disconnects = |s: &[VertexId]| components_without(g, s).len() >= 2;
    let mut out: Vec<BadCut> =
        triangles(g).into_iter().filter(|t| disconnects(t)).map(|t| BadCut { kind: CutKind::Triangle, vertices: t.to_vec() }).collect();
    out.extend(
        chordless_quads(g).into_iter().filter(|q| disconnects(q)).map(|q| BadCut { kind: CutKind::ChordlessQuad, vertices: q.to_vec() }),
    );
    out
}

/// Number of rotation positions strictly between `from` and `to` at `x`,
/// walking forward from `from`.
fn arc_len(eg: &EmbeddedGraph, x: VertexId, from: VertexId, to: VertexId) -> usize {
    let d = eg.graph.degree(x);
    let i = eg.rotation.position(x, from).expect("not a neighbour");
    let j = eg.rotation.position(x, to).expect("not a neighbour");
    (j + d - i - 1) % d
}

/// Whether removing the vertices of `cycle` disconnects the connected plane
/// graph `eg`. If both sides of the cycle hold a vertex it separates them.
/// Otherwise the neighbours of the cycle are joined along face boundaries
/// that avoid it; only when that fails to connect them all is a full search
/// run.
fn cycle_disconnects(eg: &EmbeddedGraph, cycle: &[VertexId]) -> bool {
    let g = &eg.graph;
    let m = cycle.len();
    let (mut left, mut right) = (0, 0);
    for i in 0..m {
        let (p, x, q) = (cycle[(i + m - 1) % m], cycle[i], cycle[(i + 1) % m]);
        left += arc_len(eg, x, p, q);
        right += arc_len(eg, x, q, p);
    }
    if left > 0 && right > 0 {
        return true;
    }
    let on_cycle = |v: &VertexId| cycle.contains(v);
    let boundary: BTreeSet<VertexId> = cycle.iter().flat_map(|&x| g.neighbors(x).iter().copied()).filter(|v| !on_cycle(v)).collect();
    if boundary.len() <= 1 {
        return false;
    }
    let mut parent: HashMap<VertexId, VertexId> = HashMap::new();
    fn find(parent: &mut HashMap<VertexId, VertexId>, v: VertexId) -> VertexId {
        let p = *parent.get(&v).unwrap_or(&v);
        if p == v {
            return v;
        }
        let r = find(parent, p);
        parent.insert(v, r);
        r
    }
    let faces: BTreeSet<FaceId> = cycle.iter().flat_map(|&x| eg.face_incidence[x].iter().map(|inc| inc.face)).collect();
    for f in faces {
        let walk = &eg.faces[f].vertices;
        let len = walk.len();
        for i in 0..len {
            let (u, w) = (walk[i], walk[(i + 1) % len]);
            if !on_cycle(&u) && !on_cycle(&w) {
                let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
                if ru != rw {
                    parent.insert(ru, rw);
                }
            }
        }
    }
    let mut roots = boundary.iter().map(|&v| find(&mut parent, v));
    let first = roots.next().unwrap();
    if roots.all(|r| r == first) {
        return false;
    }
    components_without(g, cycle).len() >= 2
}

/// Bad cuts of a connected plane graph, using the embedding to avoid a
/// graph search for almost every candidate cycle. Disconnected inputs fall back to
/// [`find_bad_cuts`]. Same output as [`find_bad_cuts`].
pub fn find_bad_cuts_embedded(eg: &EmbeddedGraph) -> Vec<BadCut> {
    let g = &eg.graph;
    if !g.is_connected() {
        return find_bad_cuts(g);
    }
    let mut out: Vec<BadCut> = triangles(g)
        .into_iter()
        .filter(|t| cycle_disconnects(eg, t))
        .map(|t| BadCut { kind: CutKind::Triangle, vertices: t.to_vec() })
        .collect();
    out.extend(
        chordless_quads(g)
            .into_iter()
            .filter(|q| cycle_disconnects(eg, q))
            .map(|q| BadCut { kind: CutKind::ChordlessQuad, vertices: q.to_vec() }),
    );
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodSubgraph {
    /// `None` when `H = G`.
    pub cut: Option<BadCut>,
    /// Vertices of `H`, ascending.
    pub h_vertices: Vec<VertexId>,
    /// `H` minus the cut vertices, ascending.
    pub kernel: Vec<VertexId>,
    pub ordinary: Vec<VertexId>,
    pub extraordinary: Vec<VertexId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutsError {
    #[error("good subgraph needs a connected graph")]
    Disconnected,
    #[error("kernel vertex {vertex} lies on bad cut {cut}")]
    KernelOnCut { vertex: VertexId, cut: BadCut },
}

/// Smallest component of `g - cut` avoiding `excluded`. Each exploration
/// stops once it reaches `cap` vertices, so large sides cost at most `cap`
/// per starting neighbour. Returns `None` if every admissible component has
/// at least `cap` vertices.
fn smallest_side(g: &Graph, cut: &[VertexId], excluded: &[VertexId], mut cap: usize) -> Option<Vec<VertexId>> {
    let mut best: Option<Vec<VertexId>> = None;
    let mut settled: BTreeSet<VertexId> = BTreeSet::new();
    let starts: BTreeSet<VertexId> = cut.iter().flat_map(|&c| g.neighbors(c).iter().copied()).filter(|v| !cut.contains(v)).collect();
    for &s in &starts {
        if settled.contains(&s) {
            continue;
        }
        let mut seen: BTreeSet<VertexId> = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        let mut complete = true;
        while let Some(u) = queue.pop_front() {
            if seen.len() >= cap {
                complete = false;
                break;
            }
            for &w in g.neighbors(u) {
                if !cut.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if !complete {
            continue;
        }
        settled.extend(seen.iter().copied());
        if seen.len() >= cap || seen.iter().any(|v| excluded.contains(v)) {
            continue;
        }
        cap = seen.len();
        best = Some(seen.into_iter().collect());
    }
    best
}

/// The triangle-cut with the smallest separated side, and that side. Ties
/// go to the first cut in `cuts`, then to the side found first.
pub fn innermost_triangle_cut(g: &Graph, cuts: &[BadCut]) -> Option<(BadCut, Vec<VertexId>)> {
    let mut best: Option<(BadCut, Vec<VertexId>)> = None;
    for c in cuts.iter().filter(|c| c.kind == CutKind::Triangle) {
        let cap = best.as_ref().map_or(usize::MAX, |t| t.1.len());
        if let Some(side) = smallest_side(g, &c.vertices, &[], cap) {
            best = Some((c.clone(), side));
        }
    }
    best
}

/// The good subgraph of a connected plane graph:
/// first the triangle-cut with the smallest separated side, then, if that
/// side still meets a chordless quadrilateral-cut, the quadrilateral-cut
/// with the smallest side away from the triangle. The result is re-checked
/// against every bad cut.
pub fn good_subgraph(eg: &EmbeddedGraph) -> Result<GoodSubgraph, CutsError> {
    let g = &eg.graph;
    if !g.is_connected() {
        return Err(CutsError::Disconnected);
    }
    let cuts = find_bad_cuts_embedded(eg);
    good_subgraph_from_cuts(g, &cuts)
}

/// [`good_subgraph`] with a precomputed cut list.
pub fn good_subgraph_from_cuts(g: &Graph, cuts: &[BadCut]) -> Result<GoodSubgraph, CutsError> {
    let tri = innermost_triangle_cut(g, cuts);
    let mut chosen = tri.clone();
    let kernel_a: BTreeSet<VertexId> = match &tri {
        Some((_, side)) => side.iter().copied().collect(),
        None => g.vertices().collect(),
    };
    let anchor: Vec<VertexId> = tri.as_ref().map(|t| t.0.vertices.clone()).unwrap_or_default();
    let mut quad: Option<(BadCut, Vec<VertexId>)> = None;
    for c in cuts.iter().filter(|c| c.kind == CutKind::ChordlessQuad) {
        if !c.vertices.iter().any(|v| kernel_a.contains(v)) {
            continue;
        }
        let excluded: Vec<VertexId> = anchor.iter().copied().filter(|v| !c.vertices.contains(v)).collect();
        let cap = quad.as_ref().map_or(usize::MAX, |q| q.1.len());
        if let Some(side) = smallest_side(g, &c.vertices, &excluded, cap) {
            quad = Some((c.clone(), side));
        }
    }
    if quad.is_some() {
        chosen = quad;
    }
    let gs = match chosen {
        None => {
            let all: Vec<VertexId> = g.vertices().collect();
            GoodSubgraph { cut: None, h_vertices: all.clone(), kernel: all.clone(), ordinary: all, extraordinary: Vec::new() }
        }
        Some((cut, kernel)) => {
            let mut h_vertices: Vec<VertexId> = kernel.iter().chain(&cut.vertices).copied().collect();
            h_vertices.sort_unstable();
            let (extraordinary, ordinary) = if cut.kind == CutKind::Triangle {
                kernel.iter().partition(|&&v| cut.vertices.iter().filter(|&&c| g.has_edge(v, c)).count() >= 2)
            } else {
                (Vec::new(), kernel.clone())
            };
            GoodSubgraph { cut: Some(cut), h_vertices, kernel, ordinary, extraordinary }
        }
    };
    let kernel: BTreeSet<VertexId> = gs.kernel.iter().copied().collect();
    for c in cuts {
        if let Some(&v) = c.vertices.iter().find(|v| kernel.contains(v)) {
            return Err(CutsError::KernelOnCut { vertex: v, cut: c.clone() });
        }
    }
    Ok(gs)
}

/// Faces of the host embedding inside the cut: every face when `H = G`,
/// otherwise the faces touching a kernel vertex.
pub fn kernel_faces(gs: &GoodSubgraph, eg: &EmbeddedGraph) -> Vec<FaceId> {
    if gs.cut.is_none() {
        return (0..eg.faces.len()).collect();
    }
    let kernel: BTreeSet<VertexId> = gs.kernel.iter().copied().collect();
    (0..eg.faces.len()).filter(|&f| eg.faces[f].vertices.iter().any(|v| kernel.contains(v))).collect()
}

/// Total final charge of the kernel vertices and kernel faces.
pub fn kernel_charge(gs: &GoodSubgraph, eg: &EmbeddedGraph, state: &ChargeState) -> Charge {
    let vertices: Charge = gs.kernel.iter().map(|&v| state.vertex_charge[v]).sum();
    let faces: Charge = kernel_faces(gs, eg).into_iter().map(|f| state.face_charge[f]).sum();
    vertices + faces
}

/// Outcome of the ordinary/extraordinary dichotomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyCheck {
    /// An extraordinary vertex with final charge at least 2.
    pub rich_extraordinary: Option<VertexId>,
    pub ordinary_total: Charge,
}

impl DichotomyCheck {
    pub fn passed(&self) -> bool {
        self.rich_extraordinary.is_some() || self.ordinary_total.is_positive()
    }
}

pub fn check_dichotomy(gs: &GoodSubgraph, state: &ChargeState) -> DichotomyCheck {
    DichotomyCheck {
        rich_extraordinary: gs.extraordinary.iter().copied().find(|&v| state.vertex_charge[v] >= Charge::int(2)),
        ordinary_total: gs.ordinary.iter().map(|&v| state.vertex_charge[v]).sum(),
    }
}
