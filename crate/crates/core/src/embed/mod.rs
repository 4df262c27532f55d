//! Combinatorial plane embeddings.
//!
//! A rotation system lists each vertex's neighbours in cyclic order. Faces
//! are traced with the rule that the dart following `u -> v` is
//! `v -> succ_v(u)`, where `succ_v(u)` is the neighbour after `u` in the
//! rotation at `v`. The angle between `rot[v][i-1]` and `rot[v][i]` belongs
//! to the face of the dart `v -> rot[v][i]`.

mod dmp;
mod lr;
pub mod planar_code;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub use dmp::embed_path_addition;
pub use lr::embed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("graph is not planar")]
    NotPlanar,
    #[error("rotation at vertex {vertex} does not match its neighbourhood")]
    RotationMismatch { vertex: VertexId },
    #[error("rotation system is not a plane embedding (component of vertex {vertex} has Euler characteristic {euler})")]
    NotPlane { vertex: VertexId, euler: i64 },
}

/// Cyclic neighbour order per vertex, indexed by vertex id. Tombstoned and
/// isolated vertices have empty rotations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RotationSystem {
    rot: Vec<Vec<VertexId>>,
}

impl RotationSystem {
    pub fn from_lists(rot: Vec<Vec<VertexId>>) -> RotationSystem {
        RotationSystem { rot }
    }

    pub fn id_bound(&self) -> usize {
        self.rot.len()
    }

    pub fn order(&self, v: VertexId) -> &[VertexId] {
        &self.rot[v]
    }

    pub fn lists(&self) -> &[Vec<VertexId>] {
        &self.rot
    }

    /// Index of `u` in the rotation at `v`.
    pub fn position(&self, v: VertexId, u: VertexId) -> Option<usize> {
        self.rot[v].iter().position(|&x| x == u)
    }

    /// The neighbour after `u` in the rotation at `v`.
    pub fn succ(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = &self.rot[v];
        let i = self.position(v, u).expect("not a neighbour");
        r[(i + 1) % r.len()]
    }

    /// The neighbour before `u` in the rotation at `v`.
    pub fn pred(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = &self.rot[v];
        let i = self.position(v, u).expect("not a neighbour");
        r[(i + r.len() - 1) % r.len()]
    }

    /// Checks that every live vertex lists exactly its neighbours once.
    pub fn check_against(&self, g: &Graph) -> Result<(), EmbedError> {
        for v in 0..g.id_bound().max(self.rot.len()) {
            let listed = self.rot.get(v).map(Vec::as_slice).unwrap_or(&[]);
            if !g.contains(v) {
                if !listed.is_empty() {
                    return Err(EmbedError::RotationMismatch { vertex: v });
                }
                continue;
            }
            let mut sorted = listed.to_vec();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(EmbedError::RotationMismatch { vertex: v });
            }
        }
        Ok(())
    }
}

pub type FaceId = usize;

/// A face as the closed walk of its boundary. `vertices[i] -> vertices[i+1]`
/// are its darts. An isolated vertex bounds a face of length 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<VertexId>,
    pub length: usize,
}

impl Face {
    /// Directed edges of the boundary walk.
    pub fn darts(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let n = self.length;
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// One appearance of a vertex on a face boundary, between the neighbours
/// `prev` and `next` (consecutive in the rotation at the vertex).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub face: FaceId,
    pub prev: VertexId,
    pub next: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    pub graph: Graph,
    pub rotation: RotationSystem,
    pub faces: Vec<Face>,
    /// `face_incidence[v][i]` is the angle `(rot[v][i-1], rot[v][i])`.
    pub face_incidence: Vec<Vec<Incidence>>,
}

impl EmbeddedGraph {
    /// Validates `rotation` against `graph` and traces the faces. Fails when
    /// the rotation is inconsistent or not a plane embedding.
    pub fn new(graph: Graph, rotation: RotationSystem) -> Result<EmbeddedGraph, EmbedError> {
        rotation.check_against(&graph)?;
        let mut rot = rotation.rot;
        rot.resize(graph.id_bound(), Vec::new());
        let rotation = RotationSystem { rot };
        let (faces, face_incidence) = trace_faces(&graph, &rotation);
        let eg = EmbeddedGraph { graph, rotation, faces, face_incidence };
        eg.check_euler()?;
        Ok(eg)
    }

    /// Computes an embedding with [`embed`].
    pub fn from_graph(graph: Graph) -> Result<EmbeddedGraph, EmbedError> {
        let rotation = embed(&graph)?;
        EmbeddedGraph::new(graph, rotation)
    }

    /// Face of the dart `v -> rot[v][i]`.
    pub fn dart_face(&self, v: VertexId, i: usize) -> FaceId {
        self.face_incidence[v][i].face
    }

    /// Face of the dart `u -> v`.
    pub fn face_of_dart(&self, u: VertexId, v: VertexId) -> FaceId {
        let i = self.rotation.position(u, v).expect("not an edge");
        self.face_incidence[u][i].face
    }

    fn check_euler(&self) -> Result<(), EmbedError> {
        let g = &self.graph;
        let mut comp_of = vec![usize::MAX; g.id_bound()];
        let comps = g.connected_components();
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = c;
            }
        }
        let mut faces_per = vec![0i64; comps.len()];
        for f in &self.faces {
            faces_per[comp_of[f.vertices[0]]] += 1;
        }
        for (c, comp) in comps.iter().enumerate() {
            let v = comp.len() as i64;
            let e = comp.iter().map(|&x| g.degree(x)).sum::<usize>() as i64 / 2;
            let euler = v - e + faces_per[c];
            if euler != 2 {
                return Err(EmbedError::NotPlane { vertex: comp[0], euler });
            }
        }
        Ok(())
    }

    /// Number of face incidences at `v` on faces of length at least 4.
    pub fn nontriangular_face_count(&self, v: VertexId) -> usize {
        self.face_incidence[v].iter().filter(|inc| self.faces[inc.face].length >= 4).count()
    }

    /// The embedding of `graph` minus the vertices not in `keep`, relabelled
    /// densely in the order of `keep`. Deleting vertices from a plane
    /// rotation system leaves a plane rotation system. Returns the embedding
    /// and the map from new ids back to ids of `self`.
    pub fn restrict(&self, keep: &[VertexId]) -> (EmbeddedGraph, Vec<VertexId>) {
        let (sub, back) = self.graph.induced_subgraph(keep);
        let mut local = vec![usize::MAX; self.graph.id_bound()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let rot = keep
            .iter()
            .map(|&v| self.rotation.rot[v].iter().filter_map(|&w| (local[w] != usize::MAX).then_some(local[w])).collect())
            .collect();
        let eg = EmbeddedGraph::new(sub, RotationSystem { rot }).expect("restriction of a plane embedding is plane");
        (eg, back)
    }
}

fn trace_faces(g: &Graph, rot: &RotationSystem) -> (Vec<Face>, Vec<Vec<Incidence>>) {
    const UNSET: usize = usize::MAX;
    let bound = g.id_bound();
    let mut inc: Vec<Vec<Incidence>> = (0..bound).map(|v| vec![Incidence { face: UNSET, prev: v, next: v }; rot.rot[v].len()]).collect();
    let mut faces = Vec::new();
    for v in g.vertices() {
        if rot.rot[v].is_empty() {
            inc[v].push(Incidence { face: faces.len(), prev: v, next: v });
            faces.push(Face { vertices: vec![v], length: 0 });
            continue;
        }
        for i in 0..rot.rot[v].len() {
            if inc[v][i].face != UNSET {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let (mut a, mut ia) = (v, i);
            loop {
                // Dart a -> b leaves a in the angle with index ia.
                let ra = &rot.rot[a];
                let b = ra[ia];
                let prev = ra[(ia + ra.len() - 1) % ra.len()];
                inc[a][ia] = Incidence { face: id, prev, next: b };
                walk.push(a);
                let rb = &rot.rot[b];
                let pos = rb.iter().position(|&x| x == a).expect("asymmetric rotation");
                let ib = (pos + 1) % rb.len();
                a = b;
                ia = ib;
                if a == v && ia == i {
                    break;
                }
            }
            let length = walk.len();
            faces.push(Face { vertices: walk, length });
        }
    }
    (faces, inc)
}

/// If `v` has exactly three neighbours of degree 5 and they are consecutive
/// in its rotation, returns the middle one.
pub fn consecutive_five_neighbours(eg: &EmbeddedGraph, v: VertexId) -> Option<VertexId> {
    let r = eg.rotation.order(v);
    let d = r.len();
    let is5: Vec<bool> = r.iter().map(|&w| eg.graph.degree(w) == 5).collect();
    if is5.iter().filter(|&&b| b).count() != 3 {
        return None;
    }
    (0..d).find(|&i| is5[i] && is5[(i + 1) % d] && is5[(i + 2) % d]).map(|i| r[(i + 1) % d])
}
