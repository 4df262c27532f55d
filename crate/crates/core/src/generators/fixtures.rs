//! Layered fixtures: a center vertex whose neighbourhood is grown cycle by
//! cycle with prescribed degrees, then closed off into a triangulation.
//!
//! A cycle vertex `c_j` that still needs `t_j` edges fans out to `t_j`
//! consecutive vertices of the next cycle, sharing its first and last with
//! its cycle neighbours, so the next cycle has `Σ (t_j - 1)` vertices. An
//! antiprism layer and a hub close the sphere after the last cycle. With a
//! single layer (the ring) this is a wheel: ring vertex `r_i` of degree
//! `d_i` has `d_i - 3` outer neighbours and the outer cycle has
//! `Σ (d_i - 4)` vertices.

use crate::embed::EmbeddedGraph;
use crate::graph::{Graph, VertexId};

use super::GeneratorError;

#[derive(Clone, Debug)]
pub struct WheelFixture {
    pub eg: EmbeddedGraph,
    pub center: VertexId,
    /// Neighbours of the center in rotation order (up to reflection), with
    /// the requested degrees.
    pub ring: Vec<VertexId>,
}

#[derive(Clone, Debug)]
pub struct LayeredFixture {
    pub eg: EmbeddedGraph,
    pub center: VertexId,
    /// `cycles[0]` is the ring; `cycles[i + 1]` is the cycle grown from
    /// `cycles[i]`, starting with the first fan vertex of `cycles[i][0]`.
    /// The last entry is the cycle closed by the antiprism.
    pub cycles: Vec<Vec<VertexId>>,
}

fn invalid(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::InvalidParameter(msg.into())
}

/// Builds a layered fixture. `layers[i]` lists the target degrees of
/// `cycles[i]`; the cycle after the last layer gets two antiprism edges
/// per vertex. Every vertex must need at least one more edge when its cycle
/// is expanded, and the closing cycle must have at least 5 vertices.
pub fn layered(layers: &[&[usize]]) -> Result<LayeredFixture, GeneratorError> {
    let ring_len = layers.first().map_or(0, |l| l.len());
    if ring_len < 3 {
        return Err(invalid("need at least 3 ring vertices"));
    }
    let mut g = Graph::new(1);
    let ring: Vec<VertexId> = (0..ring_len).map(|_| g.add_vertex()).collect();
    for i in 0..ring_len {
        g.add_edge(0, ring[i]).unwrap();
        g.add_edge(ring[i], ring[(i + 1) % ring_len]).unwrap();
    }
    let mut cycles = vec![ring];
    for (depth, targets) in layers.iter().enumerate() {
        let cycle = cycles.last().unwrap().clone();
        if targets.len() != cycle.len() {
            return Err(invalid(format!("layer {depth} has {} degrees for a cycle of {}", targets.len(), cycle.len())));
        }
        let mut fans = Vec::with_capacity(cycle.len());
        for (&c, &target) in cycle.iter().zip(targets.iter()) {
            let have = g.degree(c);
            if target <= have {
                return Err(invalid(format!("layer {depth}: degree {target} leaves no room above {have}")));
            }
            fans.push(target - have);
        }
        let next_len: usize = fans.iter().map(|t| t - 1).sum();
        if next_len < 3 {
            return Err(invalid(format!("cycle after layer {depth} would have {next_len} vertices")));
        }
        let next: Vec<VertexId> = (0..next_len).map(|_| g.add_vertex()).collect();
        let mut start = 0;
        for (&c, &fan) in cycle.iter().zip(&fans) {
            for t in 0..fan {
                g.add_edge(c, next[(start + t) % next_len]).unwrap();
            }
            start += fan - 1;
        }
        for j in 0..next_len {
            g.add_edge(next[j], next[(j + 1) % next_len]).unwrap();
        }
        cycles.push(next);
    }
    let outer = cycles.last().unwrap().clone();
    let len = outer.len();
    if len < 5 {
        return Err(invalid(format!("closing cycle of length {len} is shorter than 5")));
    }
    let anti: Vec<VertexId> = (0..len).map(|_| g.add_vertex()).collect();
    let hub = g.add_vertex();
    for j in 0..len {
        let next = (j + 1) % len;
        g.add_edge(anti[j], outer[j]).unwrap();
        g.add_edge(anti[j], outer[next]).unwrap();
        g.add_edge(anti[j], anti[next]).unwrap();
        g.add_edge(hub, anti[j]).unwrap();
    }
    let n = g.vertex_count();
    let realized = layers.iter().zip(&cycles).all(|(t, c)| c.iter().zip(t.iter()).all(|(&v, &d)| g.degree(v) == d));
    if g.edge_count() != 3 * n - 6 || !realized {
        return Err(invalid("degrees do not close into a triangulation"));
    }
    let eg = EmbeddedGraph::from_graph(g)?;
    Ok(LayeredFixture { eg, center: 0, cycles })
}

/// Builds the single-layer fixture. Ring degrees must be at least 4 and the
/// outer cycle must have at least 5 vertices.
pub fn wheel(ring_degrees: &[usize]) -> Result<WheelFixture, GeneratorError> {
    if ring_degrees.iter().any(|&x| x < 4) {
        return Err(invalid("ring degrees must be at least 4"));
    }
    let f = layered(&[ring_degrees])?;
    Ok(WheelFixture { eg: f.eg, center: f.center, ring: f.cycles[0].clone() })
}

/// A degree-8 vertex surrounded by eight 5-vertices, all faces triangular.
pub fn lemma10() -> WheelFixture {
    wheel(&[5; 8]).expect("valid fixture")
}

/// Outer-layer degrees for a ring of 6-vertices: the vertex shared by
/// `ring[j]` and `ring[j + 1]` sits at index `2j + 2` of the next cycle.
fn six_ring_outer(ring_len: usize, shared: impl Fn(usize) -> usize, middle: usize) -> Vec<usize> {
    (0..2 * ring_len).map(|i| if i % 2 == 0 { shared((i / 2 + ring_len - 1) % ring_len) } else { middle }).collect()
}

/// A degree-7 center whose neighbours all have degree 6; `ring[1]` and
/// `ring[2]` share a 5-neighbour and every other ring vertex has none
/// besides it. The center receives distance charge from exactly one window.
pub fn distance_witness() -> LayeredFixture {
    let outer = six_ring_outer(7, |j| if j == 1 { 5 } else { 6 }, 6);
    layered(&[&[6; 7], &outer]).expect("valid fixture")
}

/// A 5-vertex whose five 6-neighbours pairwise share a common neighbour of
/// degree 7, all faces triangular. Each of the five edges of the ring is
/// the middle of a distance-discharging window.
pub fn five_windows_sender() -> LayeredFixture {
    let outer = six_ring_outer(5, |_| 7, 6);
    layered(&[&[6; 5], &outer]).expect("valid fixture")
}

/// A degree-8 center surrounded by 6-vertices where the pairs
/// `(ring[1], ring[2])`, `(ring[3], ring[4])`, `(ring[5], ring[6])` and
/// `(ring[7], ring[0])` each share a 5-neighbour. Every 6-vertex has exactly
/// one 5-neighbour, and consecutive windows overlap in a middle vertex of
/// one and an end vertex of the next, so the center takes four windows.
pub fn overlapping_windows() -> LayeredFixture {
    let outer = six_ring_outer(8, |j| if j % 2 == 1 { 5 } else { 6 }, 6);
    layered(&[&[6; 8], &outer]).expect("valid fixture")
}

/// A worked reduction: delete one vertex, then collect the listed vertices
/// in order.
#[derive(Clone, Debug)]
pub struct ReductionFixture {
    pub eg: EmbeddedGraph,
    pub deleted: VertexId,
    pub collected: Vec<VertexId>,
}

fn fixture(
    degrees: &[usize],
    deleted: impl Fn(&WheelFixture) -> VertexId,
    collected: impl Fn(&WheelFixture) -> Vec<VertexId>,
) -> ReductionFixture {
    let w = wheel(degrees).expect("valid fixture");
    ReductionFixture { deleted: deleted(&w), collected: collected(&w), eg: w.eg }
}

/// Degree-8 center with eight 5-neighbours: delete the center, collect the ring.
pub fn deg8_eight_fives() -> ReductionFixture {
    fixture(&[5; 8], |w| w.center, |w| w.ring.clone())
}

/// Degree-8 center with six consecutive 5-neighbours: delete the center,
/// collect the six.
pub fn deg8_six_fives() -> ReductionFixture {
    fixture(&[5, 5, 5, 5, 5, 5, 6, 6], |w| w.center, |w| w.ring[..6].to_vec())
}

/// Degree-8 center `v` with four consecutive 5-neighbours `v1..v4` and two
/// 6-neighbours `v5, v6` sharing a 5-neighbour outside. Ring order is
/// `v6, v5, w, v1, v2, v3, v4, z`. Delete `w`, collect `v1..v4, v, v5, v6`.
pub fn deg8_four_fives() -> ReductionFixture {
    fixture(
        &[6, 6, 6, 5, 5, 5, 5, 7],
        |w| w.ring[2],
        |w| {
            let r = &w.ring;
            vec![r[3], r[4], r[5], r[6], w.center, r[1], r[0]]
        },
    )
}

/// Degree-7 center `v` with three consecutive 5-neighbours. Ring order is
/// `v5, v4, w, v1, v2, v3, y`. Delete `w`, collect `v1, v2, v3, v, v4, v5`.
pub fn deg7_three_fives() -> ReductionFixture {
    fixture(
        &[6, 6, 6, 5, 5, 5, 6],
        |w| w.ring[2],
        |w| {
            let r = &w.ring;
            vec![r[3], r[4], r[5], w.center, r[1], r[0]]
        },
    )
}

/// Degree-7 center `v` with five 5-neighbours. Ring order is
/// `x, y, z, v1, v2, v3, t`. Delete `x`, collect `y, z, v, v1, v2, v3`.
pub fn deg7_five_fives() -> ReductionFixture {
    fixture(
        &[6, 5, 5, 5, 5, 5, 6],
        |w| w.ring[0],
        |w| {
            let r = &w.ring;
            vec![r[1], r[2], w.center, r[3], r[4], r[5]]
        },
    )
}
