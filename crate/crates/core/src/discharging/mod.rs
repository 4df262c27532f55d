//! The three-step discharging procedure with exact charges and a full
//! transfer ledger.
//!
//! Vertices start with `6 - deg` and faces with `2(3 - len)`, so a connected
//! plane graph carries total charge 12. Step 1 moves charge from vertices to
//! faces of length at least 4, Step 2 sends 1/5 from a 5-vertex to a vertex
//! of degree at least 7 at distance two, and Step 3 lets every 5-vertex
//! discharge into its 6+-neighbours up to the maxima of the type table.

mod types;

use std::fmt;

use crate::charge::Charge;
use crate::embed::{EmbeddedGraph, FaceId};
use crate::graph::VertexId;

pub use types::{classify, classify_types, type_inputs, FiveBound, MaxCharge, TypeInputs, TypeRow, VertexType, TYPE_TABLE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(VertexId),
    Face(FaceId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(x) => write!(f, "f{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub source: Element,
    pub target: Element,
    pub amount: Charge,
    /// 1, 2 or 3.
    pub step: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Initial,
    AfterStep1,
    AfterStep2,
    Final,
}

/// How strictly the Step 2 configuration is matched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DistancePattern {
    /// Also requires the faces `w v1 v2`, `w v2 v3`, `w v3 v4` and
    /// `v v2 v3` to be triangles and `v2`, `v3` to have exactly one
    /// 5-neighbour each.
    #[default]
    Strict,
    /// Only the degrees, the path edges and distinctness.
    Relaxed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DischargeConfig {
    pub pattern: DistancePattern,
}

/// One firing of Step 2: `sender` (degree 5) is adjacent to the middle two
/// vertices of `witness_path`, four consecutive neighbours of `receiver`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistanceDischargeInstance {
    pub sender: VertexId,
    pub receiver: VertexId,
    pub witness_path: [VertexId; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeState {
    pub vertex_charge: Vec<Charge>,
    pub face_charge: Vec<Charge>,
    pub ledger: Vec<Transfer>,
    pub stage: Stage,
    /// For each 5-vertex that completely discharged in Step 3, the neighbour
    /// it discharged into.
    pub discharged_into: Vec<Option<VertexId>>,
}

impl ChargeState {
    pub fn charge(&self, x: Element) -> Charge {
        match x {
            Element::Vertex(v) => self.vertex_charge[v],
            Element::Face(f) => self.face_charge[f],
        }
    }

    fn slot(&mut self, x: Element) -> &mut Charge {
        match x {
            Element::Vertex(v) => &mut self.vertex_charge[v],
            Element::Face(f) => &mut self.face_charge[f],
        }
    }

    fn send(&mut self, source: Element, target: Element, amount: Charge, step: u8) {
        debug_assert!(amount.is_positive());
        *self.slot(source) -= amount;
        *self.slot(target) += amount;
        self.ledger.push(Transfer { source, target, amount, step });
    }

    /// Sum over live vertices and all faces.
    pub fn total(&self, eg: &EmbeddedGraph) -> Charge {
        self.vertex_total(eg) + self.face_charge.iter().sum::<Charge>()
    }

    pub fn vertex_total(&self, eg: &EmbeddedGraph) -> Charge {
        eg.graph.vertices().map(|v| self.vertex_charge[v]).sum()
    }

    /// Net charge `x` gained in `step` according to the ledger.
    pub fn step_delta(&self, x: Element, step: u8) -> Charge {
        self.ledger
            .iter()
            .filter(|t| t.step == step)
            .map(|t| {
                if t.target == x {
                    t.amount
                } else if t.source == x {
                    -t.amount
                } else {
                    Charge::ZERO
                }
            })
            .sum()
    }
}

/// Initial charges: `6 - deg(v)` on vertices, `2(3 - len(f))` on faces.
pub fn initial_charges(eg: &EmbeddedGraph) -> ChargeState {
    let g = &eg.graph;
    let mut vertex_charge = vec![Charge::ZERO; g.id_bound()];
    for v in g.vertices() {
        vertex_charge[v] = Charge::int(6 - g.degree(v) as i64);
    }
    ChargeState {
        vertex_charge,
        face_charge: eg.faces.iter().map(|f| Charge::int(2 * (3 - f.length as i64))).collect(),
        ledger: Vec::new(),
        stage: Stage::Initial,
        discharged_into: vec![None; g.id_bound()],
    }
}

/// Step 1, applied once per appearance of a vertex on a face of length at
/// least 4 (a cut vertex on a face twice sends twice).
pub fn step1_face_discharge(mut state: ChargeState, eg: &EmbeddedGraph) -> ChargeState {
    assert_eq!(state.stage, Stage::Initial, "step 1 runs on initial charges");
    let g = &eg.graph;
    for v in g.vertices() {
        for inc in &eg.face_incidence[v] {
            if eg.faces[inc.face].length < 4 {
                continue;
            }
            let amount = if g.degree(v) == 6 {
                Charge::new(2, 5)
            } else if g.degree(inc.prev) == 6 && g.degree(inc.next) == 6 {
                Charge::new(3, 5)
            } else {
                Charge::new(1, 2)
            };
            state.send(Element::Vertex(v), Element::Face(inc.face), amount, 1);
        }
    }
    state.stage = Stage::AfterStep1;
    state
}

fn five_neighbour_count(eg: &EmbeddedGraph, v: VertexId) -> usize {
    let g = &eg.graph;
    g.neighbors(v).iter().filter(|&&u| g.degree(u) == 5).count()
}

/// All Step 2 configurations, ordered by receiver, rotation position and
/// sender.
pub fn distance_instances(eg: &EmbeddedGraph, pattern: DistancePattern) -> Vec<DistanceDischargeInstance> {
    let g = &eg.graph;
    let strict = pattern == DistancePattern::Strict;
    let mut out = Vec::new();
    for w in g.vertices() {
        let k = g.degree(w);
        if k < 7 {
            continue;
        }
        let rot = eg.rotation.order(w);
        let triangle_at = |i: usize| eg.faces[eg.face_incidence[w][i % k].face].length == 3;
        for i in 0..k {
            let path = [rot[i], rot[(i + 1) % k], rot[(i + 2) % k], rot[(i + 3) % k]];
            let [v1, v2, v3, v4] = path;
            if g.degree(v1) < 6 || g.degree(v2) != 6 || g.degree(v3) != 6 || g.degree(v4) < 6 {
                continue;
            }
            if !(g.has_edge(v1, v2) && g.has_edge(v2, v3) && g.has_edge(v3, v4)) {
                continue;
            }
            // Incidence j at w is the angle between rot[j-1] and rot[j].
            if strict && !(triangle_at(i + 1) && triangle_at(i + 2) && triangle_at(i + 3)) {
                continue;
            }
            if strict && (five_neighbour_count(eg, v2) != 1 || five_neighbour_count(eg, v3) != 1) {
                continue;
            }
            for &s in g.neighbors(v2) {
                if g.degree(s) != 5 || !g.has_edge(s, v3) {
                    continue;
                }
                // Degrees already separate s from w and the path; the path
                // vertices are distinct positions of a rotation of length >= 7.
                if strict {
                    let f = eg.face_of_dart(v3, v2);
                    let other = eg.face_of_dart(v2, v3);
                    let apex = |f: FaceId| {
                        let face = &eg.faces[f];
                        face.length == 3 && face.vertices.contains(&s)
                    };
                    if !(apex(f) || apex(other)) {
                        continue;
                    }
                }
                out.push(DistanceDischargeInstance { sender: s, receiver: w, witness_path: path });
            }
        }
    }
    out
}

/// Step 2: every instance moves 1/5 from its sender to its receiver.
pub fn step2_distance_discharge(state: ChargeState, eg: &EmbeddedGraph) -> ChargeState {
    step2_distance_discharge_with(state, eg, DischargeConfig::default())
}

pub fn step2_distance_discharge_with(mut state: ChargeState, eg: &EmbeddedGraph, config: DischargeConfig) -> ChargeState {
    assert_eq!(state.stage, Stage::AfterStep1, "step 2 runs after step 1");
    for inst in distance_instances(eg, config.pattern) {
        state.send(Element::Vertex(inst.sender), Element::Vertex(inst.receiver), Charge::new(1, 5), 2);
    }
    state.stage = Stage::AfterStep2;
    state
}

/// Step 3: each 5-vertex sends `min(mc, charge)` to its 6+-neighbours in
/// descending order of `mc` (ties by ascending id), never a negative amount.
pub fn step3_final_discharge(mut state: ChargeState, eg: &EmbeddedGraph, types: &[Option<VertexType>]) -> ChargeState {
    assert_eq!(state.stage, Stage::AfterStep2, "step 3 runs after step 2");
    let g = &eg.graph;
    for v in g.vertices() {
        if g.degree(v) != 5 {
            continue;
        }
        let mut targets: Vec<(Charge, VertexId)> = g.neighbors(v).iter().filter_map(|&w| types[w].map(|t| (t.max_charge(v), w))).collect();
        targets.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (mc, w) in targets {
            let current = state.vertex_charge[v];
            if current.is_positive() && state.discharged_into[v].is_none() && mc >= current {
                state.discharged_into[v] = Some(w);
            }
            let amount = mc.min(current.max(Charge::ZERO));
            if amount.is_positive() {
                state.send(Element::Vertex(v), Element::Vertex(w), amount, 3);
            }
        }
    }
    state.stage = Stage::Final;
    state
}

pub fn run_discharging(eg: &EmbeddedGraph) -> ChargeState {
    run_discharging_with(eg, DischargeConfig::default())
}

pub fn run_discharging_with(eg: &EmbeddedGraph, config: DischargeConfig) -> ChargeState {
    run_staged(eg, config).3
}

/// The state after each of the four stages.
pub fn run_staged(eg: &EmbeddedGraph, config: DischargeConfig) -> (ChargeState, ChargeState, ChargeState, ChargeState) {
    let s0 = initial_charges(eg);
    let s1 = step1_face_discharge(s0.clone(), eg);
    let s2 = step2_distance_discharge_with(s1.clone(), eg, config);
    let s3 = step3_final_discharge(s2.clone(), eg, &classify_types(eg));
    (s0, s1, s2, s3)
}

/// Expected total charge: 12 per connected component.
pub fn expected_total(eg: &EmbeddedGraph) -> Charge {
    Charge::int(12 * eg.graph.connected_components().len() as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceViolation {
    pub face: FaceId,
    pub length: usize,
    pub received: Charge,
    pub final_charge: Charge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCheck {
    /// Connected with minimum degree at least 5.
    pub hypothesis_met: bool,
    pub vertex_total: Charge,
    /// Faces with positive final charge or more than `len/2` received.
    pub violations: Vec<FaceViolation>,
}

impl FaceCheck {
    pub fn passed(&self) -> bool {
        self.hypothesis_met && self.violations.is_empty() && self.vertex_total >= Charge::int(12)
    }
}

/// Checks that no face ends with positive charge, that no face received
/// more than half its length, and that the vertices keep at least 12.
pub fn check_lemma_faces(state: &ChargeState, eg: &EmbeddedGraph) -> FaceCheck {
    let g = &eg.graph;
    let hypothesis_met = g.vertex_count() > 0 && g.is_connected() && g.min_degree().unwrap_or(0) >= 5;
    let mut received = vec![Charge::ZERO; eg.faces.len()];
    for t in &state.ledger {
        if let Element::Face(f) = t.target {
            received[f] += t.amount;
        }
    }
    let violations = eg
        .faces
        .iter()
        .enumerate()
        .filter(|&(f, face)| state.face_charge[f].is_positive() || received[f] > Charge::new(face.length as i64, 2))
        .map(|(f, face)| FaceViolation { face: f, length: face.length, received: received[f], final_charge: state.face_charge[f] })
        .collect();
    FaceCheck { hypothesis_met, vertex_total: state.vertex_total(eg), violations }
}

/// Largest Step 2 inflow a vertex of degree `k >= 7` with `m` 5-neighbours
/// may receive.
pub fn distance_inflow_bound(k: usize, m: usize) -> Charge {
    let slots = if m > 0 { (k as i64 - m as i64 - 1).max(0) } else { k as i64 };
    Charge::new(slots / 3, 5)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflowViolation {
    pub receiver: VertexId,
    pub degree: usize,
    pub fives: usize,
    pub inflow: Charge,
    pub bound: Charge,
}

/// Receivers whose Step 2 inflow in the ledger exceeds
/// [`distance_inflow_bound`].
pub fn check_distance_inflow(state: &ChargeState, eg: &EmbeddedGraph) -> Vec<InflowViolation> {
    let g = &eg.graph;
    let mut inflow = vec![Charge::ZERO; g.id_bound()];
    for t in state.ledger.iter().filter(|t| t.step == 2) {
        if let Element::Vertex(w) = t.target {
            inflow[w] += t.amount;
        }
    }
    g.vertices()
        .filter(|&w| inflow[w].is_positive())
        .filter_map(|w| {
            let (k, m) = (g.degree(w), five_neighbour_count(eg, w));
            let bound = distance_inflow_bound(k, m);
            (inflow[w] > bound).then_some(InflowViolation { receiver: w, degree: k, fives: m, inflow: inflow[w], bound })
        })
        .collect()
}

/// One line of the per-element charge report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub element: Element,
    /// Degree of a vertex or length of a face.
    pub size: usize,
    pub type_label: Option<&'static str>,
    pub initial: Charge,
    pub step_deltas: [Charge; 3],
    pub final_charge: Charge,
}

pub fn report_rows(state: &ChargeState, eg: &EmbeddedGraph) -> Vec<ReportRow> {
    let types = classify_types(eg);
    let initial = initial_charges(eg);
    let mut deltas: std::collections::HashMap<Element, [Charge; 3]> = std::collections::HashMap::new();
    for t in &state.ledger {
        let i = usize::from(t.step - 1);
        deltas.entry(t.source).or_default()[i] -= t.amount;
        deltas.entry(t.target).or_default()[i] += t.amount;
    }
    let vertices = eg.graph.vertices().map(|v| (Element::Vertex(v), eg.graph.degree(v), types[v].map(|t| t.label())));
    let faces = eg.faces.iter().enumerate().map(|(f, face)| (Element::Face(f), face.length, None));
    vertices
        .chain(faces)
        .map(|(element, size, type_label)| ReportRow {
            element,
            size,
            type_label,
            initial: initial.charge(element),
            step_deltas: deltas.get(&element).copied().unwrap_or_default(),
            final_charge: state.charge(element),
        })
        .collect()
}
