//! Vertex types of degree-6+ vertices and the maximum charge a 5-neighbour
//! may send to each.

use std::fmt;

use crate::charge::Charge;
use crate::embed::{consecutive_five_neighbours, EmbeddedGraph};
use crate::graph::VertexId;

/// Bound on the number of 5-neighbours in a table row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiveBound {
    AtMost(usize),
    /// Exactly three 5-neighbours, consecutive in the rotation.
    ThreeConsecutive,
}

/// Maximum charge rule of a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxCharge {
    Constant(Charge),
    /// 1 from the central of the three consecutive 5-neighbours, 9/10 from
    /// the other two.
    Positional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeRow {
    pub label: &'static str,
    /// Exact degree, or the lower end of the open class for `10+`.
    pub degree: usize,
    pub open_degree: bool,
    pub min_nontriangular: usize,
    pub five_bound: FiveBound,
    pub max_charge: MaxCharge,
}

const fn row(label: &'static str, degree: usize, min_nontriangular: usize, five: usize, mc: Charge) -> TypeRow {
    TypeRow {
        label,
        degree,
        open_degree: degree == 10,
        min_nontriangular,
        five_bound: FiveBound::AtMost(five),
        max_charge: MaxCharge::Constant(mc),
    }
}

const fn positional(label: &'static str, degree: usize, min_nontriangular: usize) -> TypeRow {
    TypeRow {
        label,
        degree,
        open_degree: false,
        min_nontriangular,
        five_bound: FiveBound::ThreeConsecutive,
        max_charge: MaxCharge::Positional,
    }
}

/// The type table in order. A vertex takes the first row it satisfies.
pub const TYPE_TABLE: [TypeRow; 17] = [
    row("10a", 10, 0, 3, Charge::int(1)),
    row("10b", 10, 0, usize::MAX, Charge::new(1, 2)),
    row("9a", 9, 1, 3, Charge::int(1)),
    row("9b", 9, 0, 2, Charge::int(1)),
    positional("9c", 9, 0),
    row("9d", 9, 0, 9, Charge::new(1, 2)),
    row("8a", 8, 0, 1, Charge::int(1)),
    row("8b", 8, 1, 2, Charge::int(1)),
    positional("8c", 8, 2),
    row("8d", 8, 0, 2, Charge::new(9, 10)),
    row("8e", 8, 0, 8, Charge::new(1, 2)),
    row("7a", 7, 0, 1, Charge::new(4, 5)),
    row("7b", 7, 1, 2, Charge::new(13, 20)),
    row("7c", 7, 0, 2, Charge::new(2, 5)),
    row("7d", 7, 0, 7, Charge::new(1, 3)),
    row("6a", 6, 1, 1, Charge::new(2, 5)),
    row("6b", 6, 0, 6, Charge::ZERO),
];

/// The assigned type of a degree-6+ vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexType {
    /// Index into [`TYPE_TABLE`].
    pub row: usize,
    /// Central 5-neighbour for the positional rows.
    pub central: Option<VertexId>,
}

impl VertexType {
    pub fn label(&self) -> &'static str {
        TYPE_TABLE[self.row].label
    }

    /// Maximum charge the 5-neighbour `v` may send.
    pub fn max_charge(&self, v: VertexId) -> Charge {
        match TYPE_TABLE[self.row].max_charge {
            MaxCharge::Constant(c) => c,
            MaxCharge::Positional if self.central == Some(v) => Charge::int(1),
            MaxCharge::Positional => Charge::new(9, 10),
        }
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Local data that decides the type of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeInputs {
    pub degree: usize,
    pub nontriangular: usize,
    pub fives: usize,
    pub central: Option<VertexId>,
}

/// First matching row, or `None` below degree 6.
pub fn classify(inputs: TypeInputs) -> Option<VertexType> {
    if inputs.degree < 6 {
        return None;
    }
    let class = inputs.degree.min(10);
    TYPE_TABLE
        .iter()
        .position(|r| {
            r.degree == class
                && inputs.nontriangular >= r.min_nontriangular
                && match r.five_bound {
                    FiveBound::AtMost(k) => inputs.fives <= k,
                    FiveBound::ThreeConsecutive => inputs.central.is_some(),
                }
        })
        .map(|row| VertexType { row, central: inputs.central })
}

pub fn type_inputs(eg: &EmbeddedGraph, v: VertexId) -> TypeInputs {
    let g = &eg.graph;
    TypeInputs {
        degree: g.degree(v),
        nontriangular: eg.nontriangular_face_count(v),
        fives: g.neighbors(v).iter().filter(|&&w| g.degree(w) == 5).count(),
        central: consecutive_five_neighbours(eg, v),
    }
}

/// Types of all vertices, indexed by id; `None` for vertices of degree < 6.
pub fn classify_types(eg: &EmbeddedGraph) -> Vec<Option<VertexType>> {
    let mut out = vec![None; eg.graph.id_bound()];
    for v in eg.graph.vertices() {
        out[v] = classify(type_inputs(eg, v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inputs(degree: usize, nontriangular: usize, fives: usize, central: Option<VertexId>) -> TypeInputs {
        TypeInputs { degree, nontriangular, fives, central }
    }

    fn label(i: TypeInputs) -> &'static str {
        classify(i).unwrap().label()
    }

    #[test]
    fn table_rows() {
        assert_eq!(label(inputs(8, 0, 1, None)), "8a");
        assert_eq!(classify(inputs(8, 0, 1, None)).unwrap().max_charge(0), Charge::int(1));
        let t = classify(inputs(9, 0, 9, None)).unwrap();
        assert_eq!((t.label(), t.max_charge(0)), ("9d", Charge::new(1, 2)));
        let t = classify(inputs(8, 2, 3, Some(42))).unwrap();
        assert_eq!(t.label(), "8c");
        assert_eq!(t.max_charge(42), Charge::int(1));
        assert_eq!(t.max_charge(41), Charge::new(9, 10));
        // With fewer than two non-triangular incidences 8c does not apply.
        assert_eq!(label(inputs(8, 1, 3, Some(42))), "8e");
        assert_eq!(label(inputs(8, 1, 2, None)), "8b");
        assert_eq!(label(inputs(8, 0, 2, None)), "8d");
        assert_eq!(label(inputs(12, 0, 3, None)), "10a");
        assert_eq!(label(inputs(12, 0, 4, None)), "10b");
        assert_eq!(label(inputs(9, 1, 3, None)), "9a");
        assert_eq!(label(inputs(9, 0, 3, Some(1))), "9c");
        assert_eq!(label(inputs(9, 0, 3, None)), "9d");
        assert_eq!(label(inputs(7, 0, 1, None)), "7a");
        assert_eq!(label(inputs(7, 1, 2, None)), "7b");
        assert_eq!(label(inputs(7, 0, 2, None)), "7c");
        assert_eq!(label(inputs(7, 3, 5, None)), "7d");
        assert_eq!(label(inputs(6, 1, 1, None)), "6a");
        assert_eq!(label(inputs(6, 0, 1, None)), "6b");
        assert_eq!(classify(inputs(6, 0, 0, None)).unwrap().max_charge(0), Charge::ZERO);
        assert!(classify(inputs(5, 0, 5, None)).is_none());
    }

    proptest! {
        #[test]
        fn every_6plus_vertex_has_a_type(degree in 6usize..40, nontri in 0usize..40, fives_frac in 0usize..=100, consecutive in any::<bool>()) {
            let fives = fives_frac * degree / 100;
            let central = (fives == 3 && consecutive).then_some(7);
            let t = classify(inputs(degree, nontri.min(degree), fives, central)).unwrap();
            let r = TYPE_TABLE[t.row];
            prop_assert_eq!(r.degree, degree.min(10));
            // No earlier row matches.
            for earlier in &TYPE_TABLE[..t.row] {
                let fits = earlier.degree == degree.min(10) && nontri.min(degree) >= earlier.min_nontriangular && match earlier.five_bound {
                    FiveBound::AtMost(k) => fives <= k,
                    FiveBound::ThreeConsecutive => central.is_some(),
                };
                prop_assert!(!fits);
            }
        }
    }
}
