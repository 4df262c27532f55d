//! Large 4-degenerate induced subgraphs of planar graphs.
//!
//! The library implements collect/delete reductions driven by a discharging
//! argument: delete a vertex, collect every vertex whose degree drops to at
//! most 4, and repeat until the graph is gone. The potential Γ bounds the
//! number of deletions, and every run emits a certificate that can be
//! replayed independently.

pub mod charge;
pub mod collect;
pub mod cuts;
pub mod discharging;
pub mod embed;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod potential;
pub mod reducer;

pub use charge::Charge;
pub use collect::{collect_closure, is_k_degenerate, CollectResult};
pub use discharging::{run_discharging, ChargeState, DischargeConfig, DistancePattern};
pub use embed::{consecutive_five_neighbours, embed, EmbedError, EmbeddedGraph, Face, RotationSystem};
pub use graph::{Graph, GraphError, VertexId};
pub use potential::{gamma, gamma_breakdown, GammaBreakdown};
pub use reducer::{extract, verify_certificate, ExtractionCertificate};
