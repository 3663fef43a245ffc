//! Marked uni-trivalent graphs, their relations and the quotient spaces
//! carrying the sp(g) action.

mod action;
mod enumerate;
mod graph;
mod quotient;
mod relations;
mod vector;

pub use action::{act_on_canon, apply_expr_with, chord_diagram, graph_action, graph_action_with, GraphActionConfig};
pub use enumerate::enumerate_graphs;
pub use graph::{canonicalize, CanonGraph, Leg, MarkedGraph, Mark};
pub use quotient::{
    check_graph_relations, highest_weight_check, quotient_rank, GraphQuotient, HighestWeightResult, QuotientOptions,
    DEFAULT_EXTRA_LEGS,
};
pub use relations::{as_relations, generate_relations, ihx_relations, o_relation, p_insertion, RelationFamily};
pub use vector::{GraphTermJson, GraphVector, GraphVectorJson};

pub const MAX_GRAPH_G: usize = 4;
pub const MAX_TRIVALENT: usize = 4;
/// Legs counted in a quotient rank.
pub const MAX_QUOTIENT_LEGS: usize = 8;
/// Legs of any enumerated graph, including the margin kept for relations.
pub const MAX_LEGS: usize = 14;

/// Whether B^n_{g,p,q} can be nonzero by parity and degree alone, for |p| legs
/// and internal degree q.
pub fn parity_admissible(q: usize, legs: usize) -> bool {
    (3 * q + legs) % 2 == 0 && !(q == 1 && legs == 1)
}
