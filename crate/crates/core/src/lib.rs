//! Exact engine, structural detectors and conjecture harness for the graph
//! grabbing game: two players alternately remove vertices of a
//! vertex-weighted graph, keeping the remainder connected, and each scores
//! the weight they removed. The first player (Alice) wins when she collects
//! at least half of the total weight.

pub mod enumerate;
pub mod fixtures;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod instance;
pub mod patterns;
pub mod solver;
pub mod table;
pub mod vertex_set;

pub use graph::{
    bipartiteness, is_bipartite, is_connected, non_cutvertices, Bipartiteness, GraphError,
    WeightedGraph,
};
pub use graph6::{parse_graph6, to_graph6, Graph6Error};
pub use instance::{format_scaled, parse_instance, InstanceDocument, InstanceError};
pub use patterns::{
    build_corona, build_d_member, d_member_count, d_optional_edges, find_corona_odd,
    find_induced_d, find_induced_d_up_to, find_induced_odd_cycle, Budget, CoronaMatch, DMatch,
    DWeighting, PatternError,
};
pub use solver::{
    alice_outcome, evaluate_moves, legal_moves, outcome_from_diff, principal_variation, solve_diff,
    MoveEval, Outcome, SolveError, SolveResult, Solver,
};
pub use table::StateTable;
pub use vertex_set::{VertexSet, MAX_VERTICES};
