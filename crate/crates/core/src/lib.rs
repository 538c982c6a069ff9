//! Upper-bound derivations and small-scale coloring search for multicolor
//! Ramsey numbers `R(C4, …, C4, G_1, …, G_n)`.
//!
//! The pieces:
//!
//! - [`graph`], [`coloring`], [`graph6`]: bitset graphs on at most 128
//!   vertices, edge colorings of `K_N`, and graph6 I/O.
//! - [`target`], [`detect`]: the forbidden-graph family and containment checks.
//! - [`bounds`], [`registry`], [`derive`]: exact bound formulas, a store of
//!   known facts, and a planner that chains them into replayable trees.
//! - [`search`], [`witness`]: backtracking search for good colorings and
//!   lower-bound witnesses.
//! - [`cli`]: the command-line front end.

pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod derive;
pub mod detect;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod registry;
pub mod search;
pub mod target;
pub mod witness;

pub use coloring::EdgeColoring;
pub use derive::{derive, DerivationTree, Planner, Rule};
pub use detect::{contains_target, find_target};
pub use error::{BoundError, GraphError, ParseError, RegistryError, SearchError, TargetError, WitnessError};
pub use graph::SimpleGraph;
pub use registry::{FactKind, RamseyFact, Registry, Trust};
pub use search::{
    merge_colors, partition_check, ramsey_by_search, search_coloring, SearchBudget, SearchOutcome, SearchStatus,
};
pub use target::{parse_targets, Target, TargetList};
pub use witness::{extend_with_disjoint_clique, verify_lower_bound};
