//! Construction and exact certification of graphs that witness unusual
//! behavior of hereditary graph classes defined by a forbidden induced
//! subgraph.
//!
//! The crate is organized bottom-up: graphs and exact graph predicates,
//! set-partition families, the backtracking partition solver, the randomized
//! constructions, the budgeted certifiers and the statistical experiments.

pub mod bitset;
pub mod budget;
pub mod canonical;
pub mod certificate;
pub mod certify;
pub mod constructions;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod graph6;
pub mod homogeneous;
pub mod induced;
pub mod partition;
pub mod pattern;
pub mod rng;
pub mod system;

#[cfg(test)]
mod testutil;

pub use bitset::VertexSet;
pub use budget::Budget;
pub use certificate::{bundle_status, Certificate, Status, Witness};
pub use certify::{
    certify_ars, certify_eps, certify_jumble, check_a_l, check_regularity, check_star_condition, RegularityMode,
};
pub use constructions::{build_ars_graph, build_eps_graph, make_l_pattern, make_l_square, BuildLog, LPattern, LSquare};
pub use error::{Error, Result};
pub use experiments::{enumerate_class, h_statistics_p3free, sample_uniform_set_partition, HReport};
pub use graph::{Graph, SetClass};
pub use graph6::{decode_graph6, encode_graph6};
pub use homogeneous::{max_homogeneous, HomogeneousKind, HomogeneousSet};
pub use induced::{find_induced_copy, Embedding};
pub use partition::{are_transversal, coverage, exclusivity, Coverage, Exclusivity, Family, SetPartition};
pub use pattern::{pattern_partition, st_member, PartConstraint, Pattern};
pub use system::{
    check_p5, check_p6, classify_tame_partition, sample_partition_system, PartitionSystem, TameMatch, Thresholds,
};
