//! Pattern partitions and the structural notions built on them.

pub mod constellation;
pub mod constraint;
pub mod solver;
pub mod stars;

pub use constellation::{find_template, Constellation, Template, TemplateOutcome};
pub use constraint::{satisfies_constraint, PartConstraint};
pub use solver::{
    chi_c, enumerate_partitions, find_partition_where, is_reduced, minimal_dangerous, pattern_partition, st_member,
    ChiC, Enumeration, Outcome, Pattern, Reduced, SearchReport,
};
pub use stars::{find_witness, is_s_star, FoundWitness, WitnessKind};
