//! Budgeted certificates for the class axioms.

pub mod classes;
pub mod jumble;

pub use classes::{
    ars4_partitions, ars_classes, certify_ars, certify_eps, check_a_l, eps3, eps_classes, is_ars3_partition,
    normalize_parts,
};
pub use jumble::{certify_jumble, check_regularity, check_star_condition, is_diverse, RegularityMode};
