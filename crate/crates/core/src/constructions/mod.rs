//! Deterministic and randomized constructions.

pub mod builders;
pub mod square;

pub use builders::{build_ars_graph, build_eps_graph, BuildLog, ChosenBlock};
pub use square::{
    make_l_pattern, make_l_square, s1_witness, sample_jumble_graph, LPattern, LSquare, LineId, LineKind, LineRole,
    PairClass, S1Witness,
};
