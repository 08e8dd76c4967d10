//! Applications: Simon's problem behind a depolarizing oracle, and
//! mixedness testing of depolarized states.

mod gf2;
mod mixedness;
mod simon;

pub use gf2::{format_bits, gf2_dot, gf2_rank_and_nullspace, parse_bits, Gf2Basis};
pub use mixedness::{
    mixedness_class_report, mixedness_levels, mixedness_test, mixedness_test_with_threshold,
    MixednessClassReport, MixednessOutcome, Verdict, DEFAULT_THRESHOLD,
};
pub use simon::{
    default_eps, sample_purified_y, simon_trials, solve_simon, SimonInstance, SimonResult,
    SimonSummary,
};
