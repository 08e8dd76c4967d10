//! Mixedness testing under the promise that the input is `ρ(δ)` with either
//! `δ = 1` or `δ ≤ 1 − η/2`.
//!
//! After `n` levels a far input is nearly pure, so its top-level swap test
//! passes almost surely, while the maximally mixed input stays at `δ = 1`
//! and passes with probability `(1 + 1/d)/2`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_closed, check_open, Error, Result};
use crate::recurrence::{expected_sample_complexity, iterate_closed};
use crate::streaming::{RngCoins, StackMachine};
use crate::types::{Dimension, Seed};

/// Pass-rate threshold separating the two classes.
pub const DEFAULT_THRESHOLD: f64 = 0.875;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    MaximallyMixed,
    FarFromMixed,
}

/// `⌈15 + 2/η + 2 ln(2/η)⌉`.
pub fn mixedness_levels(eta: f64) -> Result<usize> {
    check_open("eta", eta, 0.0, 1.0, "(0, 1)")?;
    Ok((15.0 + 2.0 / eta + 2.0 * (2.0 / eta).ln()).ceil() as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixednessOutcome {
    pub verdict: Verdict,
    pub levels: usize,
    pub reps: u64,
    pub passes: u64,
    pub pass_rate: f64,
    /// `P(δ_{n−1}, d)`, the exact pass probability of one top-level test.
    pub top_pass_prob: f64,
    pub final_delta: f64,
    /// Expected raw copies behind the two inputs of one top-level test,
    /// `2·SC(n−1, d)`.
    pub expected_copies_per_rep: f64,
    pub max_stack_depth: usize,
}

pub fn mixedness_test(
    case_delta: f64,
    d: u64,
    eta: f64,
    reps: u64,
    seed: Seed,
) -> Result<MixednessOutcome> {
    mixedness_test_with_threshold(case_delta, d, eta, reps, seed, DEFAULT_THRESHOLD)
}

/// Runs `reps` independent purifications and records the outcome of the
/// first swap test at the top level of each.
///
/// Every level-`(n−1)` cell is exactly `ρ(δ_{n−1})`, so the machine starts
/// from a stream of such cells and performs that single top-level test; the
/// raw copies behind it are reported in expectation.
pub fn mixedness_test_with_threshold(
    case_delta: f64,
    d: u64,
    eta: f64,
    reps: u64,
    seed: Seed,
    tau: f64,
) -> Result<MixednessOutcome> {
    check_closed("case_delta", case_delta, 0.0, 1.0, "[0, 1]")?;
    let levels = mixedness_levels(eta)?;
    if case_delta > 1.0 - eta / 2.0 && case_delta < 1.0 {
        return Err(Error::OutOfRange {
            name: "case_delta",
            value: case_delta,
            expected: "delta = 1 or delta <= 1 - eta/2",
        });
    }
    if reps == 0 {
        return Err(Error::OutOfRange {
            name: "reps",
            value: 0.0,
            expected: "reps >= 1",
        });
    }
    check_closed("tau", tau, 0.0, 1.0, "[0, 1]")?;
    let dim = Dimension::finite(d)?;
    let trace = iterate_closed(case_delta, dim, levels)?;
    let below_top = trace.entries[levels - 1].delta;

    let mut passes = 0;
    let mut max_stack_depth = 0;
    for r in 0..reps {
        let machine = StackMachine::new(below_top, d, 1, RngCoins::from_seed(seed.derive(r)))?;
        let (stats, passed) = machine.run_until_top_attempt()?;
        passes += u64::from(passed);
        max_stack_depth = max_stack_depth.max(stats.max_stack_depth);
    }
    let pass_rate = passes as f64 / reps as f64;
    Ok(MixednessOutcome {
        verdict: if pass_rate < tau {
            Verdict::MaximallyMixed
        } else {
            Verdict::FarFromMixed
        },
        levels,
        reps,
        passes,
        pass_rate,
        top_pass_prob: trace.entries[levels].p.expect("levels >= 1"),
        final_delta: trace.final_delta(),
        expected_copies_per_rep: 2.0 * expected_sample_complexity(case_delta, dim, levels - 1)?,
        max_stack_depth,
    })
}

/// Error statistics of repeated tests on one input class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixednessClassReport {
    pub case_delta: f64,
    pub d: u64,
    pub eta: f64,
    pub reps: u64,
    pub tau: f64,
    pub trials: u64,
    pub truth: Verdict,
    pub errors: u64,
    pub error_rate: f64,
    pub top_pass_prob: f64,
    /// `histogram[k]` counts trials with exactly `k` passes out of `reps`.
    pub pass_histogram: Vec<u64>,
    pub max_stack_depth: usize,
}

/// Trial `t` uses `seed.derive(t)`.
pub fn mixedness_class_report(
    case_delta: f64,
    d: u64,
    eta: f64,
    reps: u64,
    trials: u64,
    seed: Seed,
    tau: f64,
) -> Result<MixednessClassReport> {
    if trials == 0 {
        return Err(Error::OutOfRange {
            name: "trials",
            value: 0.0,
            expected: "trials >= 1",
        });
    }
    let truth = if case_delta == 1.0 {
        Verdict::MaximallyMixed
    } else {
        Verdict::FarFromMixed
    };
    let outcomes: Vec<MixednessOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| mixedness_test_with_threshold(case_delta, d, eta, reps, seed.derive(t), tau))
        .collect::<Result<_>>()?;
    let mut pass_histogram = vec![0; reps as usize + 1];
    for o in &outcomes {
        pass_histogram[o.passes as usize] += 1;
    }
    let errors = outcomes.iter().filter(|o| o.verdict != truth).count() as u64;
    Ok(MixednessClassReport {
        case_delta,
        d,
        eta,
        reps,
        tau,
        trials,
        truth,
        errors,
        error_rate: errors as f64 / trials as f64,
        top_pass_prob: outcomes[0].top_pass_prob,
        pass_histogram,
        max_stack_depth: outcomes
            .iter()
            .map(|o| o.max_stack_depth)
            .max()
            .unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_count() {
        assert_eq!(mixedness_levels(0.5).unwrap(), 22);
        assert_eq!(mixedness_levels(0.1).unwrap(), 41);
        assert!(mixedness_levels(0.0).is_err());
    }

    #[test]
    fn maximally_mixed_never_purifies() {
        let o = mixedness_test(1.0, 2, 0.5, 20, Seed::new(1, 0)).unwrap();
        assert_eq!(o.final_delta, 1.0);
        assert_eq!(o.top_pass_prob, 0.75);
        let big = mixedness_test(1.0, 1 << 20, 0.5, 20, Seed::new(1, 0)).unwrap();
        assert!((big.top_pass_prob - 0.5).abs() < 1e-6);
        assert_eq!(big.verdict, Verdict::MaximallyMixed);
    }

    #[test]
    fn far_input_passes() {
        let o = mixedness_test(0.5, 2, 0.5, 20, Seed::new(2, 0)).unwrap();
        assert!(o.final_delta <= 2f64.powi(-10));
        assert!(o.top_pass_prob >= 1.0 - 2f64.powi(-10));
        assert_eq!(o.verdict, Verdict::FarFromMixed);
        assert_eq!(o.max_stack_depth, 2);
    }

    #[test]
    fn rejects_promise_gap() {
        assert!(mixedness_test(0.9, 2, 0.5, 20, Seed::new(0, 0)).is_err());
        assert!(mixedness_test(0.75, 2, 0.5, 20, Seed::new(0, 0)).is_ok());
        assert!(mixedness_test(0.5, 2, 0.5, 0, Seed::new(0, 0)).is_err());
    }

    #[test]
    fn report_histogram_sums_to_trials() {
        let r = mixedness_class_report(1.0, 64, 0.5, 20, 50, Seed::new(5, 0), DEFAULT_THRESHOLD)
            .unwrap();
        assert_eq!(r.pass_histogram.iter().sum::<u64>(), 50);
        assert_eq!(r.pass_histogram.len(), 21);
    }
}
