use rand::Rng;
use serde::Serialize;

use super::{make_depolarized, random_pure_state, random_unitary, swap_test_apply, trace_distance};
use crate::error::Result;
use crate::gadget::{swap_output_delta, swap_success_prob};
use crate::types::{Dimension, Seed};

/// Worst-case deviations of the dense swap test from the closed-form gadget
/// over a batch of random `(ψ, δ₁, δ₂)` tuples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub d: usize,
    pub trials: usize,
    pub tolerance: f64,
    /// `max |p0 − swap_success_prob|`.
    pub max_prob_error: f64,
    /// `max T(ω(0), ρ(δ′))`.
    pub max_state_error: f64,
    /// `max |p0 + p1 − 1|`.
    pub max_completeness_error: f64,
    /// Largest change in `p0` or `ω(0)` under a common random unitary.
    pub max_basis_error: f64,
    /// Trials whose deviations exceed `tolerance`.
    pub failures: usize,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs `trials` random tuples in dimension `d` at tolerance `1e−10`.
///
/// Trial `t` draws everything from `seed.derive(t)`, so the report depends
/// only on `(d, trials, seed)`.
pub fn oracle_sweep(d: usize, trials: usize, seed: Seed) -> Result<SweepReport> {
    let tolerance = 1e-10;
    let dim = Dimension::finite(d as u64)?;
    let mut report = SweepReport {
        d,
        trials,
        tolerance,
        max_prob_error: 0.0,
        max_state_error: 0.0,
        max_completeness_error: 0.0,
        max_basis_error: 0.0,
        failures: 0,
    };

    for t in 0..trials {
        let trial_seed = seed.derive(t as u64);
        let psi = random_pure_state(d, trial_seed.derive(0))?;
        let u = random_unitary(d, trial_seed.derive(1))?;
        let mut rng = trial_seed.derive(2).rng();
        let delta1: f64 = rng.random();
        let delta2: f64 = rng.random();

        let rho = make_depolarized(&psi, delta1)?;
        let sigma = make_depolarized(&psi, delta2)?;
        let res = swap_test_apply(&rho, &sigma)?;

        let prob_err = (res.p0 - swap_success_prob(delta1, delta2, dim)).abs();
        let expected = make_depolarized(&psi, swap_output_delta(delta1, delta2, dim))?;
        let omega0 = res
            .omega0
            .as_ref()
            .expect("p0 >= 1/2 for depolarized inputs");
        let state_err = trace_distance(omega0, &expected)?;
        let completeness_err = (res.p0 + res.p1 - 1.0).abs();

        let rotated = swap_test_apply(&rho.conjugate(&u)?, &sigma.conjugate(&u)?)?;
        let rotated_omega0 = rotated
            .omega0
            .as_ref()
            .expect("p0 >= 1/2 for depolarized inputs");
        let basis_err = (rotated.p0 - res.p0)
            .abs()
            .max(trace_distance(rotated_omega0, &omega0.conjugate(&u)?)?);

        report.max_prob_error = report.max_prob_error.max(prob_err);
        report.max_state_error = report.max_state_error.max(state_err);
        report.max_completeness_error = report.max_completeness_error.max(completeness_err);
        report.max_basis_error = report.max_basis_error.max(basis_err);
        if prob_err > tolerance
            || state_err > tolerance
            || completeness_err > 1e-12
            || basis_err > tolerance
        {
            report.failures += 1;
        }
    }
    Ok(report)
}
