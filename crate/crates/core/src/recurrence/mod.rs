//! The error-parameter recurrence of the recursive purifier.
//!
//! Two copies of `ρ(δ)` pass the swap test with probability `P(δ, d)` and
//! then merge into `ρ(Δ(δ, d))`. Starting from `δ_0`, level `i` of the
//! recursion holds `ρ(δ_i)` with `δ_i = Δ(δ_{i−1}, d)`, and the gadget that
//! produces it succeeds with probability `p_i = P(δ_{i−1}, d)`.
//!
//! Near `δ = 1` the δ-form loses everything to cancellation, so iteration
//! switches to the equivalent update of `κ = 1 − δ` while `δ > 1/2`.

mod bounds;
mod complexity;

pub use bounds::{
    eta_bound, finite_d_coeffs, h_inf, mu_inf_bound, mu_inf_sequence, n_star_inf, n_upper_finite_d,
    n_upper_inf, FiniteDCoefficients,
};
pub use complexity::{
    expected_sample_complexity, gate_count, gate_count_estimate, lower_bound_samples,
    optimal_fidelity_asymptotic, optimal_samples_asymptotic, sc_theorem_bound,
    tomography_sample_estimate, tomography_sample_estimate_with, ScBranch, TOMOGRAPHY_CONSTANT,
};

use serde::Serialize;

use crate::error::{check_closed, check_open, Error, Result};
use crate::types::Dimension;

/// Default cap on every iteration search.
pub const DEFAULT_ITERATION_CAP: usize = 1_000_000;

/// Swap-test pass probability on two copies of `ρ(δ)`:
/// `1 − (1 − 1/d)δ + (1/2)(1 − 1/d)δ²`.
#[inline]
pub fn success_prob(delta: f64, dim: Dimension) -> f64 {
    let q = 1.0 - dim.inv();
    1.0 - q * delta + 0.5 * q * delta * delta
}

/// Same probability written in `κ = 1 − δ`: `((1 + 1/d) + (1 − 1/d)κ²)/2`.
#[inline]
pub fn success_prob_kappa(kappa: f64, dim: Dimension) -> f64 {
    let inv = dim.inv();
    0.5 * ((1.0 + inv) + (1.0 - inv) * kappa * kappa)
}

/// Error parameter after one successful gadget: `(δ + δ²/d) / (2·P(δ, d))`.
#[inline]
pub fn delta_map(delta: f64, dim: Dimension) -> f64 {
    let inv = dim.inv();
    (delta + delta * delta * inv) / (2.0 * success_prob(delta, dim))
}

/// The same update acting on `κ = 1 − δ`:
/// `((1 + 2/d)κ + (1 − 2/d)κ²) / ((1 + 1/d) + (1 − 1/d)κ²)`.
#[inline]
pub fn kappa_map(kappa: f64, dim: Dimension) -> f64 {
    let inv = dim.inv();
    let k2 = kappa * kappa;
    ((1.0 + 2.0 * inv) * kappa + (1.0 - 2.0 * inv) * k2) / ((1.0 + inv) + (1.0 - inv) * k2)
}

/// One row of a [`RecurrenceTrace`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEntry {
    pub i: usize,
    pub delta: f64,
    /// `1 − δ_i`, carried at full precision while `δ_i > 1/2`.
    pub kappa: f64,
    /// `p_i`; absent for `i = 0`.
    pub p: Option<f64>,
}

/// `(i, δ_i, p_i)` for `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceTrace {
    pub dim: Dimension,
    pub delta0: f64,
    pub entries: Vec<TraceEntry>,
}

impl RecurrenceTrace {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of iterations `n` (one less than the number of entries).
    pub fn levels(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn deltas(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.delta).collect()
    }

    /// `p_1..p_n`.
    pub fn probs(&self) -> Vec<f64> {
        self.entries.iter().skip(1).filter_map(|e| e.p).collect()
    }

    pub fn final_delta(&self) -> f64 {
        self.entries.last().map_or(self.delta0, |e| e.delta)
    }
}

#[derive(Debug, Clone, Copy)]
enum Param {
    Delta(f64),
    Kappa(f64),
}

/// Iterator over `(δ_i, κ_i, p_i)` that switches representation at `δ = 1/2`.
#[derive(Debug, Clone)]
pub(crate) struct Stepper {
    dim: Dimension,
    state: Param,
}

impl Stepper {
    pub(crate) fn new(delta0: f64, dim: Dimension) -> Self {
        let state = if delta0 > 0.5 {
            Param::Kappa(1.0 - delta0)
        } else {
            Param::Delta(delta0)
        };
        Self { dim, state }
    }

    pub(crate) fn delta(&self) -> f64 {
        match self.state {
            Param::Delta(d) => d,
            Param::Kappa(k) => 1.0 - k,
        }
    }

    pub(crate) fn kappa(&self) -> f64 {
        match self.state {
            Param::Delta(d) => 1.0 - d,
            Param::Kappa(k) => k,
        }
    }

    /// Advances one level and returns the success probability of that step.
    pub(crate) fn step(&mut self) -> f64 {
        match self.state {
            Param::Delta(d) => {
                let p = success_prob(d, self.dim);
                self.state = Param::Delta(delta_map(d, self.dim));
                p
            }
            Param::Kappa(k) => {
                let p = success_prob_kappa(k, self.dim);
                let next = kappa_map(k, self.dim);
                // 1 − κ is exact for κ ∈ [1/2, 1].
                self.state = if next >= 0.5 {
                    Param::Delta(1.0 - next)
                } else {
                    Param::Kappa(next)
                };
                p
            }
        }
    }
}

fn check_delta0(delta0: f64) -> Result<f64> {
    check_open("delta0", delta0, 0.0, 1.0, "(0, 1)")
}

/// Runs the recurrence for `n` levels from `δ_0`.
pub fn iterate(delta0: f64, dim: Dimension, n: usize) -> Result<RecurrenceTrace> {
    check_delta0(delta0)?;
    Ok(iterate_unchecked(delta0, dim, n))
}

/// [`iterate`] on the closed interval `[0, 1]`, including both fixed points.
pub fn iterate_closed(delta0: f64, dim: Dimension, n: usize) -> Result<RecurrenceTrace> {
    check_closed("delta0", delta0, 0.0, 1.0, "[0, 1]")?;
    Ok(iterate_unchecked(delta0, dim, n))
}

fn iterate_unchecked(delta0: f64, dim: Dimension, n: usize) -> RecurrenceTrace {
    let mut stepper = Stepper::new(delta0, dim);
    let mut entries = Vec::with_capacity(n + 1);
    entries.push(TraceEntry {
        i: 0,
        delta: delta0,
        kappa: stepper.kappa(),
        p: None,
    });
    for i in 1..=n {
        let p = stepper.step();
        entries.push(TraceEntry {
            i,
            delta: stepper.delta(),
            kappa: stepper.kappa(),
            p: Some(p),
        });
    }
    RecurrenceTrace {
        dim,
        delta0,
        entries,
    }
}

/// Smallest `n` with `δ_n ≤ ε`, searching at most [`DEFAULT_ITERATION_CAP`] levels.
pub fn iterations_to(delta0: f64, dim: Dimension, eps: f64) -> Result<usize> {
    iterations_to_with_cap(delta0, dim, eps, DEFAULT_ITERATION_CAP)
}

pub fn iterations_to_with_cap(delta0: f64, dim: Dimension, eps: f64, cap: usize) -> Result<usize> {
    check_delta0(delta0)?;
    check_open("eps", eps, 0.0, 1.0, "(0, 1)")?;
    let mut stepper = Stepper::new(delta0, dim);
    for n in 0..=cap {
        if stepper.delta() <= eps {
            return Ok(n);
        }
        stepper.step();
    }
    Err(Error::NotConverged { cap })
}

/// Smallest `i` with `δ_{i+1} < 2/3`, for `δ_0 ∈ (2/3, 1)`.
pub fn i_star(delta0: f64, dim: Dimension) -> Result<usize> {
    check_open("delta0", delta0, 2.0 / 3.0, 1.0, "(2/3, 1)")?;
    let mut stepper = Stepper::new(delta0, dim);
    for i in 0..DEFAULT_ITERATION_CAP {
        stepper.step();
        if stepper.delta() < 2.0 / 3.0 {
            return Ok(i);
        }
    }
    Err(Error::NotConverged {
        cap: DEFAULT_ITERATION_CAP,
    })
}
