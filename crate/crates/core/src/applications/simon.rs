//! Simon's problem when every oracle call depolarizes its output.
//!
//! One faulty query yields the `2m`-qubit state `ρ(δ)` with `d = 4^m`.
//! Purifying it to `ρ(δ_final)` and measuring the first register gives a `y`
//! uniform on `s^⊥` with probability `1 − δ_final` and a uniform string
//! otherwise.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gf2::{gf2_dot, Gf2Basis};
use crate::error::{check_open, Error, Result};
use crate::recurrence::iterations_to;
use crate::streaming::{RngCoins, StackMachine, StreamStats};
use crate::types::{Dimension, Seed};

/// Largest `m` with `4^m` representable as `u64`.
pub const MAX_M: usize = 31;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimonInstance {
    pub m: usize,
    pub s: u64,
    pub oracle_delta: f64,
}

impl SimonInstance {
    pub fn new(m: usize, s: u64, oracle_delta: f64) -> Result<Self> {
        if !(2..=MAX_M).contains(&m) {
            return Err(Error::OutOfRange {
                name: "m",
                value: m as f64,
                expected: "2 <= m <= 31",
            });
        }
        if s == 0 || s >> m != 0 {
            return Err(Error::OutOfRange {
                name: "s",
                value: s as f64,
                expected: "nonzero m-bit string",
            });
        }
        check_open("oracle_delta", oracle_delta, 0.0, 1.0, "(0, 1)")?;
        Ok(Self { m, s, oracle_delta })
    }

    /// Instance with a uniformly random nonzero `s`.
    pub fn random<R: Rng>(m: usize, oracle_delta: f64, rng: &mut R) -> Result<Self> {
        if !(2..=MAX_M).contains(&m) {
            return Self::new(m, 1, oracle_delta);
        }
        let s = rng.random_range(1..1u64 << m);
        Self::new(m, s, oracle_delta)
    }

    /// Dimension of one oracle output, `2^{2m}`.
    pub fn dim(&self) -> u64 {
        1u64 << (2 * self.m)
    }
}

/// `1/(10m)`.
pub fn default_eps(m: usize) -> f64 {
    1.0 / (10.0 * m as f64)
}

fn check_eps(instance: &SimonInstance, eps: f64) -> Result<f64> {
    check_open(
        "eps_target",
        eps,
        0.0,
        instance.oracle_delta,
        "(0, oracle_delta)",
    )
}

/// Purifies one oracle output down to `ε` and measures it.
///
/// Returns `y` and the oracle queries spent, which equal the raw copies the
/// purifier consumed.
pub fn sample_purified_y<R: Rng>(
    instance: &SimonInstance,
    eps_target: f64,
    rng: &mut R,
) -> Result<(u64, u64)> {
    let (y, stats) = sample_with_stats(instance, eps_target, rng)?;
    Ok((y, stats.copies_consumed))
}

fn sample_with_stats<R: Rng>(
    instance: &SimonInstance,
    eps_target: f64,
    rng: &mut R,
) -> Result<(u64, StreamStats)> {
    check_eps(instance, eps_target)?;
    let d = instance.dim();
    let n = iterations_to(instance.oracle_delta, Dimension::finite(d)?, eps_target)?;
    let stats = StackMachine::new(instance.oracle_delta, d, n, RngCoins(&mut *rng))?.run()?;
    Ok((draw_y(instance, stats.final_delta, rng), stats))
}

/// Uniform on `s^⊥` with probability `1 − δ`, uniform on `{0,1}^m` otherwise.
fn draw_y<R: Rng>(instance: &SimonInstance, delta: f64, rng: &mut R) -> u64 {
    let mask = (1u64 << instance.m) - 1;
    let mixed = rng.random::<f64>() < delta;
    let x = rng.random::<u64>() & mask;
    if mixed || !gf2_dot(x, instance.s) {
        x
    } else {
        // Flipping the lowest set bit of s maps the coset y·s = 1 onto s^⊥.
        x ^ (instance.s & instance.s.wrapping_neg())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimonResult {
    pub s_hat: Option<u64>,
    pub total_oracle_queries: u64,
    /// Purified samples drawn, confirmatory ones included.
    pub samples_collected: u64,
    pub restarts: u64,
    pub success: bool,
    /// Purification levels per sample.
    pub levels: usize,
    pub max_stack_depth: usize,
}

/// Collects purified samples until they span a rank-`(m−1)` space, takes its
/// nonzero orthogonal vector as `ŝ` and accepts it if two fresh samples are
/// orthogonal to it. Any failure (full rank or a rejected `ŝ`) restarts the
/// collection. `budget` caps the number of purified samples.
pub fn solve_simon<R: Rng>(
    instance: &SimonInstance,
    eps_target: f64,
    budget: u64,
    rng: &mut R,
) -> Result<SimonResult> {
    check_eps(instance, eps_target)?;
    if budget == 0 {
        return Err(Error::OutOfRange {
            name: "budget",
            value: 0.0,
            expected: "budget >= 1",
        });
    }
    let m = instance.m;
    let mut result = SimonResult {
        s_hat: None,
        total_oracle_queries: 0,
        samples_collected: 0,
        restarts: 0,
        success: false,
        levels: iterations_to(
            instance.oracle_delta,
            Dimension::finite(instance.dim())?,
            eps_target,
        )?,
        max_stack_depth: 0,
    };
    let mut sample = |result: &mut SimonResult| -> Result<Option<u64>> {
        if result.samples_collected >= budget {
            return Ok(None);
        }
        let (y, stats) = sample_with_stats(instance, eps_target, rng)?;
        result.samples_collected += 1;
        result.total_oracle_queries += stats.copies_consumed;
        result.max_stack_depth = result.max_stack_depth.max(stats.max_stack_depth);
        Ok(Some(y))
    };

    let mut basis = Gf2Basis::new();
    loop {
        let Some(y) = sample(&mut result)? else {
            return Ok(result);
        };
        basis.insert(y);
        if basis.rank() == m {
            basis = Gf2Basis::new();
            result.restarts += 1;
            continue;
        }
        if basis.rank() < m - 1 {
            continue;
        }
        let candidate = basis.nullspace(m)[0];
        let mut confirmed = true;
        for _ in 0..2 {
            let Some(y) = sample(&mut result)? else {
                return Ok(result);
            };
            confirmed &= !gf2_dot(y, candidate);
        }
        if confirmed {
            result.s_hat = Some(candidate);
            result.success = candidate == instance.s;
            return Ok(result);
        }
        basis = Gf2Basis::new();
        result.restarts += 1;
    }
}

/// Aggregate of independent Simon trials with random hidden strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimonSummary {
    pub m: usize,
    pub oracle_delta: f64,
    pub eps: f64,
    pub trials: u64,
    pub budget: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub exhausted: u64,
    pub levels: usize,
    pub max_stack_depth: usize,
    pub mean_queries: f64,
    pub mean_samples: f64,
    /// `mean_queries / m²`.
    pub queries_per_m2: f64,
}

/// Trial `t` draws its instance and randomness from `seed.derive(t)`.
pub fn simon_trials(
    m: usize,
    oracle_delta: f64,
    eps: f64,
    trials: u64,
    budget: u64,
    seed: Seed,
) -> Result<SimonSummary> {
    if trials == 0 {
        return Err(Error::OutOfRange {
            name: "trials",
            value: 0.0,
            expected: "trials >= 1",
        });
    }
    let results: Vec<SimonResult> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = seed.derive(t).rng();
            let instance = SimonInstance::random(m, oracle_delta, &mut rng)?;
            solve_simon(&instance, eps, budget, &mut rng)
        })
        .collect::<Result<_>>()?;
    let successes = results.iter().filter(|r| r.success).count() as u64;
    let exhausted = results.iter().filter(|r| r.s_hat.is_none()).count() as u64;
    let queries: u128 = results
        .iter()
        .map(|r| u128::from(r.total_oracle_queries))
        .sum();
    let samples: u128 = results
        .iter()
        .map(|r| u128::from(r.samples_collected))
        .sum();
    let mean_queries = queries as f64 / trials as f64;
    Ok(SimonSummary {
        m,
        oracle_delta,
        eps,
        trials,
        budget,
        successes,
        success_rate: successes as f64 / trials as f64,
        exhausted,
        levels: results[0].levels,
        max_stack_depth: results.iter().map(|r| r.max_stack_depth).max().unwrap_or(0),
        mean_queries,
        mean_samples: samples as f64 / trials as f64,
        queries_per_m2: mean_queries / (m * m) as f64,
    })
}
