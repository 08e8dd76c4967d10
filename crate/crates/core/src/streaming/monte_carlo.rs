use rayon::prelude::*;
use serde::Serialize;

use super::{check_delta0, MachineOptions, StackMachine, StreamStats};
use crate::error::{Error, Result};
use crate::types::Seed;

/// Aggregate of independent streaming runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummary {
    pub runs: u64,
    pub mean_copies: f64,
    /// Unbiased sample variance; 0 for a single run.
    pub variance_copies: f64,
    /// `sqrt(variance / runs)`.
    pub std_error: f64,
    pub min_copies: u64,
    pub max_copies: u64,
    pub mean_swap_attempts: f64,
    pub max_stack_depth: usize,
    pub final_delta: f64,
    pub level_attempts: Vec<u64>,
    pub level_successes: Vec<u64>,
}

impl McSummary {
    /// Exact integer accumulation, so the result does not depend on order.
    pub fn from_runs(runs: &[StreamStats]) -> Result<Self> {
        let first = runs.first().ok_or(Error::OutOfRange {
            name: "runs",
            value: 0.0,
            expected: "runs >= 1",
        })?;
        let count = runs.len() as u128;
        let levels = first.level_attempts.len();
        let mut sum: u128 = 0;
        let mut sum_sq: u128 = 0;
        let mut attempts: u128 = 0;
        let mut level_attempts = vec![0u64; levels];
        let mut level_successes = vec![0u64; levels];
        for r in runs {
            let c = u128::from(r.copies_consumed);
            sum += c;
            sum_sq += c * c;
            attempts += u128::from(r.swap_attempts);
            for (acc, x) in level_attempts.iter_mut().zip(&r.level_attempts) {
                *acc += x;
            }
            for (acc, x) in level_successes.iter_mut().zip(&r.level_successes) {
                *acc += x;
            }
        }
        let variance = if count > 1 {
            // N·Σc² − (Σc)² is exact in u128.
            (count * sum_sq - sum * sum) as f64 / (count * (count - 1)) as f64
        } else {
            0.0
        };
        Ok(Self {
            runs: runs.len() as u64,
            mean_copies: sum as f64 / count as f64,
            variance_copies: variance,
            std_error: (variance / count as f64).sqrt(),
            min_copies: runs.iter().map(|r| r.copies_consumed).min().unwrap_or(0),
            max_copies: runs.iter().map(|r| r.copies_consumed).max().unwrap_or(0),
            mean_swap_attempts: attempts as f64 / count as f64,
            max_stack_depth: runs.iter().map(|r| r.max_stack_depth).max().unwrap_or(0),
            final_delta: first.final_delta,
            level_attempts,
            level_successes,
        })
    }
}

/// `runs` independent checked-mode machine runs; run `i` uses `seed.derive(i)`.
pub fn simulate_runs(
    delta0: f64,
    d: u64,
    n: usize,
    runs: u64,
    seed: Seed,
    options: MachineOptions,
) -> Result<Vec<StreamStats>> {
    check_delta0(delta0)?;
    (0..runs)
        .into_par_iter()
        .map(|i| {
            StackMachine::seeded(delta0, d, n, seed.derive(i))?
                .with_options(options)
                .run()
        })
        .collect()
}

pub fn monte_carlo(delta0: f64, d: u64, n: usize, runs: u64, seed: Seed) -> Result<McSummary> {
    monte_carlo_with(delta0, d, n, runs, seed, MachineOptions::default())
}

pub fn monte_carlo_with(
    delta0: f64,
    d: u64,
    n: usize,
    runs: u64,
    seed: Seed,
    options: MachineOptions,
) -> Result<McSummary> {
    if runs == 0 {
        return Err(Error::OutOfRange {
            name: "runs",
            value: 0.0,
            expected: "runs >= 1",
        });
    }
    McSummary::from_runs(&simulate_runs(delta0, d, n, runs, seed, options)?)
}
