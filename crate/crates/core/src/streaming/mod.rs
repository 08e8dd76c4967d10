//! Stochastic simulation of the streaming purifier.
//!
//! Every cell at purity level `i` holds exactly `ρ(δ_i)`, so the simulation
//! tracks integer levels only and replaces each swap test by a Bernoulli draw
//! with the tabulated success probability `p_{i+1}`.

mod machine;
mod monte_carlo;
mod recursive;

pub use machine::{purify_streaming, MachineOptions, StackMachine};
pub use monte_carlo::{monte_carlo, monte_carlo_with, simulate_runs, McSummary};
pub use recursive::purify_recursive;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::recurrence::{gate_count, iterate_closed};
use crate::types::{Dimension, Seed};

/// Deepest recursion either implementation accepts. Beyond this the copy
/// count overflows `u64` even without failures.
pub const MAX_LEVELS: usize = 62;

/// Resource accounting of one purification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StreamStats {
    pub copies_consumed: u64,
    pub swap_attempts: u64,
    pub max_stack_depth: usize,
    pub final_delta: f64,
    pub gate_count: u64,
    /// Swap tests applied to level-`i` inputs, `i = 0..n`.
    pub level_attempts: Vec<u64>,
    /// Successful swap tests on level-`i` inputs.
    pub level_successes: Vec<u64>,
}

impl StreamStats {
    pub(crate) fn raw_copy(delta0: f64) -> Self {
        Self {
            copies_consumed: 1,
            swap_attempts: 0,
            max_stack_depth: 1,
            final_delta: delta0,
            gate_count: 0,
            level_attempts: Vec::new(),
            level_successes: Vec::new(),
        }
    }
}

/// Source of swap-test outcomes. `true` means outcome `a = 0`.
pub trait CoinSource {
    fn flip(&mut self, p: f64) -> bool;
}

/// Bernoulli draws from a PRNG: success iff `U < p` with `U ~ [0, 1)`.
#[derive(Debug, Clone)]
pub struct RngCoins<R>(pub R);

impl RngCoins<ChaCha8Rng> {
    pub fn from_seed(seed: Seed) -> Self {
        RngCoins(seed.rng())
    }
}

impl<R: Rng> CoinSource for RngCoins<R> {
    #[inline]
    fn flip(&mut self, p: f64) -> bool {
        self.0.random::<f64>() < p
    }
}

/// Forced outcome sequence, ignoring the probabilities. After the sequence
/// runs out every outcome is `then`.
#[derive(Debug, Clone)]
pub struct RiggedCoins {
    outcomes: Vec<bool>,
    pos: usize,
    then: bool,
}

impl RiggedCoins {
    pub fn always(outcome: bool) -> Self {
        Self::sequence(Vec::new(), outcome)
    }

    pub fn sequence(outcomes: Vec<bool>, then: bool) -> Self {
        Self {
            outcomes,
            pos: 0,
            then,
        }
    }

    /// Number of outcomes handed out so far.
    pub fn used(&self) -> usize {
        self.pos
    }
}

impl CoinSource for RiggedCoins {
    fn flip(&mut self, _p: f64) -> bool {
        let out = self.outcomes.get(self.pos).copied().unwrap_or(self.then);
        self.pos += 1;
        out
    }
}

/// `δ_0..δ_n` and `p_1..p_n`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct LevelTables {
    pub d: u64,
    pub deltas: Vec<f64>,
    pub probs: Vec<f64>,
}

impl LevelTables {
    pub(crate) fn new(delta0: f64, d: u64, n: usize) -> Result<Self> {
        if n > MAX_LEVELS {
            return Err(Error::TooManyLevels { n, max: MAX_LEVELS });
        }
        let dim = Dimension::finite(d)?;
        let trace = iterate_closed(delta0, dim, n)?;
        Ok(Self {
            d,
            deltas: trace.deltas(),
            probs: trace.probs(),
        })
    }

    pub(crate) fn levels(&self) -> usize {
        self.probs.len()
    }

    pub(crate) fn finish(&self, mut stats: StreamStats) -> StreamStats {
        stats.final_delta = *self.deltas.last().expect("tables hold δ_0");
        stats.gate_count = gate_count(stats.swap_attempts, self.d);
        stats
    }
}

pub(crate) fn check_delta0(delta0: f64) -> Result<f64> {
    crate::error::check_open("delta0", delta0, 0.0, 1.0, "(0, 1)")
}
