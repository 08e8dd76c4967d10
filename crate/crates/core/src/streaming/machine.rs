use rand_chacha::ChaCha8Rng;

use super::{check_delta0, CoinSource, LevelTables, RngCoins, StreamStats};
use crate::error::{Error, Result};
use crate::types::Seed;

/// Run-time switches of a [`StackMachine`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineOptions {
    /// Re-check the stack-order invariant after every mutation and the
    /// equal-purity pairing before every swap test.
    pub checked: bool,
    /// Abort with [`Error::BudgetExhausted`] once more raw copies than this
    /// would be fetched.
    pub max_copies: Option<u64>,
}

impl Default for MachineOptions {
    fn default() -> Self {
        Self {
            checked: true,
            max_copies: None,
        }
    }
}

/// The stack-based purifier, with cells reduced to their purity level.
///
/// `purity[0] = −1` is the empty-stack sentinel and `k` points at the top
/// cell. Each outer round fetches two fresh copies; the inner loop keeps
/// merging the two topmost cells until a swap test fails or their levels
/// differ. The run ends when the bottom cell reaches level `n`.
#[derive(Debug, Clone)]
pub struct StackMachine<C> {
    tables: LevelTables,
    purity: Vec<i64>,
    k: usize,
    coins: C,
    options: MachineOptions,
    stats: StreamStats,
}

impl StackMachine<RngCoins<ChaCha8Rng>> {
    pub fn seeded(delta0: f64, d: u64, n: usize, seed: Seed) -> Result<Self> {
        Self::new(delta0, d, n, RngCoins::from_seed(seed))
    }
}

impl<C: CoinSource> StackMachine<C> {
    /// Accepts `δ_0 ∈ [0, 1]`; both endpoints are fixed points of the
    /// recurrence and simulate without special cases.
    pub fn new(delta0: f64, d: u64, n: usize, coins: C) -> Result<Self> {
        let tables = LevelTables::new(delta0, d, n)?;
        let mut purity = vec![0; n + 3];
        purity[0] = -1;
        Ok(Self {
            stats: StreamStats {
                copies_consumed: 0,
                swap_attempts: 0,
                max_stack_depth: 0,
                final_delta: delta0,
                gate_count: 0,
                level_attempts: vec![0; n],
                level_successes: vec![0; n],
            },
            tables,
            purity,
            k: 0,
            coins,
            options: MachineOptions::default(),
        })
    }

    pub fn with_options(mut self, options: MachineOptions) -> Self {
        self.options = options;
        self
    }

    pub fn levels(&self) -> usize {
        self.tables.levels()
    }

    /// Levels of the live cells, bottom first.
    pub fn stack(&self) -> &[i64] {
        &self.purity[1..=self.k]
    }

    pub fn coins(&self) -> &C {
        &self.coins
    }

    /// Runs to completion.
    pub fn run(mut self) -> Result<StreamStats> {
        if self.levels() == 0 {
            return Ok(StreamStats::raw_copy(self.tables.deltas[0]));
        }
        self.execute(false)?;
        Ok(self.tables.finish(self.stats))
    }

    /// Runs until the first swap test on level-`(n−1)` inputs and returns its
    /// outcome along with the resources spent up to and including it.
    pub fn run_until_top_attempt(mut self) -> Result<(StreamStats, bool)> {
        if self.levels() == 0 {
            return Err(Error::OutOfRange {
                name: "n",
                value: 0.0,
                expected: "n >= 1",
            });
        }
        let outcome = self.execute(true)?.expect("stops at the top attempt");
        Ok((self.tables.finish(self.stats), outcome))
    }

    fn execute(&mut self, stop_at_top: bool) -> Result<Option<bool>> {
        let n = self.levels() as i64;
        loop {
            self.fetch_new_copy()?;
            self.fetch_new_copy()?;
            loop {
                let level = self.purity[self.k];
                if self.options.checked && self.purity[self.k - 1] != level {
                    return Err(Error::InvariantViolation(format!(
                        "swap test on levels {} and {level}",
                        self.purity[self.k - 1]
                    )));
                }
                let idx = level as usize;
                let success = self.coins.flip(self.tables.probs[idx]);
                self.stats.swap_attempts += 1;
                self.stats.level_attempts[idx] += 1;
                if success {
                    self.stats.level_successes[idx] += 1;
                    self.k -= 1;
                    self.purity[self.k] += 1;
                } else {
                    self.k -= 2;
                }
                self.check()?;
                if stop_at_top && level == n - 1 {
                    return Ok(Some(success));
                }
                if !success || self.purity[self.k - 1] != self.purity[self.k] {
                    break;
                }
            }
            if self.k >= 1 && self.purity[1] == n {
                return Ok(None);
            }
        }
    }

    fn fetch_new_copy(&mut self) -> Result<()> {
        if let Some(budget) = self.options.max_copies {
            if self.stats.copies_consumed >= budget {
                return Err(Error::BudgetExhausted { budget });
            }
        }
        self.k += 1;
        if self.k >= self.purity.len() {
            return Err(Error::InvariantViolation(format!(
                "stack depth {} exceeds n + 1 = {}",
                self.k,
                self.levels() + 1
            )));
        }
        self.purity[self.k] = 0;
        self.stats.copies_consumed += 1;
        self.stats.max_stack_depth = self.stats.max_stack_depth.max(self.k);
        self.check()
    }

    /// `purity[0] = −1` and `purity[1] ≥ … ≥ purity[k]` with at most one equality.
    fn check(&self) -> Result<()> {
        if !self.options.checked {
            return Ok(());
        }
        if self.purity[0] != -1 {
            return Err(Error::InvariantViolation("sentinel overwritten".into()));
        }
        let live = self.stack();
        let mut equalities = 0;
        for w in live.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvariantViolation(format!(
                    "stack not non-increasing: {live:?}"
                )));
            }
            if w[0] == w[1] {
                equalities += 1;
            }
        }
        if equalities > 1 {
            return Err(Error::InvariantViolation(format!(
                "more than one equal pair on the stack: {live:?}"
            )));
        }
        if self.k > self.levels() + 1 {
            return Err(Error::InvariantViolation(format!(
                "stack depth {} exceeds n + 1",
                self.k
            )));
        }
        Ok(())
    }
}

/// One seeded run of the stack machine in checked mode.
///
/// `n = 0` returns a single raw copy: `{copies 1, attempts 0, depth 1, δ_0}`.
pub fn purify_streaming(delta0: f64, d: u64, n: usize, seed: Seed) -> Result<StreamStats> {
    check_delta0(delta0)?;
    StackMachine::seeded(delta0, d, n, seed)?.run()
}
