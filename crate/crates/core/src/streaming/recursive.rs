use super::{check_delta0, CoinSource, LevelTables, RngCoins, StreamStats};
use crate::error::Result;
use crate::types::Seed;

struct Recursion<'a, C> {
    tables: &'a LevelTables,
    coins: C,
    live: usize,
    stats: StreamStats,
}

impl<C: CoinSource> Recursion<'_, C> {
    /// `Purify(level)`: a raw copy at level 0, otherwise two `Purify(level−1)`
    /// outputs fed to the swap test until it succeeds.
    fn purify(&mut self, level: usize) {
        if level == 0 {
            self.stats.copies_consumed += 1;
            self.live += 1;
            self.stats.max_stack_depth = self.stats.max_stack_depth.max(self.live);
            return;
        }
        let idx = level - 1;
        loop {
            self.purify(idx);
            self.purify(idx);
            self.stats.swap_attempts += 1;
            self.stats.level_attempts[idx] += 1;
            if self.coins.flip(self.tables.probs[idx]) {
                self.stats.level_successes[idx] += 1;
                self.live -= 1;
                return;
            }
            self.live -= 2;
        }
    }
}

/// The recursive formulation driven by the same coin stream as
/// [`purify_streaming`](super::purify_streaming).
///
/// The swap tests happen in the same order in both formulations, so a
/// shared seed gives identical statistics; `max_stack_depth` counts the
/// outputs held by pending calls.
pub fn purify_recursive(delta0: f64, d: u64, n: usize, seed: Seed) -> Result<StreamStats> {
    check_delta0(delta0)?;
    purify_recursive_with(delta0, d, n, RngCoins::from_seed(seed))
}

pub(crate) fn purify_recursive_with<C: CoinSource>(
    delta0: f64,
    d: u64,
    n: usize,
    coins: C,
) -> Result<StreamStats> {
    let tables = LevelTables::new(delta0, d, n)?;
    if n == 0 {
        return Ok(StreamStats::raw_copy(delta0));
    }
    let mut r = Recursion {
        tables: &tables,
        coins,
        live: 0,
        stats: StreamStats {
            copies_consumed: 0,
            swap_attempts: 0,
            max_stack_depth: 0,
            final_delta: delta0,
            gate_count: 0,
            level_attempts: vec![0; n],
            level_successes: vec![0; n],
        },
    };
    r.purify(n);
    Ok(tables.finish(r.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::streaming::{purify_streaming, RiggedCoins, StackMachine};

    #[test]
    fn zero_levels() {
        let s = purify_recursive(0.2, 5, 0, Seed::new(3, 0)).unwrap();
        assert_eq!(s, StreamStats::raw_copy(0.2));
    }

    #[test]
    fn always_success_tree() {
        let s = purify_recursive_with(0.3, 2, 2, RiggedCoins::always(true)).unwrap();
        assert_eq!(s.copies_consumed, 4);
        assert_eq!(s.swap_attempts, 3);
        assert_eq!(s.max_stack_depth, 3);
    }

    #[test]
    fn same_coins_same_stats_as_the_stack_machine() {
        let pattern: Vec<bool> = (0..200).map(|i| (i * 7919 % 13) < 9).collect();
        for n in 1..6 {
            let a = purify_recursive_with(0.4, 3, n, RiggedCoins::sequence(pattern.clone(), true))
                .unwrap();
            let b = StackMachine::new(0.4, 3, n, RiggedCoins::sequence(pattern.clone(), true))
                .unwrap()
                .run()
                .unwrap();
            assert_eq!(a, b, "n = {n}");
        }
        for k in 0..50 {
            let seed = Seed::new(k, 1);
            assert_eq!(
                purify_recursive(0.3, 2, 5, seed).unwrap(),
                purify_streaming(0.3, 2, 5, seed).unwrap()
            );
        }
    }
}
