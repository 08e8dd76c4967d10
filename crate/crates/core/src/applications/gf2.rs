//! Linear algebra over GF(2) on bit-strings packed into `u64`.
//!
//! A string `b_1 b_2 … b_m` is stored with `b_1` as bit `m−1`, so the textual
//! form reads like the binary literal of the integer.

use crate::error::{Error, Result};

pub const MAX_BITS: usize = 64;

/// `x · y mod 2`.
#[inline]
pub fn gf2_dot(x: u64, y: u64) -> bool {
    (x & y).count_ones() % 2 == 1
}

pub fn parse_bits(s: &str) -> Result<u64> {
    if s.is_empty() || s.len() > MAX_BITS {
        return Err(Error::InvariantViolation(format!(
            "bad bit-string length: {s:?}"
        )));
    }
    s.chars().try_fold(0u64, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::InvariantViolation(format!(
            "not a bit-string: {s:?}"
        ))),
    })
}

pub fn format_bits(x: u64, m: usize) -> String {
    (0..m)
        .rev()
        .map(|j| if x >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Incrementally maintained row basis, one row per pivot bit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Gf2Basis {
    rows: Vec<u64>,
}

impl Gf2Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, mut v: u64) -> bool {
        for &r in &self.rows {
            let pivot = 63 - r.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= r;
            }
        }
        if v == 0 {
            return false;
        }
        let pivot = 63 - v.leading_zeros();
        for r in &mut self.rows {
            if *r >> pivot & 1 == 1 {
                *r ^= v;
            }
        }
        self.rows.push(v);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    /// Basis of `{x : r·x = 0 for every row r}` inside `{0,1}^m`.
    pub fn nullspace(&self, m: usize) -> Vec<u64> {
        let pivots: Vec<u32> = self.rows.iter().map(|r| 63 - r.leading_zeros()).collect();
        (0..m as u32)
            .rev()
            .filter(|f| !pivots.contains(f))
            .map(|f| {
                let mut x = 1u64 << f;
                for (&r, &p) in self.rows.iter().zip(&pivots) {
                    if r >> f & 1 == 1 {
                        x |= 1 << p;
                    }
                }
                x
            })
            .collect()
    }
}

/// Rank of the rows and a basis of their orthogonal complement in `{0,1}^m`.
pub fn gf2_rank_and_nullspace(rows: &[u64], m: usize) -> (usize, Vec<u64>) {
    let mut basis = Gf2Basis::new();
    for &r in rows {
        basis.insert(r);
    }
    (basis.rank(), basis.nullspace(m))
}
