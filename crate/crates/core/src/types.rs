//! Shared domain values.
//!
//! Everything here is an immutable `Copy` value and can be shared freely
//! between worker threads.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{check_closed, Error, Result};

/// Qudit dimension.
///
/// `Finite(d)` must satisfy `d >= 2`; use [`Dimension::finite`] to construct a
/// checked value. `Infinite` is the formal `d → ∞` limit and is understood only
/// by the analytic recurrence and gadget formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Finite(u64),
    Infinite,
}

impl Dimension {
    pub fn finite(d: u64) -> Result<Self> {
        if d >= 2 {
            Ok(Dimension::Finite(d))
        } else {
            Err(Error::InvalidDimension(d))
        }
    }

    /// `1/d`, with `0` for the infinite limit.
    #[inline]
    pub fn inv(self) -> f64 {
        match self {
            Dimension::Finite(d) => 1.0 / d as f64,
            Dimension::Infinite => 0.0,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dimension::Finite(_))
    }

    /// The integer dimension, rejecting the infinite limit and `d < 2`.
    pub fn require_finite(self, what: &'static str) -> Result<u64> {
        match self {
            Dimension::Finite(d) if d >= 2 => Ok(d),
            Dimension::Finite(d) => Err(Error::InvalidDimension(d)),
            Dimension::Infinite => Err(Error::InfiniteDimension(what)),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Dimension::Infinite),
            _ => {
                let d: u64 = t.parse().map_err(|_| Error::InvalidDimension(0))?;
                Dimension::finite(d)
            }
        }
    }
}

impl Serialize for Dimension {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dimension::Finite(d) => serializer.serialize_u64(*d),
            Dimension::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Depolarization weight `δ ∈ [0, 1]`.
///
/// Out-of-range values are rejected, never clamped.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct ErrorParam(f64);

impl ErrorParam {
    pub fn new(delta: f64) -> Result<Self> {
        check_closed("delta", delta, 0.0, 1.0, "[0, 1]").map(ErrorParam)
    }

    #[inline]
    pub fn delta(self) -> f64 {
        self.0
    }

    /// `κ = 1 − δ`.
    #[inline]
    pub fn kappa(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for ErrorParam {
    type Error = Error;

    fn try_from(delta: f64) -> Result<Self> {
        ErrorParam::new(delta)
    }
}

/// `ρ(δ)` in a finite dimension. The pure component `|ψ⟩` is never stored:
/// every protocol-level quantity depends only on `(δ, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DepolarizedState {
    delta: ErrorParam,
    dim: Dimension,
}

impl DepolarizedState {
    pub fn new(delta: ErrorParam, dim: Dimension) -> Result<Self> {
        dim.require_finite("DepolarizedState")?;
        Ok(Self { delta, dim })
    }

    pub fn delta(&self) -> ErrorParam {
        self.delta
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// Overlap `⟨ψ|ρ(δ)|ψ⟩` with the target.
    pub fn fidelity(&self) -> f64 {
        1.0 - (1.0 - self.dim.inv()) * self.delta.delta()
    }
}

/// Fidelity of `ρ(δ)` with its pure component: `1 − (1 − 1/d)·δ`.
pub fn fidelity_of_output(delta: ErrorParam, dim: Dimension) -> Result<f64> {
    let d = dim.require_finite("fidelity_of_output")?;
    Ok(1.0 - (1.0 - 1.0 / d as f64) * delta.delta())
}

/// Identifies one reproducible PRNG stream.
///
/// The generator is ChaCha8 keyed by `root_seed`, with `stream_index` selecting
/// one of its 2^64 independent streams. Equal seeds reproduce runs bit-for-bit
/// on every platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Seed {
    pub root_seed: u64,
    pub stream_index: u64,
}

impl Seed {
    pub const fn new(root_seed: u64, stream_index: u64) -> Self {
        Self {
            root_seed,
            stream_index,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.root_seed);
        rng.set_stream(self.stream_index);
        rng
    }

    /// Child stream for sub-task `index` (a Monte Carlo run, a trial, ...).
    ///
    /// Children share the root seed; the stream index is a SplitMix64 mix of
    /// the parent stream and the child index.
    pub fn derive(&self, index: u64) -> Seed {
        let mixed =
            splitmix64(self.stream_index ^ splitmix64(index.wrapping_add(0x5851_f42d_4c95_7f2d)));
        Seed::new(self.root_seed, mixed)
    }
}

impl From<u64> for Seed {
    fn from(root_seed: u64) -> Self {
        Seed::new(root_seed, 0)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
