//! Sample- and gate-complexity formulas, the embedding lower bound and the
//! reference formulas used for comparison (optimal fidelity, tomography).

use serde::Serialize;

use super::iterate_closed;
use crate::error::{check_closed, check_open, Error, Result};
use crate::streaming::StreamStats;
use crate::types::Dimension;

/// Expected raw copies consumed by `n` levels: `2^n / Π_{i=1..n} p_i`.
pub fn expected_sample_complexity(delta0: f64, dim: Dimension, n: usize) -> Result<f64> {
    dim.require_finite("expected_sample_complexity")?;
    let trace = iterate_closed(delta0, dim, n)?;
    Ok(trace.probs().iter().fold(1.0, |acc, p| acc * (2.0 / p)))
}

/// Which case of the sample-complexity theorem applies to a starting `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScBranch {
    /// `δ < 1/3`: `2δ / (ε(1 − 2δ)²)`.
    LowNoise,
    /// `1/3 ≤ δ < 2/3`: `3630 / ε`.
    MidNoise,
    /// `δ ≥ 2/3`: `4^min{1/(1−δ) + 2 ln(1/(1−δ)), (d+2) ln(1/(1−δ))} · 3630/ε`.
    HighNoise,
}

impl ScBranch {
    pub fn of(delta: f64) -> Self {
        if delta < 1.0 / 3.0 {
            ScBranch::LowNoise
        } else if delta < 2.0 / 3.0 {
            ScBranch::MidNoise
        } else {
            ScBranch::HighNoise
        }
    }
}

/// Upper bound on the expected copies needed to reach `δ′ ≤ ε` from `δ`.
///
/// Routing: `δ < 1/3` uses the low-noise bound, `[1/3, 2/3)` the constant
/// `3630/ε` bridge, and `δ ≥ 2/3` the exponential high-noise bound.
pub fn sc_theorem_bound(delta: f64, d: u64, eps: f64) -> Result<f64> {
    check_open("delta", delta, 0.0, 1.0, "(0, 1)")?;
    check_open("eps", eps, 0.0, 1.0, "(0, 1)")?;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(match ScBranch::of(delta) {
        ScBranch::LowNoise => {
            let gap = 1.0 - 2.0 * delta;
            2.0 * delta / (eps * gap * gap)
        }
        ScBranch::MidNoise => 3630.0 / eps,
        ScBranch::HighNoise => {
            let l = (1.0 / (1.0 - delta)).ln();
            let exponent = (1.0 / (1.0 - delta) + 2.0 * l).min((d as f64 + 2.0) * l);
            4f64.powf(exponent) * 3630.0 / eps
        }
    })
}

/// `⌈log₂ d⌉` controlled qubit swaps plus two Hadamards and one measurement.
pub fn gate_count(swap_attempts: u64, d: u64) -> u64 {
    let qubits = if d <= 1 {
        0
    } else {
        64 - u64::from((d - 1).leading_zeros())
    };
    swap_attempts * (qubits + 3)
}

/// Gates spent by one streaming run.
pub fn gate_count_estimate(stats: &StreamStats, d: u64) -> u64 {
    gate_count(stats.swap_attempts, d)
}

/// Copies any purifier needs to reach infidelity `ε` from `ρ(δ)` in dimension `d`:
/// `δ(d − (d−2)δ) / (d²(1−δ)²ε)`.
pub fn lower_bound_samples(delta: f64, d: u64, eps: f64) -> Result<f64> {
    check_open("delta", delta, 0.0, 1.0, "(0, 1)")?;
    check_open("eps", eps, 0.0, 1.0, "(0, 1)")?;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let df = d as f64;
    let k = 1.0 - delta;
    Ok(delta * (df - (df - 2.0) * delta) / (df * df * k * k * eps))
}

/// Leading-order optimal fidelity from `N` copies:
/// `1 − ((d−1)/d)·δ/((1−δ)²(N+1))`. The `O(1/N²)` remainder is dropped.
pub fn optimal_fidelity_asymptotic(delta: f64, d: u64, copies: u64) -> Result<f64> {
    check_open("delta", delta, 0.0, 1.0, "(0, 1)")?;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if copies == 0 {
        return Err(Error::OutOfRange {
            name: "N",
            value: 0.0,
            expected: "N >= 1",
        });
    }
    let df = d as f64;
    let k = 1.0 - delta;
    Ok(1.0 - (df - 1.0) / df * delta / (k * k * (copies as f64 + 1.0)))
}

/// Copies at which the leading-order optimal fidelity reaches `1 − ε`:
/// `((d−1)/d)·δ/(ε(1−δ)²)`.
pub fn optimal_samples_asymptotic(delta: f64, d: u64, eps: f64) -> Result<f64> {
    check_open("delta", delta, 0.0, 1.0, "(0, 1)")?;
    check_open("eps", eps, 0.0, 1.0, "(0, 1)")?;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let df = d as f64;
    let k = 1.0 - delta;
    Ok((df - 1.0) / df * delta / (eps * k * k))
}

/// Multiplier of the tomography sample-count orders. Only the orders are
/// known, so this is a convention, not a derived constant.
pub const TOMOGRAPHY_CONSTANT: f64 = 1.0;

/// Tomography-then-prepare sample estimate with the conventional constant.
pub fn tomography_sample_estimate(d: u64, delta: f64, eps: f64, collective: bool) -> Result<f64> {
    tomography_sample_estimate_with(d, delta, eps, collective, TOMOGRAPHY_CONSTANT)
}

/// With accuracy `η = (1−δ)ε²/2`: `C·d²/η²` for collective measurements,
/// `C·d³/η²` for single-copy measurements.
pub fn tomography_sample_estimate_with(
    d: u64,
    delta: f64,
    eps: f64,
    collective: bool,
    constant: f64,
) -> Result<f64> {
    check_open("delta", delta, 0.0, 1.0, "(0, 1)")?;
    check_open("eps", eps, 0.0, 1.0, "(0, 1)")?;
    check_closed(
        "constant",
        constant,
        f64::MIN_POSITIVE,
        f64::MAX,
        "(0, inf)",
    )?;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let df = d as f64;
    let eta = (1.0 - delta) * eps * eps / 2.0;
    let power = if collective { df * df } else { df * df * df };
    Ok(constant * power / (eta * eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::success_prob;

    fn fin(d: u64) -> Dimension {
        Dimension::finite(d).unwrap()
    }

    #[test]
    fn sc_examples() {
        assert_eq!(expected_sample_complexity(0.4, fin(3), 0).unwrap(), 1.0);
        let one = expected_sample_complexity(0.4, fin(3), 1).unwrap();
        assert!((one - 2.0 / success_prob(0.4, fin(3))).abs() < 1e-14);
        assert!(expected_sample_complexity(0.4, Dimension::Infinite, 2).is_err());
    }

    #[test]
    fn theorem_bound_examples() {
        let low = sc_theorem_bound(0.25, 2, 1e-3).unwrap();
        assert!((low - 2000.0).abs() < 1e-9);
        assert!((sc_theorem_bound(0.5, 2, 1e-3).unwrap() - 3.63e6).abs() < 1e-6);
        assert!((sc_theorem_bound(1.0 / 3.0, 7, 1e-3).unwrap() - 3.63e6).abs() < 1e-6);
        let hi = sc_theorem_bound(0.9, 2, 1e-2).unwrap();
        let want = 4f64.powf(4.0 * 10f64.ln()) * 363_000.0;
        assert!(((hi - want) / want).abs() < 1e-12);
        assert!(sc_theorem_bound(0.5, 2, 0.0).is_err());
        assert!(sc_theorem_bound(0.5, 2, 1.0).is_err());
    }

    #[test]
    fn theorem_bound_high_branch_takes_the_smaller_exponent() {
        // At large d the dimension-free exponent wins.
        let l = 10f64.ln();
        let b = sc_theorem_bound(0.9, 1000, 0.1).unwrap();
        assert!((b - 4f64.powf(10.0 + 2.0 * l) * 36_300.0).abs() / b < 1e-12);
    }

    #[test]
    fn gate_examples() {
        assert_eq!(gate_count(1, 2), 4);
        assert_eq!(gate_count(10, 16), 70);
        assert_eq!(gate_count(0, 5), 0);
        assert_eq!(gate_count(1, 5), 6);
        assert_eq!(gate_count(1, 17), 8);
    }

    #[test]
    fn lower_bound_examples() {
        for eps in [0.1, 0.01] {
            assert!((lower_bound_samples(0.5, 2, eps).unwrap() - 1.0 / eps).abs() < 1e-9);
        }
        assert!((lower_bound_samples(0.5, 4, 0.01).unwrap() - 37.5).abs() < 1e-12);
        assert!(lower_bound_samples(1e-12, 4, 0.01).unwrap() < 1e-9);
    }

    #[test]
    fn optimal_fidelity_examples() {
        assert!((optimal_fidelity_asymptotic(0.5, 2, 99).unwrap() - 0.99).abs() < 1e-15);
        for n in [1u64, 10, 1000] {
            let delta: f64 = 0.3;
            let qubit = 1.0 - delta / (2.0 * (n as f64 + 1.0) * (1.0 - delta).powi(2));
            assert!((optimal_fidelity_asymptotic(delta, 2, n).unwrap() - qubit).abs() < 1e-15);
        }
        assert!(optimal_fidelity_asymptotic(0.3, 5, u64::MAX).unwrap() > 1.0 - 1e-15);
        let n = optimal_samples_asymptotic(0.5, 2, 0.01).unwrap();
        assert!((optimal_fidelity_asymptotic(0.5, 2, n as u64).unwrap() - 0.99).abs() < 1e-3);
    }

    #[test]
    fn tomography_examples() {
        let c = tomography_sample_estimate(2, 0.5, 0.1, true).unwrap();
        assert!((c - 640_000.0).abs() < 1e-6);
        let s = tomography_sample_estimate(2, 0.5, 0.1, false).unwrap();
        assert!((s - 2.0 * c).abs() < 1e-6);
        let mut prev = f64::INFINITY;
        for k in 1..100 {
            let v = tomography_sample_estimate(3, 0.2, k as f64 / 100.0, true).unwrap();
            assert!(v < prev);
            prev = v;
        }
        let scaled = tomography_sample_estimate_with(2, 0.5, 0.1, true, 3.0).unwrap();
        assert!((scaled - 3.0 * c).abs() < 1e-6);
    }
}
