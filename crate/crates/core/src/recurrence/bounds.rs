//! Closed-form bounds on the number of levels the recurrence needs.
//!
//! Three regimes are bounded separately: `δ ≤ 1/2` decays geometrically
//! ([`eta_bound`]), `2/3 → 1/3` takes at most five levels, and the slow
//! high-noise phase `δ > 2/3` is bounded through the time-reversed sequence
//! `μ_i = κ_{i*−i}` ([`h_inf`], [`mu_inf_sequence`], [`n_upper_inf`],
//! [`n_upper_finite_d`]).

use serde::Serialize;

use crate::error::{check_open, Error, Result};

/// `δ / (2^i (1 − 2δ) + 2δ)`, an upper bound on `δ_i` whenever `δ_0 = δ ≤ 1/2`.
pub fn eta_bound(delta: f64, i: u32) -> Result<f64> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::OutOfRange {
            name: "delta",
            value: delta,
            expected: "[0, 1/2]",
        });
    }
    let scale = 2f64.powi(i.min(i32::MAX as u32) as i32);
    Ok(delta / (scale * (1.0 - 2.0 * delta) + 2.0 * delta))
}

#[cfg(test)]
/// `g(x) = (x + x²)/(1 + x²)`, the κ-update in the infinite-dimensional limit.
#[inline]
pub(crate) fn g_inf(x: f64) -> f64 {
    (x + x * x) / (1.0 + x * x)
}

/// Inverse of `g` on `[0, 1.2]`, in the cancellation-free form
/// `2y / (1 + √(1 + 4y(1 − y)))`.
#[inline]
pub(crate) fn h_inf_unchecked(y: f64) -> f64 {
    2.0 * y / (1.0 + (1.0 + 4.0 * y * (1.0 - y)).sqrt())
}

/// Inverse of the infinite-dimensional κ-update, `h(y) = (−1 + √(1 + 4y(1−y))) / (2(1−y))`,
/// restricted to `y ∈ (0, 1/3)`.
pub fn h_inf(y: f64) -> Result<f64> {
    check_open("y", y, 0.0, 1.0 / 3.0, "(0, 1/3)")?;
    Ok(h_inf_unchecked(y))
}

/// `μ_0, …, μ_n` with `μ_i = h(μ_{i−1})`.
///
/// `μ_0` may sit on the closed endpoint `1/3`; `h` is well defined there.
pub fn mu_inf_sequence(mu0: f64, n: usize) -> Result<Vec<f64>> {
    if !(mu0 > 0.0 && mu0 <= 1.0 / 3.0) {
        return Err(Error::OutOfRange {
            name: "mu0",
            value: mu0,
            expected: "(0, 1/3]",
        });
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(mu0);
    let mut mu = mu0;
    for _ in 0..n {
        mu = h_inf_unchecked(mu);
        out.push(mu);
    }
    Ok(out)
}

/// `1/i + 2 ln(i)/i²`.
pub fn mu_inf_bound(i: u64) -> Result<f64> {
    if i == 0 {
        return Err(Error::OutOfRange {
            name: "i",
            value: 0.0,
            expected: "i >= 1",
        });
    }
    let x = i as f64;
    Ok(1.0 / x + 2.0 * x.ln() / (x * x))
}

/// `1/(1−δ) + 2 ln(1/(1−δ))`, the real-valued level bound for `d = ∞`.
pub fn n_star_inf(delta: f64) -> Result<f64> {
    check_open("delta", delta, 2.0 / 3.0, 1.0, "(2/3, 1)")?;
    let r = 1.0 / (1.0 - delta);
    Ok(r + 2.0 * r.ln())
}

/// `⌈1/(1−δ) + 2 ln(1/(1−δ))⌉`. With `n` at least this, `δ_{n+1} < 2/3` for every `d`.
pub fn n_upper_inf(delta: f64) -> Result<usize> {
    Ok(n_star_inf(delta)?.ceil() as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteDCoefficients {
    pub d: u64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Coefficients of the finite-`d` inverse-recurrence inequality.
///
/// `a = (d+1)/(d+2)`, `b = (d−2)/(d+2)`, `c = d³/(d+2)³` (or `1/7` at `d = 2`),
/// `α = (d−2)(d+1)/(d+2)` and
/// `β = α − 2ca·ln(min{d, n*}) + 3 − 7.2ca` with `n* = 1/(1−δ) + 2 ln(1/(1−δ))`.
pub fn finite_d_coeffs(d: u64, delta: f64) -> Result<FiniteDCoefficients> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let n_star = n_star_inf(delta)?;
    let df = d as f64;
    let a = (df + 1.0) / (df + 2.0);
    let b = (df - 2.0) / (df + 2.0);
    let c = if d == 2 {
        1.0 / 7.0
    } else {
        (df / (df + 2.0)).powi(3)
    };
    let alpha = (df - 2.0) * (df + 1.0) / (df + 2.0);
    let beta = alpha - 2.0 * c * a * df.min(n_star).ln() + 3.0 - 7.2 * c * a;
    Ok(FiniteDCoefficients {
        d,
        a,
        b,
        c,
        alpha,
        beta,
    })
}

/// Level count after which `δ_n < 2/3` at finite `d`.
///
/// `d = 2`: `⌈ln(1/((1−δ)β)) / ln(4/3)⌉`.
/// `d ≥ 3`: `⌈(ln(1 + 1/(α(1−δ))) + ln(α/β)) / ln(1 + 1/(d+1))⌉`.
pub fn n_upper_finite_d(delta: f64, d: u64) -> Result<usize> {
    let k = finite_d_coeffs(d, delta)?;
    let kappa = 1.0 - delta;
    let x = if d == 2 {
        (1.0 / (kappa * k.beta)).ln() / (4.0f64 / 3.0).ln()
    } else {
        ((1.0 + 1.0 / (k.alpha * kappa)).ln() + (k.alpha / k.beta).ln())
            / (1.0 + 1.0 / (d as f64 + 1.0)).ln()
    };
    Ok(x.ceil().max(0.0) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_examples() {
        for i in [0, 1, 7, 60] {
            assert_eq!(eta_bound(0.5, i).unwrap(), 0.5);
        }
        assert!((eta_bound(1.0 / 3.0, 1).unwrap() - 0.25).abs() < 1e-16);
        assert!((eta_bound(1.0 / 3.0, 0).unwrap() - 1.0 / 3.0).abs() < 1e-16);
        assert!(eta_bound(0.51, 3).is_err());
    }

    #[test]
    fn eta_matches_its_own_recurrence() {
        // η_i = η_{i−1} / (2 − 2η_{i−1})
        let mut eta = 0.2;
        for i in 1..30 {
            eta /= 2.0 - 2.0 * eta;
            assert!((eta - eta_bound(0.2, i).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn h_inverts_g() {
        let y = g_inf(0.2);
        assert!((y - 0.24 / 1.04).abs() < 1e-16);
        assert!((h_inf(y).unwrap() - 0.2).abs() < 1e-12);
        assert!(h_inf(1e-300).unwrap() > 0.0 && h_inf(1e-300).unwrap() < 1e-299);
        assert!(h_inf(1.0 / 3.0).is_err());
        assert!(h_inf(0.0).is_err());
    }

    #[test]
    fn h_closed_form_agrees_with_textbook_form() {
        for k in 1..333 {
            let y = k as f64 / 1000.0;
            let textbook = (-1.0 + (1.0 + 4.0 * y * (1.0 - y)).sqrt()) / (2.0 * (1.0 - y));
            assert!((h_inf(y).unwrap() - textbook).abs() < 1e-14);
        }
    }

    #[test]
    fn mu_sequence_checkpoints() {
        let mu = mu_inf_sequence(1.0 / 3.0, 10).unwrap();
        assert!(mu[1] <= 0.2808);
        assert!(mu[2] <= 0.2396);
        assert!(mu[10] <= 0.1);
        assert!(mu_inf_sequence(0.34, 1).is_err());
    }

    #[test]
    fn mu_bound_examples() {
        assert_eq!(mu_inf_bound(1).unwrap(), 1.0);
        assert!((mu_inf_bound(2).unwrap() - (0.5 + 2f64.ln() / 2.0)).abs() < 1e-15);
        assert!((mu_inf_bound(2).unwrap() - 0.8466).abs() < 1e-4);
        assert!((mu_inf_bound(100).unwrap() - 0.010921).abs() < 1e-6);
        assert!(mu_inf_bound(0).is_err());
    }

    #[test]
    fn n_upper_inf_examples() {
        assert_eq!(n_upper_inf(0.9).unwrap(), 15);
        assert_eq!(n_upper_inf(0.99).unwrap(), 110);
        assert!(n_upper_inf(2.0 / 3.0).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let k2 = finite_d_coeffs(2, 0.9).unwrap();
        assert_eq!(k2.alpha, 0.0);
        assert!((k2.beta - 2.08).abs() < 0.005);
        let k4 = finite_d_coeffs(4, 0.9).unwrap();
        assert!((k4.alpha - 1.67).abs() < 0.005);
        assert!((k4.beta - 2.20).abs() < 0.005);
        let k3 = finite_d_coeffs(3, 0.9).unwrap();
        assert!((k3.a - 0.8).abs() < 1e-15);
        assert!((k3.b - 0.2).abs() < 1e-15);
        assert!((k3.c - 27.0 / 125.0).abs() < 1e-15);
        let k5 = finite_d_coeffs(5, 0.9).unwrap();
        assert!((k5.alpha - 2.57).abs() < 0.005 && (k5.beta - 2.32).abs() < 0.005);
    }

    #[test]
    fn n_upper_finite_d_examples() {
        assert_eq!(n_upper_finite_d(0.9, 2).unwrap(), 6);
        let approx = 3.476 * 10f64.ln() - 2.546;
        assert_eq!(approx.ceil() as usize, 6);
        let inf = n_upper_inf(0.99).unwrap() as i64;
        let big = n_upper_finite_d(0.99, 1024).unwrap() as i64;
        assert!((big - inf).abs() <= 3, "{big} vs {inf}");
        assert!(n_upper_finite_d(0.6, 3).is_err());
    }
}
