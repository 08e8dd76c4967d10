//! One swap-test gadget acting on `ρ(δ₁) ⊗ ρ(δ₂)`.
//!
//! The inputs share the same pure component, so the outcome-0 branch is again
//! of the form `ρ(δ′)`. All formulas are written in `1/d` so that the
//! `d → ∞` limit is just `1/d = 0`.

use serde::Serialize;

use crate::error::{check_closed, check_open, Result};
use crate::types::Dimension;

/// Result of running the gadget to its first success.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GadgetOutcome {
    pub success_prob: f64,
    pub output_delta: f64,
    /// Expected copies of *each* input consumed, `2 / success_prob`.
    pub expected_copies_each: f64,
}

/// `((1 + 1/d) + (1 − 1/d)(1−δ₁)(1−δ₂)) / 2`.
pub fn swap_success_prob(delta1: f64, delta2: f64, dim: Dimension) -> f64 {
    let inv = dim.inv();
    0.5 * ((1.0 + inv) + (1.0 - inv) * (1.0 - delta1) * (1.0 - delta2))
}

/// Error parameter of the outcome-0 state:
/// `((δ₁+δ₂)/2 + δ₁δ₂/d) / ((1 + 1/d) + (1 − 1/d)(1−δ₁)(1−δ₂))`.
pub fn swap_output_delta(delta1: f64, delta2: f64, dim: Dimension) -> f64 {
    let inv = dim.inv();
    let num = 0.5 * (delta1 + delta2) + delta1 * delta2 * inv;
    num / (2.0 * swap_success_prob(delta1, delta2, dim))
}

pub fn swap_gadget(delta1: f64, delta2: f64, dim: Dimension) -> Result<GadgetOutcome> {
    check_closed("delta1", delta1, 0.0, 1.0, "[0, 1]")?;
    check_closed("delta2", delta2, 0.0, 1.0, "[0, 1]")?;
    let p = swap_success_prob(delta1, delta2, dim);
    Ok(GadgetOutcome {
        success_prob: p,
        output_delta: swap_output_delta(delta1, delta2, dim),
        expected_copies_each: 2.0 / p,
    })
}

/// `(1 − δ)·2δ(d − (d−1)δ) / (d + 2δ(d − (d−1)δ))`, divided through by `d`.
fn improvement_margin(lo: f64, inv: f64) -> f64 {
    let u = 2.0 * lo * (1.0 - (1.0 - inv) * lo);
    (1.0 - lo) * u / (1.0 + u)
}

/// Whether the gadget output is strictly purer than both inputs.
///
/// Arguments may come in either order. Points on the boundary are not
/// improving.
pub fn improves_both(delta1: f64, delta2: f64, dim: Dimension) -> Result<bool> {
    check_open("delta1", delta1, 0.0, 1.0, "(0, 1)")?;
    check_open("delta2", delta2, 0.0, 1.0, "(0, 1)")?;
    let (lo, hi) = if delta1 <= delta2 {
        (delta1, delta2)
    } else {
        (delta2, delta1)
    };
    Ok(hi - lo < improvement_margin(lo, dim.inv()))
}

/// Supremum of the `δ₂ ≥ δ₁` for which the gadget improves both inputs,
/// capped at 1.
pub fn region_boundary(delta1: f64, dim: Dimension) -> Result<f64> {
    check_open("delta1", delta1, 0.0, 1.0, "(0, 1)")?;
    Ok((delta1 + improvement_margin(delta1, dim.inv())).min(1.0))
}
