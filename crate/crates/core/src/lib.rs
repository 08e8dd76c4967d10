//! Streaming purification of depolarized pure states with the swap test.
//!
//! A depolarized state `ρ(δ) = (1−δ)|ψ⟩⟨ψ| + δ·I/d` is fully described by its
//! error parameter `δ` and the dimension `d`. Two copies of `ρ(δ)` that pass a
//! swap test collapse to a single, strictly purer `ρ(δ′)`. Iterating the gadget
//! in a binary tree drives `δ` to zero while consuming a random number of raw
//! copies.
//!
//! The crate is organized as:
//!
//! - [`types`]: shared domain values ([`Dimension`], [`ErrorParam`], [`Seed`], ...).
//! - [`recurrence`]: the `(δ_i, p_i)` recurrence, iteration-count bounds and
//!   sample-complexity formulas.
//! - [`gadget`]: closed-form algebra of a single swap test on unequal inputs.
//! - [`dense`]: brute-force density-matrix swap test used as an oracle.
//! - [`streaming`]: the stack machine and the recursive protocol, with resource
//!   accounting and Monte Carlo aggregation.
//! - [`applications`]: Simon's problem with a depolarizing oracle and mixedness
//!   testing.

pub mod applications;
pub mod dense;
pub mod error;
pub mod gadget;
pub mod recurrence;
pub mod streaming;
pub mod types;

pub use error::{Error, Result};
pub use types::{fidelity_of_output, DepolarizedState, Dimension, ErrorParam, Seed};
