//! Stochastic nonsmooth quadratic regularization (SR2) for problems of the form
//!
//! ```text
//! minimize  F(x) = f(x) + R(x),   f(x) = (1/N) Σ f_i(x)
//! ```
//!
//! where `f` is a smooth finite sum and `R` is a proper, lower semi-continuous,
//! possibly nonconvex regularizer. Each iteration minimizes a linear model of the
//! sampled loss plus `R(x + s)` and an adaptive quadratic term `½σ‖s‖²`, then
//! accepts or rejects the step from the ratio of actual to predicted decrease.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, configuration and the
//! experiment harness live in the `sr2kit` crate.
//!
//! Layout:
//! - [`regularizer`]: `R` evaluation and the exact shifted proximal step.
//! - [`problem`]: finite-sum losses, sampling and synthetic instance generators.
//! - [`sr2`]: the solver state machine.
//! - [`baselines`]: ProxGEN-style and ProxSGD-style proximal SGD.
//! - [`diagnostics`]: pruning, sparsity tables, accuracy and stationarity surrogate.

#![cfg_attr(not(test), no_std)]
// `!(v > 0.0)` is kept on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod baselines;
pub mod diagnostics;
mod error;
pub mod linalg;
pub mod problem;
pub mod regularizer;
pub mod sr2;
pub mod trace;

pub use error::{Error, Result};
pub use problem::{Dataset, Problem, SampleSet};
pub use regularizer::{Regularizer, StepVector};
pub use sr2::{SolverConfig, SolverState};
pub use trace::{IterationRecord, Outcome, RunResult, StopReason};

/// Seeded generator used for every stochastic component.
pub type SolverRng = rand_chacha::ChaCha8Rng;

/// Builds the crate's deterministic generator from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> SolverRng {
    use rand::SeedableRng;
    SolverRng::seed_from_u64(seed)
}
