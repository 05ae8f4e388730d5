//! Magnitude pruning, sparsity tables, accuracy and the stationarity surrogate.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg;
use crate::problem::Problem;
use crate::regularizer::StepVector;

/// `α = 10⁻ᵏ`, `k = 1..=8`.
pub const DEFAULT_PRUNE_THRESHOLDS: [f64; 8] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];

/// Zeroes every coordinate with `|x_i| ≤ alpha`. Returns the pruned vector and
/// the fraction of coordinates that are zero afterwards.
pub fn prune(x: &[f64], alpha: f64) -> (Vec<f64>, f64) {
    let pruned: Vec<f64> = x
        .iter()
        .map(|v| if libm::fabs(*v) <= alpha { 0.0 } else { *v })
        .collect();
    let zeros = pruned.len() - linalg::nnz(&pruned);
    let fraction = if pruned.is_empty() {
        0.0
    } else {
        zeros as f64 / pruned.len() as f64
    };
    (pruned, fraction)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparsityReport {
    /// Percentage of exact zeros.
    pub pct_exact_zero: f64,
    /// `(τ, % of |w_i| ≤ τ)`, in the order the thresholds were given.
    pub pct_below: Vec<(f64, f64)>,
    pub nnz: usize,
    pub n: usize,
}

impl SparsityReport {
    pub fn pct_below(&self, tau: f64) -> Option<f64> {
        self.pct_below.iter().find(|(t, _)| *t == tau).map(|(_, p)| *p)
    }
}

fn percent(count: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        100.0 * count as f64 / n as f64
    }
}

pub fn sparsity_report(x: &[f64], thresholds: &[f64]) -> SparsityReport {
    let n = x.len();
    let nnz = linalg::nnz(x);
    let pct_below = thresholds
        .iter()
        .map(|&tau| {
            let count = x.iter().filter(|v| libm::fabs(**v) <= tau).count();
            (tau, percent(count, n))
        })
        .collect();
    SparsityReport {
        pct_exact_zero: percent(n - nnz, n),
        pct_below,
        nnz,
        n,
    }
}

/// Percentage of samples where `sign(prediction)` matches the `±1` label, with
/// `sign(0) = +1`.
pub fn accuracy<P: Problem + ?Sized>(problem: &P, x: &[f64]) -> Result<f64> {
    let labels = problem.labels().ok_or(Error::UnsupportedMetric("accuracy"))?;
    if x.len() != problem.dim() {
        return Err(Error::invalid("point dimension does not match the problem"));
    }
    let hits = labels
        .iter()
        .enumerate()
        .filter(|(i, y)| {
            let pred = if problem.predict(x, *i) >= 0.0 { 1.0 } else { -1.0 };
            pred == **y
        })
        .count();
    Ok(percent(hits, labels.len()))
}

/// `‖∇f(x+s) − g − σs‖`, using the full gradient at `x+s`.
///
/// The vector inside the norm lies in the Fréchet subdifferential of `F` at
/// `x+s`, so the value bounds `dist(0, ∂̂F(x+s))` from above.
pub fn stationarity_surrogate<P: Problem + ?Sized>(
    problem: &P,
    x: &[f64],
    g: &[f64],
    step: &StepVector,
    sigma: f64,
) -> Result<f64> {
    let target = linalg::add(x, &step.step);
    let mut r = problem.full_grad(&target)?;
    for ((ri, gi), si) in r.iter_mut().zip(g).zip(&step.step) {
        *ri -= gi + sigma * si;
    }
    Ok(linalg::norm(&r))
}
