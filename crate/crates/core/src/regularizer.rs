//! Regularizers and the shifted proximal step
//!
//! ```text
//! s ∈ argmin_s  gᵀs + ½σ‖s‖² + R(x + s)
//! ```
//!
//! solved in closed form around the unconstrained target `u = x − g/σ`.
//! All variants are bounded below by zero, so the subproblem is bounded for
//! every `σ > 0`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regularizer {
    Zero,
    /// `λ‖x‖₁`
    L1 { lambda: f64 },
    /// `λ‖x‖₀`
    L0 { lambda: f64 },
    /// Indicator of `{x : ‖x‖₀ ≤ k}`.
    L0Ball { k: usize },
}

/// Solution of one shifted proximal subproblem.
#[derive(Debug, Clone, PartialEq)]
pub struct StepVector {
    pub step: Vec<f64>,
    /// `Δψ = R(x) − gᵀs − R(x+s)`.
    pub model_decrease: f64,
    /// `R(x+s)`.
    pub reg_at_target: f64,
}

impl StepVector {
    pub fn is_zero(&self) -> bool {
        self.step.iter().all(|v| *v == 0.0)
    }

    pub fn norm_sq(&self) -> f64 {
        linalg::norm_sq(&self.step)
    }
}

/// How the gradient enters the step: `−g/σ` for SR2, `−α·g` for fixed-step
/// baselines (keeps the Zero-regularizer update bitwise equal to plain SG).
#[derive(Debug, Clone, Copy)]
enum Scale {
    Sigma(f64),
    StepSize(f64),
}

impl Scale {
    fn grad_step(self, g: f64) -> f64 {
        match self {
            Scale::Sigma(sigma) => -g / sigma,
            Scale::StepSize(alpha) => -(alpha * g),
        }
    }

    /// `c / σ`, i.e. `c·α`.
    fn times_inverse(self, c: f64) -> f64 {
        match self {
            Scale::Sigma(sigma) => c / sigma,
            Scale::StepSize(alpha) => c * alpha,
        }
    }
}

impl Regularizer {
    pub fn l1(lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Regularizer::L1 { lambda })
    }

    pub fn l0(lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Regularizer::L0 { lambda })
    }

    pub fn l0_ball(k: usize) -> Self {
        Regularizer::L0Ball { k }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Regularizer::Zero => "zero",
            Regularizer::L1 { .. } => "l1",
            Regularizer::L0 { .. } => "l0",
            Regularizer::L0Ball { .. } => "l0ball",
        }
    }

    /// Penalty weight (`k` for the ball, `0` for Zero).
    pub fn weight(&self) -> f64 {
        match *self {
            Regularizer::Zero => 0.0,
            Regularizer::L1 { lambda } | Regularizer::L0 { lambda } => lambda,
            Regularizer::L0Ball { k } => k as f64,
        }
    }

    pub fn is_convex(&self) -> bool {
        matches!(self, Regularizer::Zero | Regularizer::L1 { .. })
    }

    pub fn is_separable(&self) -> bool {
        !matches!(self, Regularizer::L0Ball { .. })
    }

    /// `R(x)`, possibly `+∞`.
    pub fn value(&self, x: &[f64]) -> f64 {
        match *self {
            Regularizer::Zero => 0.0,
            Regularizer::L1 { lambda } => lambda * x.iter().map(|v| libm::fabs(*v)).sum::<f64>(),
            Regularizer::L0 { lambda } => lambda * linalg::nnz(x) as f64,
            Regularizer::L0Ball { k } => {
                if linalg::nnz(x) <= k {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// Per-coordinate penalty for separable variants.
    pub fn scalar_value(&self, v: f64) -> Option<f64> {
        match *self {
            Regularizer::Zero => Some(0.0),
            Regularizer::L1 { lambda } => Some(lambda * libm::fabs(v)),
            Regularizer::L0 { lambda } => Some(if v != 0.0 { lambda } else { 0.0 }),
            Regularizer::L0Ball { .. } => None,
        }
    }

    /// Global minimizer of `gᵀs + ½σ‖s‖² + R(x+s)`.
    pub fn shifted_prox(&self, x: &[f64], g: &[f64], sigma: f64) -> Result<StepVector> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::invalid("sigma must be positive and finite"));
        }
        self.prox_scaled(x, g, Scale::Sigma(sigma))
    }

    /// Same subproblem with `σ = 1/alpha`, but the gradient step is formed as
    /// `−alpha·g` rather than `−g/σ`.
    pub fn shifted_prox_step(&self, x: &[f64], g: &[f64], alpha: f64) -> Result<StepVector> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::invalid("step size must be positive and finite"));
        }
        self.prox_scaled(x, g, Scale::StepSize(alpha))
    }

    /// The prox point `x + s` alone. Unlike [`Regularizer::shifted_prox`] this
    /// does not require `R(x) < ∞`: the minimization only involves `R(x+s)`.
    pub fn prox_target(&self, x: &[f64], g: &[f64], sigma: f64) -> Result<Vec<f64>> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::invalid("sigma must be positive and finite"));
        }
        let step = self.raw_step(x, g, Scale::Sigma(sigma))?;
        Ok(linalg::add(x, &step))
    }

    fn prox_scaled(&self, x: &[f64], g: &[f64], scale: Scale) -> Result<StepVector> {
        let reg_at_anchor = self.value(x);
        if reg_at_anchor == f64::INFINITY {
            return Err(Error::InfeasibleAnchor);
        }
        let step = self.raw_step(x, g, scale)?;
        let target = linalg::add(x, &step);
        let reg_at_target = self.value(&target);
        let model_decrease = reg_at_anchor - linalg::dot(g, &step) - reg_at_target;
        Ok(StepVector {
            step,
            model_decrease,
            reg_at_target,
        })
    }

    fn raw_step(&self, x: &[f64], g: &[f64], scale: Scale) -> Result<Vec<f64>> {
        if x.len() != g.len() {
            return Err(Error::invalid("x and g have different lengths"));
        }
        let n = x.len();
        let mut step = Vec::with_capacity(n);
        match *self {
            Regularizer::Zero => step.extend(g.iter().map(|gi| scale.grad_step(*gi))),
            Regularizer::L1 { lambda } => {
                let thr = scale.times_inverse(lambda);
                for (xi, gi) in x.iter().zip(g) {
                    let gs = scale.grad_step(*gi);
                    let u = xi + gs;
                    let s = if libm::fabs(u) > thr {
                        // (x+s) = sign(u)(|u| − thr)
                        gs - libm::copysign(thr, u)
                    } else {
                        -xi
                    };
                    step.push(s);
                }
            }
            Regularizer::L0 { lambda } => {
                let thr = libm::sqrt(scale.times_inverse(2.0 * lambda));
                for (xi, gi) in x.iter().zip(g) {
                    let gs = scale.grad_step(*gi);
                    let u = xi + gs;
                    step.push(if libm::fabs(u) > thr { gs } else { -xi });
                }
            }
            Regularizer::L0Ball { k } => {
                if k > n {
                    return Err(Error::invalid("L0 ball radius k exceeds the dimension"));
                }
                let mut target: Vec<f64> =
                    x.iter().zip(g).map(|(xi, gi)| xi + scale.grad_step(*gi)).collect();
                let mut order: Vec<usize> = (0..n).collect();
                // stable: equal magnitudes keep ascending index order
                order.sort_by(|&a, &b| {
                    libm::fabs(target[b])
                        .partial_cmp(&libm::fabs(target[a]))
                        .unwrap_or(Ordering::Equal)
                });
                for &i in &order[k..] {
                    target[i] = 0.0;
                }
                for i in 0..n {
                    step.push(if target[i] == 0.0 {
                        -x[i]
                    } else {
                        scale.grad_step(g[i])
                    });
                }
            }
        }
        Ok(step)
    }

    /// Shifted model `gᵀs + ½σ‖s‖² + R(x+s)`.
    pub fn model_value(&self, x: &[f64], g: &[f64], sigma: f64, s: &[f64]) -> f64 {
        let target = linalg::add(x, s);
        linalg::dot(g, s) + 0.5 * sigma * linalg::norm_sq(s) + self.value(&target)
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("regularization weight must be finite and nonnegative"))
    }
}

impl fmt::Display for Regularizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regularizer::Zero => write!(f, "zero"),
            Regularizer::L1 { lambda } => write!(f, "l1({lambda})"),
            Regularizer::L0 { lambda } => write!(f, "l0({lambda})"),
            Regularizer::L0Ball { k } => write!(f, "l0ball({k})"),
        }
    }
}

/// Brute-force certifiers for [`Regularizer::shifted_prox`]. They share no code
/// with the closed forms above.
pub mod oracle {
    use super::*;

    /// Scalar objective `g·s + ½σs² + r(x+s)`.
    pub fn scalar_objective(reg: &Regularizer, x: f64, g: f64, sigma: f64, s: f64) -> Result<f64> {
        let r = reg
            .scalar_value(x + s)
            .ok_or(Error::UnsupportedOracle(reg.name()))?;
        Ok(g * s + 0.5 * sigma * s * s + r)
    }

    /// Minimizes the scalar objective over the grid `lo, lo+step, …, hi`.
    ///
    /// The point `s = −x` (where `x+s = 0` and the penalty drops) is added to the
    /// candidates, since a finite grid generally misses it. Ties keep the first
    /// candidate seen.
    pub fn prox_grid_oracle(
        reg: &Regularizer,
        x: f64,
        g: f64,
        sigma: f64,
        lo: f64,
        hi: f64,
        step: f64,
    ) -> Result<f64> {
        if !reg.is_separable() {
            return Err(Error::UnsupportedOracle(reg.name()));
        }
        if !(lo < hi) || !(step > 0.0) || !(sigma > 0.0) {
            return Err(Error::invalid("grid oracle needs lo < hi, step > 0, sigma > 0"));
        }
        let count = libm::floor((hi - lo) / step) as usize;
        let mut best_s = -x;
        let mut best = scalar_objective(reg, x, g, sigma, best_s)?;
        for i in 0..=count {
            let s = lo + i as f64 * step;
            let v = scalar_objective(reg, x, g, sigma, s)?;
            if v < best {
                best = v;
                best_s = s;
            }
        }
        Ok(best_s)
    }

    /// Minimizes `gᵀs + ½σ‖s‖²` subject to `‖x+s‖₀ ≤ k` by enumerating every
    /// support of size at most `k`. Returns `(x + s, objective)`.
    pub fn l0_ball_enumeration(x: &[f64], g: &[f64], sigma: f64, k: usize) -> (Vec<f64>, f64) {
        let n = x.len();
        assert!(n <= 20, "enumeration is exponential in n");
        let mut best_target = Vec::new();
        let mut best = f64::INFINITY;
        for mask in 0u32..(1u32 << n) {
            if mask.count_ones() as usize > k {
                continue;
            }
            // free coordinates: x_i + s_i = x_i − g_i/σ; others pinned at zero
            let mut obj = 0.0;
            let mut target = alloc::vec![0.0; n];
            for i in 0..n {
                let s = if mask & (1 << i) != 0 {
                    target[i] = x[i] - g[i] / sigma;
                    target[i] - x[i]
                } else {
                    -x[i]
                };
                obj += g[i] * s + 0.5 * sigma * s * s;
            }
            if obj < best {
                best = obj;
                best_target = target;
            }
        }
        (best_target, best)
    }
}
