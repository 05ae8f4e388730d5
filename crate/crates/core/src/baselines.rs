//! Fixed-step proximal SGD baselines, with momentum and preconditioning off.
//!
//! - ProxGEN: `x' = x + s`, `s = argmin gᵀs + (1/2α)‖s‖² + R(x+s)`.
//! - ProxSGD: `x' = x + α s`, `s = argmin gᵀs + ½‖s‖² + R(x+s)`; convex `R` only.
//!
//! Neither method rejects a step or changes its batch size.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::problem::{draw_sample, Problem};
use crate::regularizer::{Regularizer, StepVector};
use crate::trace::{Counters, IterationRecord, Outcome, RunFailure, RunResult, StopReason};
use crate::seeded_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    ProxGen,
    ProxSgd,
}

impl BaselineKind {
    pub fn name(self) -> &'static str {
        match self {
            BaselineKind::ProxGen => "proxgen",
            BaselineKind::ProxSgd => "proxsgd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Constant,
    /// `α_t = α / √(t + 1)`.
    InverseSqrt,
}

impl Schedule {
    pub fn step_size(self, alpha: f64, t: usize) -> f64 {
        match self {
            Schedule::Constant => alpha,
            Schedule::InverseSqrt => alpha / libm::sqrt((t + 1) as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineConfig {
    pub alpha: f64,
    pub schedule: Schedule,
    pub batch_size: Option<usize>,
    pub max_iter: usize,
    pub seed: u64,
    pub audit_every: usize,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            alpha: 1e-3,
            schedule: Schedule::Constant,
            batch_size: Some(128),
            max_iter: 10_000,
            seed: 0,
            audit_every: 0,
        }
    }
}

impl BaselineConfig {
    /// `1/L` when the problem has a Lipschitz bound, else `1e-3`.
    pub fn default_alpha<P: Problem + ?Sized>(problem: &P) -> f64 {
        match problem.lipschitz_bound() {
            Some(l) if l > 0.0 => 1.0 / l,
            _ => 1e-3,
        }
    }

    pub fn validate(&self, kind: BaselineKind) -> Result<()> {
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(Error::Validation("0 < alpha required".into()));
        }
        if kind == BaselineKind::ProxSgd && self.alpha > 1.0 {
            return Err(Error::Validation("alpha <= 1 required for proxsgd".into()));
        }
        if self.batch_size == Some(0) {
            return Err(Error::Validation("batch_size > 0 required".into()));
        }
        Ok(())
    }
}

struct StepDetail {
    x_next: Vec<f64>,
    step: StepVector,
    sampled: (f64, f64),
}

#[allow(clippy::too_many_arguments)]
fn baseline_step<P: Problem + ?Sized, R: Rng + ?Sized>(
    kind: BaselineKind,
    problem: &P,
    reg: &Regularizer,
    x: &[f64],
    alpha: f64,
    rng: &mut R,
    batch: usize,
    with_values: bool,
) -> Result<StepDetail> {
    if !(alpha > 0.0) {
        return Err(Error::invalid("step size must be positive"));
    }
    let xi = draw_sample(rng, problem.num_terms(), batch)?;
    let g = problem.sampled_grad(x, &xi)?;
    let (x_next, step) = match kind {
        BaselineKind::ProxGen => {
            let step = reg.shifted_prox_step(x, &g, alpha)?;
            (linalg::add(x, &step.step), step)
        }
        BaselineKind::ProxSgd => {
            if !reg.is_convex() {
                return Err(Error::UnsupportedRegularizer {
                    solver: "proxsgd",
                    reg: reg.name(),
                });
            }
            if alpha > 1.0 {
                return Err(Error::invalid("proxsgd step size must lie in (0, 1]"));
            }
            let step = reg.shifted_prox(x, &g, 1.0)?;
            let x_next = x.iter().zip(&step.step).map(|(xi, si)| xi + alpha * si).collect();
            (x_next, step)
        }
    };
    let sampled = if with_values {
        (
            problem.sampled_value(x, &xi)? + reg.value(x),
            problem.sampled_value(&x_next, &xi)? + reg.value(&x_next),
        )
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(StepDetail {
        x_next,
        step,
        sampled,
    })
}

/// One ProxGEN step (`v_t = g_t`, `D_t = I`).
pub fn proxgen_step<P: Problem + ?Sized, R: Rng + ?Sized>(
    problem: &P,
    reg: &Regularizer,
    x: &[f64],
    alpha: f64,
    rng: &mut R,
    batch: usize,
) -> Result<Vec<f64>> {
    baseline_step(BaselineKind::ProxGen, problem, reg, x, alpha, rng, batch, false).map(|d| d.x_next)
}

/// One ProxSGD step with the unit quadratic and interpolation weight `alpha`.
pub fn proxsgd_step<P: Problem + ?Sized, R: Rng + ?Sized>(
    problem: &P,
    reg: &Regularizer,
    x: &[f64],
    alpha: f64,
    rng: &mut R,
    batch: usize,
) -> Result<Vec<f64>> {
    baseline_step(BaselineKind::ProxSgd, problem, reg, x, alpha, rng, batch, false).map(|d| d.x_next)
}

pub fn run_baseline<P: Problem + ?Sized>(
    kind: BaselineKind,
    problem: &P,
    reg: &Regularizer,
    x0: Vec<f64>,
    cfg: &BaselineConfig,
) -> core::result::Result<RunResult, RunFailure> {
    run_baseline_with_clock(kind, problem, reg, x0, cfg, || 0.0)
}

pub fn run_baseline_with_clock<P: Problem + ?Sized, C: FnMut() -> f64>(
    kind: BaselineKind,
    problem: &P,
    reg: &Regularizer,
    x0: Vec<f64>,
    cfg: &BaselineConfig,
    mut clock: C,
) -> core::result::Result<RunResult, RunFailure> {
    let fail = |error: Error, x: Vec<f64>, trace: Vec<IterationRecord>| RunFailure { error, x, trace };
    if let Err(e) = cfg.validate(kind) {
        return Err(fail(e, x0, Vec::new()));
    }
    if kind == BaselineKind::ProxSgd && !reg.is_convex() {
        let e = Error::UnsupportedRegularizer {
            solver: "proxsgd",
            reg: reg.name(),
        };
        return Err(fail(e, x0, Vec::new()));
    }
    let n_terms = problem.num_terms();
    let batch = match cfg.batch_size {
        None => n_terms,
        Some(b) if b <= n_terms => b,
        Some(_) => return Err(fail(Error::invalid("batch size exceeds number of terms"), x0, Vec::new())),
    };
    let initial_objective = match problem.full_value(&x0) {
        Ok(v) => v + reg.value(&x0),
        Err(e) => return Err(fail(e, x0, Vec::new())),
    };
    let mut rng = seeded_rng(cfg.seed);
    let mut x = x0;
    let mut trace = Vec::with_capacity(cfg.max_iter);
    let mut counters = Counters::default();
    let start = clock();
    for t in 0..cfg.max_iter {
        let alpha = cfg.schedule.step_size(cfg.alpha, t);
        let detail = match baseline_step(kind, problem, reg, &x, alpha, &mut rng, batch, true) {
            Ok(d) => d,
            Err(e) => return Err(fail(e, x, trace)),
        };
        let StepDetail {
            x_next,
            step,
            sampled,
        } = detail;
        x = x_next;
        let audit = batch == n_terms || (cfg.audit_every > 0 && (t + 1).is_multiple_of(cfg.audit_every));
        let full_objective = if audit {
            match problem.full_value(&x) {
                Ok(v) => Some(v + reg.value(&x)),
                Err(e) => return Err(fail(e, x, trace)),
            }
        } else {
            None
        };
        counters.successes += 1;
        trace.push(IterationRecord {
            t,
            outcome: Outcome::Unconditional,
            sigma: match kind {
                BaselineKind::ProxGen => 1.0 / alpha,
                BaselineKind::ProxSgd => 1.0,
            },
            rho: None,
            step_norm_sq: step.norm_sq(),
            model_decrease: step.model_decrease,
            sampled_before: sampled.0,
            sampled_after: sampled.1,
            full_objective,
            nnz: linalg::nnz(&x),
            batch_size: batch,
            surrogate: None,
            wall_time: clock() - start,
        });
    }
    let final_objective = match problem.full_value(&x) {
        Ok(v) => v + reg.value(&x),
        Err(e) => return Err(fail(e, x, trace)),
    };
    Ok(RunResult {
        x,
        trace,
        stop_reason: StopReason::Budget,
        initial_objective,
        final_objective,
        counters,
        stationarity: None,
    })
}
