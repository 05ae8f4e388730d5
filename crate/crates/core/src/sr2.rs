//! The SR2 iteration.
//!
//! Each iteration draws a sample `ξ_t`, forms `g_t = ∇f(x_t, ξ_t)`, minimizes
//! `m(s) = g_tᵀs + ½σ_t‖s‖² + R(x_t + s)` exactly, and compares the actual
//! decrease `ΔF_t` with the model decrease `Δψ_t`. The ratio `ρ_t` decides
//! acceptance and drives `σ`:
//!
//! | ratio             | step     | next σ                   |
//! |-------------------|----------|--------------------------|
//! | `ρ ≥ η₂`          | accepted | `max(σ_min, γ₃σ)`        |
//! | `η₁ ≤ ρ < η₂`     | accepted | `σ`                      |
//! | `ρ < η₁`          | rejected | `γ₁σ`                    |
//!
//! The run stops once the mean of the last `W` accepted `‖s‖²` is at most `ε²`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::diagnostics;
use crate::error::{Error, Result};
use crate::linalg;
use crate::problem::{draw_sample, Problem};
use crate::regularizer::Regularizer;
use crate::trace::{Counters, IterationRecord, Outcome, RunFailure, RunResult, StopReason};
use crate::{seeded_rng, SolverRng};

/// Which objective `ρ` is computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoMode {
    /// `F(·, ξ_t)` on the same sample as the gradient.
    Sampled,
    /// The full objective `F`.
    Full,
}

/// Check of `|f(x+s) − f(x) − gᵀs| ≤ κ_m‖s‖²` before a step is assessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssumptionCheck {
    Off,
    /// Against the full loss.
    Full,
    /// Against the sampled loss on the gradient's sample.
    SampledProxy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KappaM {
    /// `L/2` from the problem's Lipschitz bound.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub eta1: f64,
    pub eta2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub sigma0: f64,
    pub sigma_min: f64,
    pub epsilon: f64,
    /// `None` means the full batch.
    pub batch_size: Option<usize>,
    pub max_iter: usize,
    pub seed: u64,
    pub rho_mode: RhoMode,
    pub assumption_check: AssumptionCheck,
    pub kappa_m: KappaM,
    /// Length `W` of the stationarity window.
    pub window: usize,
    /// Accept `γ₂ < γ₁` with a warning instead of rejecting the config.
    pub allow_gamma_inversion: bool,
    /// Evaluate `F(x_{t+1})` every this many iterations (0: never, unless
    /// `rho_mode` is `Full`).
    pub audit_every: usize,
    /// Log the stationarity surrogate every this many iterations (0: never).
    pub surrogate_every: usize,
    /// Fail the run if `σ_t > γ₁·max(σ₀, σ_succ)`; meaningful for full-batch runs.
    pub check_sigma_cap: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            eta1: 7.5e-4,
            eta2: 0.99,
            gamma1: 5.56,
            gamma2: 2.95,
            gamma3: 0.8,
            sigma0: 1.0,
            sigma_min: 1e-6,
            epsilon: 1e-4,
            batch_size: Some(128),
            max_iter: 10_000,
            seed: 0,
            rho_mode: RhoMode::Sampled,
            assumption_check: AssumptionCheck::Off,
            kappa_m: KappaM::Auto,
            window: 25,
            allow_gamma_inversion: true,
            audit_every: 0,
            surrogate_every: 100,
            check_sigma_cap: false,
        }
    }
}

impl SolverConfig {
    /// Full-batch configuration with the default hyperparameters.
    pub fn full_batch() -> Self {
        Self {
            batch_size: None,
            ..Self::default()
        }
    }

    /// Checks the parameter constraints. Returns warnings for tolerated
    /// violations (currently only `γ₂ < γ₁` under `allow_gamma_inversion`).
    pub fn validate(&self) -> Result<Vec<String>> {
        fn need(ok: bool, what: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::Validation(format!("{what} required")))
            }
        }
        need(self.eta1 > 0.0, "0 < eta1")?;
        need(self.eta1 <= self.eta2, "eta1 <= eta2")?;
        need(self.eta2 < 1.0, "eta2 < 1")?;
        need(self.gamma3 > 0.0, "0 < gamma3")?;
        need(self.gamma3 <= 1.0, "gamma3 <= 1")?;
        need(self.gamma1 > 1.0, "1 < gamma1")?;
        need(self.sigma_min > 0.0, "0 < sigma_min")?;
        need(self.sigma0 >= self.sigma_min, "sigma0 >= sigma_min")?;
        need(self.sigma0.is_finite(), "finite sigma0")?;
        need(self.epsilon > 0.0, "0 < epsilon")?;
        need(self.window > 0, "window > 0")?;
        need(self.batch_size != Some(0), "batch_size > 0")?;
        if let KappaM::Fixed(k) = self.kappa_m {
            need(k > 0.0 && k.is_finite(), "0 < kappa_m")?;
        }
        let mut warnings = Vec::new();
        if self.gamma2 < self.gamma1 {
            if self.allow_gamma_inversion {
                warnings.push(format!(
                    "gamma2 = {} is below gamma1 = {}; gamma2 is unused by the point update",
                    self.gamma2, self.gamma1
                ));
            } else {
                need(false, "gamma1 <= gamma2")?;
            }
        }
        Ok(warnings)
    }
}

/// `σ_{t+1}` from `σ_t` and `ρ_t`.
pub fn update_sigma(sigma: f64, rho: f64, cfg: &SolverConfig) -> f64 {
    if rho >= cfg.eta2 {
        f64::max(cfg.sigma_min, cfg.gamma3 * sigma)
    } else if rho >= cfg.eta1 {
        sigma
    } else {
        cfg.gamma1 * sigma
    }
}

/// Regularization level `2κ_m/(1 − η₂)` above which nonzero steps are accepted.
pub fn sigma_succ_bound(kappa_m: f64, eta2: f64) -> f64 {
    2.0 * kappa_m / (1.0 - eta2)
}

/// `ρ = ΔF/Δψ`, with `ρ = 0` when `Δψ` is zero, `+∞` or negative.
///
/// `Δψ ≥ ½σ‖s‖²` in exact arithmetic, so `Δψ < 0` only appears from rounding
/// once `‖s‖` is near machine precision. Its ratio is noise and must not
/// accept the step.
pub fn step_ratio(actual_decrease: f64, model_decrease: f64) -> f64 {
    if !(model_decrease > 0.0) || model_decrease == f64::INFINITY {
        0.0
    } else {
        actual_decrease / model_decrease
    }
}

#[derive(Debug, Clone)]
pub struct SolverState {
    pub x: Vec<f64>,
    pub sigma: f64,
    pub t: usize,
    pub rng: SolverRng,
    pub batch_size: usize,
    pub counters: Counters,
    window: VecDeque<f64>,
    window_len: usize,
    kappa_m: Option<f64>,
    /// Full loss `f(x)` at the current iterate, when known.
    cached_full_loss: Option<f64>,
}

impl SolverState {
    pub fn new<P: Problem + ?Sized>(problem: &P, x0: Vec<f64>, cfg: &SolverConfig) -> Result<Self> {
        cfg.validate()?;
        if x0.len() != problem.dim() {
            return Err(Error::invalid("x0 dimension does not match the problem"));
        }
        let n_terms = problem.num_terms();
        let batch_size = match cfg.batch_size {
            None => n_terms,
            Some(b) if b <= n_terms => b,
            Some(b) => {
                return Err(Error::invalid(format!(
                    "batch size {b} exceeds the number of terms {n_terms}"
                )))
            }
        };
        let kappa_m = match cfg.kappa_m {
            KappaM::Fixed(k) => Some(k),
            KappaM::Auto => problem.lipschitz_bound().map(|l| 0.5 * l),
        };
        if cfg.assumption_check != AssumptionCheck::Off && kappa_m.is_none() {
            return Err(Error::Validation(
                "assumption check needs kappa_m: the problem has no Lipschitz bound".into(),
            ));
        }
        Ok(Self {
            x: x0,
            sigma: cfg.sigma0,
            t: 0,
            rng: seeded_rng(cfg.seed),
            batch_size,
            counters: Counters::default(),
            window: VecDeque::with_capacity(cfg.window),
            // full batch: ξ is deterministic, so E‖s‖² is the last accepted ‖s‖²
            window_len: if batch_size == n_terms { 1 } else { cfg.window },
            kappa_m,
            cached_full_loss: None,
        })
    }

    pub fn kappa_m(&self) -> Option<f64> {
        self.kappa_m
    }

    /// Accepted `‖s‖²` values currently in the window, oldest first.
    pub fn window(&self) -> impl Iterator<Item = f64> + '_ {
        self.window.iter().copied()
    }

    pub fn window_is_full(&self) -> bool {
        self.window.len() == self.window_len
    }

    /// Mean of the windowed accepted `‖s‖²`; `None` before the first acceptance.
    pub fn stationarity_estimate(&self) -> Option<f64> {
        if self.window.is_empty() {
            None
        } else {
            Some(self.window.iter().sum::<f64>() / self.window.len() as f64)
        }
    }

    /// Whether the stopping rule `estimate ≤ ε²` fires on a full window.
    pub fn is_stationary(&self, epsilon: f64) -> bool {
        self.window_is_full()
            && self
                .stationarity_estimate()
                .is_some_and(|e| e <= epsilon * epsilon)
    }

    pub fn push_accepted(&mut self, step_norm_sq: f64) {
        if self.window.len() == self.window_len {
            self.window.pop_front();
        }
        self.window.push_back(step_norm_sq);
    }

    fn full_loss<P: Problem + ?Sized>(&mut self, problem: &P) -> Result<f64> {
        match self.cached_full_loss {
            Some(v) => Ok(v),
            None => {
                let v = problem.full_value(&self.x)?;
                self.cached_full_loss = Some(v);
                Ok(v)
            }
        }
    }
}

/// One SR2 iteration. Advances `state` and returns its record.
pub fn sr2_step<P: Problem + ?Sized>(
    problem: &P,
    reg: &Regularizer,
    state: &mut SolverState,
    cfg: &SolverConfig,
) -> Result<IterationRecord> {
    let n_terms = problem.num_terms();
    let t = state.t;
    let sigma = state.sigma;
    let batch_size = state.batch_size;
    let xi = draw_sample(&mut state.rng, n_terms, batch_size)?;
    let full_batch = xi.len() == n_terms;
    let g = problem.sampled_grad(&state.x, &xi)?;
    let step = reg.shifted_prox(&state.x, &g, sigma)?;
    let target = linalg::add(&state.x, &step.step);
    let reg_before = reg.value(&state.x);
    let reg_after = step.reg_at_target;

    let loss_before = if full_batch {
        state.full_loss(problem)?
    } else {
        problem.sampled_value(&state.x, &xi)?
    };
    let loss_after = problem.sampled_value(&target, &xi)?;
    let numerical = |what: String| Error::Numerical { t, what };
    if !loss_before.is_finite() || !loss_after.is_finite() {
        return Err(numerical(format!(
            "non-finite sampled loss ({loss_before}, {loss_after})"
        )));
    }

    let mut full_after = None;
    let zero_step = step.is_zero();
    let mut outcome;
    let mut rho = None;

    let assumption_ok = if zero_step || cfg.assumption_check == AssumptionCheck::Off {
        true
    } else {
        let kappa = state.kappa_m.unwrap_or(f64::INFINITY);
        let (f0, f1) = match cfg.assumption_check {
            AssumptionCheck::Full => {
                let f0 = state.full_loss(problem)?;
                let f1 = if full_batch {
                    loss_after
                } else {
                    problem.full_value(&target)?
                };
                full_after = Some(f1);
                (f0, f1)
            }
            _ => (loss_before, loss_after),
        };
        libm::fabs(f1 - f0 - linalg::dot(&g, &step.step)) <= kappa * step.norm_sq()
    };

    if !assumption_ok {
        outcome = Outcome::AssumptionRejected;
        state.batch_size = core::cmp::min(2 * state.batch_size, n_terms);
    } else {
        let (before, after) = match cfg.rho_mode {
            RhoMode::Sampled => (loss_before + reg_before, loss_after + reg_after),
            RhoMode::Full => {
                let f0 = state.full_loss(problem)?;
                let f1 = match full_after {
                    Some(v) => v,
                    None if full_batch => loss_after,
                    None => problem.full_value(&target)?,
                };
                full_after = Some(f1);
                (f0 + reg_before, f1 + reg_after)
            }
        };
        let r = if zero_step {
            0.0
        } else {
            step_ratio(before - after, step.model_decrease)
        };
        if !r.is_finite() {
            return Err(numerical(format!("non-finite step ratio {r}")));
        }
        rho = Some(r);
        outcome = if r >= cfg.eta2 {
            Outcome::VerySuccessful
        } else if r >= cfg.eta1 {
            Outcome::Successful
        } else {
            Outcome::Failed
        };
        if zero_step {
            outcome = Outcome::Failed;
        }
        state.sigma = update_sigma(sigma, r, cfg);
    }

    let surrogate = if cfg.surrogate_every > 0 && t.is_multiple_of(cfg.surrogate_every) {
        Some(diagnostics::stationarity_surrogate(problem, &state.x, &g, &step, sigma)?)
    } else {
        None
    };

    let step_norm_sq = step.norm_sq();
    if outcome.accepted() {
        state.x = target;
        state.cached_full_loss = if full_batch { Some(loss_after) } else { full_after };
        state.push_accepted(step_norm_sq);
    }

    let audit = cfg.audit_every > 0 && (t + 1).is_multiple_of(cfg.audit_every);
    let full_objective = if cfg.rho_mode == RhoMode::Full || audit || full_batch {
        Some(state.full_loss(problem)? + reg.value(&state.x))
    } else {
        None
    };

    if cfg.check_sigma_cap {
        if let Some(kappa) = state.kappa_m {
            let cap = cfg.gamma1 * f64::max(cfg.sigma0, sigma_succ_bound(kappa, cfg.eta2));
            if state.sigma > cap {
                return Err(numerical(format!("sigma {} exceeds cap {cap}", state.sigma)));
            }
        }
    }

    state.counters.bump(outcome);
    state.t += 1;
    Ok(IterationRecord {
        t,
        outcome,
        sigma,
        rho,
        step_norm_sq,
        model_decrease: step.model_decrease,
        sampled_before: loss_before + reg_before,
        sampled_after: loss_after + reg_after,
        full_objective,
        nnz: linalg::nnz(&state.x),
        batch_size,
        surrogate,
        wall_time: 0.0,
    })
}

/// Runs SR2 from `x0` until the stationarity rule fires or `max_iter` is hit.
pub fn run<P: Problem + ?Sized>(
    problem: &P,
    reg: &Regularizer,
    x0: Vec<f64>,
    cfg: &SolverConfig,
) -> core::result::Result<RunResult, RunFailure> {
    run_with_clock(problem, reg, x0, cfg, || 0.0)
}

/// [`run`] with a clock returning seconds, used for the `wall_time` column.
pub fn run_with_clock<P: Problem + ?Sized, C: FnMut() -> f64>(
    problem: &P,
    reg: &Regularizer,
    x0: Vec<f64>,
    cfg: &SolverConfig,
    mut clock: C,
) -> core::result::Result<RunResult, RunFailure> {
    let fail = |error: Error, x: Vec<f64>, trace: Vec<IterationRecord>| RunFailure { error, x, trace };
    if reg.value(&x0) == f64::INFINITY {
        return Err(fail(Error::InfeasibleAnchor, x0, Vec::new()));
    }
    let mut state = match SolverState::new(problem, x0.clone(), cfg) {
        Ok(s) => s,
        Err(e) => return Err(fail(e, x0, Vec::new())),
    };
    let initial_objective = match state.full_loss(problem) {
        Ok(v) => v + reg.value(&state.x),
        Err(e) => return Err(fail(e, x0, Vec::new())),
    };
    let start = clock();
    let mut trace = Vec::new();
    let mut stop_reason = StopReason::Budget;
    while state.t < cfg.max_iter {
        match sr2_step(problem, reg, &mut state, cfg) {
            Ok(mut rec) => {
                rec.wall_time = clock() - start;
                let exact_zero = rec.step_norm_sq == 0.0 && rec.batch_size == problem.num_terms();
                trace.push(rec);
                // 0 ∈ argmin m with the full gradient certifies 0 ∈ ∂̂F(x)
                if exact_zero {
                    stop_reason = StopReason::Stationary;
                    break;
                }
            }
            Err(e) => return Err(fail(e, state.x, trace)),
        }
        if state.is_stationary(cfg.epsilon) {
            stop_reason = StopReason::Stationary;
            break;
        }
        if !state.sigma.is_finite() {
            stop_reason = StopReason::SigmaOverflow;
            break;
        }
    }
    let final_objective = match state.full_loss(problem) {
        Ok(v) => v + reg.value(&state.x),
        Err(e) => return Err(fail(e, state.x, trace)),
    };
    Ok(RunResult {
        stationarity: state.stationarity_estimate(),
        x: state.x,
        trace,
        stop_reason,
        initial_objective,
        final_objective,
        counters: state.counters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::problem::LeastSquares;
    use alloc::vec;

    fn half_square(n: usize) -> LeastSquares {
        // single term ½‖x‖² split into n rows e_i: mean is ½‖x‖²/n, so scale rows
        let s = libm::sqrt(n as f64);
        let mut m = Matrix::identity(n);
        let data: Vec<f64> = m.as_slice().iter().map(|v| v * s).collect();
        m = Matrix::from_row_major(n, n, data);
        LeastSquares::new(m, vec![0.0; n]).unwrap()
    }

    #[test]
    fn update_sigma_branches() {
        let cfg = SolverConfig::default();
        assert_eq!(update_sigma(1.0, 0.999, &cfg), 0.8);
        assert_eq!(update_sigma(1.0, 0.5, &cfg), 1.0);
        assert_eq!(update_sigma(1.0, -2.0, &cfg), 5.56);
        assert_eq!(update_sigma(1e-6, 1.0, &cfg), 1e-6);
        // boundaries belong to the upper branch
        assert_eq!(update_sigma(1.0, cfg.eta1, &cfg), 1.0);
        assert_eq!(update_sigma(1.0, cfg.eta2, &cfg), 0.8);
    }

    #[test]
    fn succ_bound() {
        assert!((sigma_succ_bound(0.5, 0.99) - 100.0).abs() < 1e-12);
        assert_eq!(sigma_succ_bound(0.5, 0.5), 2.0);
    }

    #[test]
    fn ratio_conventions() {
        assert_eq!(step_ratio(1.0, 0.0), 0.0);
        assert_eq!(step_ratio(1.0, f64::INFINITY), 0.0);
        assert_eq!(step_ratio(1.0, 2.0), 0.5);
        assert_eq!(step_ratio(-2e-16, -1e-16), 0.0);
        assert_eq!(step_ratio(1.0, f64::NAN), 0.0);
    }

    #[test]
    fn validation_messages() {
        let cfg = SolverConfig {
            eta1: 0.0,
            ..SolverConfig::default()
        };
        assert_eq!(
            cfg.validate(),
            Err(Error::Validation("0 < eta1 required".into()))
        );
        let warnings = SolverConfig::default().validate().unwrap();
        assert_eq!(warnings.len(), 1);
        let strict = SolverConfig {
            allow_gamma_inversion: false,
            ..SolverConfig::default()
        };
        assert!(strict.validate().is_err());
        let bad = SolverConfig {
            sigma0: 1e-8,
            ..SolverConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn one_dimensional_quadratic_step() {
        let p = half_square(1);
        let cfg = SolverConfig::full_batch();
        let mut state = SolverState::new(&p, vec![1.0], &cfg).unwrap();
        let rec = sr2_step(&p, &Regularizer::Zero, &mut state, &cfg).unwrap();
        assert_eq!(state.x, vec![0.0]);
        // Δψ = ψ(0) − ψ(s) = −gᵀs = 1, ΔF = ½
        assert_eq!(rec.model_decrease, 1.0);
        assert_eq!(rec.sampled_before - rec.sampled_after, 0.5);
        assert_eq!(rec.rho, Some(0.5));
        assert_eq!(rec.outcome, Outcome::Successful);
        assert_eq!(state.sigma, 1.0);
    }

    #[test]
    fn zero_step_fails_and_escalates() {
        // lasso with ‖∇f(0)‖∞ < λ: x = 0 is stationary
        let a = Matrix::from_row_major(2, 2, vec![1.0, 0.0, 0.0, 1.0]);
        let p = LeastSquares::new(a, vec![0.3, -0.2]).unwrap();
        let reg = Regularizer::l1(0.5).unwrap();
        let g = p.full_grad(&[0.0, 0.0]).unwrap();
        assert!(g.iter().all(|v| v.abs() < 0.5));
        let cfg = SolverConfig::full_batch();
        let mut state = SolverState::new(&p, vec![0.0, 0.0], &cfg).unwrap();
        let rec = sr2_step(&p, &reg, &mut state, &cfg).unwrap();
        assert_eq!(rec.outcome, Outcome::Failed);
        assert_eq!(rec.rho, Some(0.0));
        assert_eq!(rec.model_decrease, 0.0);
        assert_eq!(state.sigma, cfg.gamma1);
        assert_eq!(state.counters.failures, 1);
    }

    #[test]
    fn window_mean() {
        let p = half_square(2);
        let cfg = SolverConfig {
            window: 3,
            batch_size: Some(1),
            ..SolverConfig::default()
        };
        let mut state = SolverState::new(&p, vec![1.0, 0.0], &cfg).unwrap();
        assert_eq!(state.stationarity_estimate(), None);
        for v in [0.5, 0.04, 0.01, 0.01] {
            state.push_accepted(v);
        }
        assert!((state.stationarity_estimate().unwrap() - 0.02).abs() < 1e-15);
        assert!(state.window_is_full());

        let mut full = SolverState::new(&p, vec![1.0, 0.0], &SolverConfig::full_batch()).unwrap();
        full.push_accepted(0.5);
        full.push_accepted(0.25);
        assert_eq!(full.stationarity_estimate(), Some(0.25));
    }

    #[test]
    fn strongly_convex_quadratic_converges() {
        let p = half_square(2);
        let cfg = SolverConfig {
            epsilon: 1e-6,
            sigma0: 10.0,
            rho_mode: RhoMode::Full,
            ..SolverConfig::full_batch()
        };
        let res = run(&p, &Regularizer::Zero, vec![1.0, 1.0], &cfg).unwrap();
        assert_eq!(res.stop_reason, StopReason::Stationary);
        assert!(linalg::norm(&res.x) <= 1e-4, "{:?}", res.x);
        let mut prev = res.initial_objective;
        for r in &res.trace {
            let f = r.full_objective.unwrap();
            assert!(f <= prev);
            prev = f;
        }
    }

    #[test]
    fn infeasible_start_is_rejected() {
        let p = half_square(2);
        let err = run(&p, &Regularizer::l0_ball(1), vec![1.0, 1.0], &SolverConfig::full_batch())
            .unwrap_err();
        assert_eq!(err.error, Error::InfeasibleAnchor);
    }

    #[test]
    fn assumption_rejection_doubles_batch() {
        let mut rng = seeded_rng(4);
        let p = crate::problem::make_least_squares(&mut rng, 64, 5, 1.0).unwrap();
        let cfg = SolverConfig {
            batch_size: Some(1),
            assumption_check: AssumptionCheck::Full,
            kappa_m: KappaM::Fixed(1e-9),
            max_iter: 20,
            ..SolverConfig::default()
        };
        let res = run(&p, &Regularizer::Zero, vec![0.0; 5], &cfg).unwrap();
        let rejected: Vec<_> = res
            .trace
            .iter()
            .filter(|r| r.outcome == Outcome::AssumptionRejected)
            .collect();
        assert!(!rejected.is_empty());
        for w in res.trace.windows(2) {
            if w[0].outcome == Outcome::AssumptionRejected {
                assert_eq!(w[1].batch_size, core::cmp::min(2 * w[0].batch_size, 64));
                assert_eq!(w[1].sigma, w[0].sigma);
            }
        }
        assert_eq!(res.counters.total(), res.trace.len());
    }
}
