//! Per-iteration records shared by SR2 and the baselines.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// `ρ ≥ η₂`.
    VerySuccessful,
    /// `η₁ ≤ ρ < η₂`.
    Successful,
    /// `ρ < η₁`, including zero steps.
    Failed,
    /// The sample failed the model-error check; the step was discarded.
    AssumptionRejected,
    /// Baseline step, always taken.
    Unconditional,
}

impl Outcome {
    pub fn accepted(self) -> bool {
        matches!(
            self,
            Outcome::VerySuccessful | Outcome::Successful | Outcome::Unconditional
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::VerySuccessful => "very_successful",
            Outcome::Successful => "successful",
            Outcome::Failed => "failed",
            Outcome::AssumptionRejected => "assumption_rejected",
            Outcome::Unconditional => "unconditional",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "very_successful" => Outcome::VerySuccessful,
            "successful" => Outcome::Successful,
            "failed" => Outcome::Failed,
            "assumption_rejected" => Outcome::AssumptionRejected,
            "unconditional" => Outcome::Unconditional,
            _ => return None,
        })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// Zero-based iteration index.
    pub t: usize,
    pub outcome: Outcome,
    /// `σ_t` used to compute the step (`1/α_t` for baselines).
    pub sigma: f64,
    /// Step-quality ratio; `None` when it was not computed.
    pub rho: Option<f64>,
    pub step_norm_sq: f64,
    /// `Δψ_t = R(x) − gᵀs − R(x+s)`.
    pub model_decrease: f64,
    /// `f(x_t, ξ_t) + R(x_t)`.
    pub sampled_before: f64,
    /// `f(x_t + s_t, ξ_t) + R(x_t + s_t)`.
    pub sampled_after: f64,
    /// `F(x_{t+1})` on the full data when it was evaluated.
    pub full_objective: Option<f64>,
    /// `‖x_{t+1}‖₀`.
    pub nnz: usize,
    pub batch_size: usize,
    pub surrogate: Option<f64>,
    /// Seconds since the start of the run; zero when no clock was supplied.
    pub wall_time: f64,
}

impl IterationRecord {
    pub fn accepted(&self) -> bool {
        self.outcome.accepted()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Windowed `E‖s‖²` estimate fell to `ε²`.
    Stationary,
    /// `max_iter` reached.
    Budget,
    /// `σ` overflowed after repeated failures (steps had shrunk below rounding).
    SigmaOverflow,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Stationary => "stationary",
            StopReason::Budget => "budget",
            StopReason::SigmaOverflow => "sigma_overflow",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Counters {
    pub very_successes: usize,
    pub successes: usize,
    pub failures: usize,
    pub assumption_rejections: usize,
}

impl Counters {
    pub fn total(&self) -> usize {
        self.very_successes + self.successes + self.failures + self.assumption_rejections
    }

    pub(crate) fn bump(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::VerySuccessful => self.very_successes += 1,
            Outcome::Successful | Outcome::Unconditional => self.successes += 1,
            Outcome::Failed => self.failures += 1,
            Outcome::AssumptionRejected => self.assumption_rejections += 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub x: Vec<f64>,
    pub trace: Vec<IterationRecord>,
    pub stop_reason: StopReason,
    /// `F(x_0)` on the full data.
    pub initial_objective: f64,
    /// `F(x_final)` on the full data.
    pub final_objective: f64,
    pub counters: Counters,
    /// Last windowed stationarity estimate, if any step was accepted.
    pub stationarity: Option<f64>,
}

/// A run that stopped on an error, with everything recorded up to that point.
#[derive(Debug, Clone)]
pub struct RunFailure {
    pub error: Error,
    pub x: Vec<f64>,
    pub trace: Vec<IterationRecord>,
}

impl fmt::Display for RunFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (after {} iterations)", self.error, self.trace.len())
    }
}

impl core::error::Error for RunFailure {}
