//! TOML experiment configuration.
//!
//! ```toml
//! seeds = [0, 1]
//!
//! [[problem]]
//! name = "lasso"
//! kind = "sparse_recovery"      # least_squares | sparse_recovery | logistic | mlp
//! n_terms = 400
//! dim = 100
//!
//! [[reg]]
//! kind = "l1"                   # zero | l1 | l0 | l0_ball
//! lambda = [1e-4, 1e-3, 1e-2]
//!
//! [[solver]]
//! name = "sr2"                  # sr2 | proxgen | proxsgd
//! batch_size = "full"
//! ```
//!
//! Every table rejects unknown keys. See `configs/` for complete files.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use sr2kit_core::baselines::{BaselineConfig, Schedule};
use sr2kit_core::diagnostics::DEFAULT_PRUNE_THRESHOLDS;
use sr2kit_core::problem::MlpLoss;
use sr2kit_core::sr2::{AssumptionCheck, KappaM, RhoMode};
use sr2kit_core::{Regularizer, SolverConfig};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{0}")]
    Syntax(#[from] toml::de::Error),
    #[error("validation: {0}")]
    Validation(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Validation(msg.into())
}

/// A number or the string `"auto"`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Default)]
#[serde(untagged)]
pub enum AutoOr {
    #[default]
    #[serde(with = "auto_tag")]
    Auto,
    Value(f64),
}

mod auto_tag {
    use serde::{Deserialize, Deserializer};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "auto" {
            Ok(())
        } else {
            Err(serde::de::Error::custom(format!("expected a number or \"auto\", found {s:?}")))
        }
    }
}

/// A count or the string `"full"`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum BatchSize {
    #[serde(with = "full_tag")]
    Full,
    Count(usize),
}

mod full_tag {
    use serde::{Deserialize, Deserializer};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "full" {
            Ok(())
        } else {
            Err(serde::de::Error::custom(format!("expected a count or \"full\", found {s:?}")))
        }
    }
}

impl BatchSize {
    pub fn resolve(self) -> Option<usize> {
        match self {
            BatchSize::Full => None,
            BatchSize::Count(b) => Some(b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    LeastSquares,
    SparseRecovery,
    Logistic,
    Mlp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossName {
    Squared,
    Logistic,
}

impl From<LossName> for MlpLoss {
    fn from(l: LossName) -> Self {
        match l {
            LossName::Squared => MlpLoss::Squared,
            LossName::Logistic => MlpLoss::Logistic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormatName {
    Csv,
    Libsvm,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    pub kind: ProblemKind,
    /// Generator seed; runs with different solver seeds share the instance.
    #[serde(default)]
    pub instance_seed: u64,
    pub n_terms: Option<usize>,
    pub dim: Option<usize>,
    #[serde(default = "default_noise")]
    pub noise_sd: f64,
    #[serde(default = "default_separation")]
    pub separation: f64,
    pub support: Option<usize>,
    #[serde(default = "default_hidden")]
    pub hidden: usize,
    #[serde(default = "default_loss")]
    pub loss: LossName,
    /// Load the data from a file instead of generating it.
    pub data: Option<PathBuf>,
    pub format: Option<FormatName>,
}

fn default_noise() -> f64 {
    0.1
}
fn default_separation() -> f64 {
    4.0
}
fn default_hidden() -> usize {
    8
}
fn default_loss() -> LossName {
    LossName::Logistic
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegKind {
    Zero,
    L1,
    L0,
    L0Ball,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegSpec {
    pub kind: RegKind,
    #[serde(default)]
    pub lambda: Vec<f64>,
    #[serde(default)]
    pub k: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverName {
    Sr2,
    Proxgen,
    Proxsgd,
}

impl SolverName {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverName::Sr2 => "sr2",
            SolverName::Proxgen => "proxgen",
            SolverName::Proxsgd => "proxsgd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhoModeName {
    Sampled,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    Off,
    Full,
    SampledProxy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleName {
    Constant,
    InverseSqrt,
}

/// One solver column of the matrix. SR2-only and baseline-only keys are
/// rejected on the other solvers.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub name: SolverName,
    /// Distinguishes several entries of the same solver in output names.
    pub label: Option<String>,
    pub batch_size: Option<BatchSize>,
    pub max_iter: Option<usize>,
    pub epochs: Option<usize>,
    /// Full-objective audit period; defaults to one epoch for minibatch runs.
    pub audit_every: Option<usize>,

    pub eta1: Option<f64>,
    pub eta2: Option<f64>,
    pub gamma1: Option<f64>,
    pub gamma2: Option<f64>,
    pub gamma3: Option<f64>,
    /// `"auto"` is `2κ_m/(1−η₂)` with `κ_m = L/2`, or 1 without a Lipschitz bound.
    pub sigma0: Option<AutoOr>,
    pub sigma_min: Option<f64>,
    pub epsilon: Option<f64>,
    pub rho_mode: Option<RhoModeName>,
    pub assumption_check: Option<CheckName>,
    pub kappa_m: Option<AutoOr>,
    pub window: Option<usize>,
    pub allow_gamma_inversion: Option<bool>,
    pub surrogate_every: Option<usize>,

    /// `"auto"`: `1/L` for ProxGEN, `min(1, 1/L)` for ProxSGD, `1e-3` without `L`.
    pub alpha: Option<AutoOr>,
    pub schedule: Option<ScheduleName>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    #[serde(default = "default_seeds")]
    seeds: Vec<u64>,
    prune_thresholds: Option<Vec<f64>>,
    #[serde(default)]
    problem: Vec<ProblemSpec>,
    #[serde(default)]
    reg: Vec<RegSpec>,
    #[serde(default)]
    solver: Vec<SolverSpec>,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub seeds: Vec<u64>,
    pub prune_thresholds: Vec<f64>,
    pub problems: Vec<ProblemSpec>,
    pub regs: Vec<Regularizer>,
    pub solvers: Vec<SolverSpec>,
    /// Non-fatal findings, such as the default `γ₂ < γ₁` inversion.
    pub warnings: Vec<String>,
}

/// Default `λ` grid for ℓ1 when no `[[reg]]` table is given.
pub const DEFAULT_L1_GRID: [f64; 3] = [1e-4, 1e-3, 1e-2];

impl ExperimentSpec {
    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self, ConfigError> {
        let raw: RawSpec = toml::from_str(text)?;
        let mut warnings = Vec::new();

        if raw.seeds.is_empty() {
            return Err(invalid("seeds must not be empty"));
        }
        let prune_thresholds = raw
            .prune_thresholds
            .unwrap_or_else(|| DEFAULT_PRUNE_THRESHOLDS.to_vec());
        if prune_thresholds.is_empty() || prune_thresholds.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
            return Err(invalid("prune_thresholds must be a nonempty list of positive reals"));
        }

        if raw.problem.is_empty() {
            return Err(invalid("at least one [[problem]] table is required"));
        }
        let mut problems = raw.problem;
        let mut names = std::collections::BTreeSet::new();
        for p in &mut problems {
            validate_problem(p)?;
            if !names.insert(p.name.clone()) {
                return Err(invalid(format!("duplicate problem name {:?}", p.name)));
            }
            if let Some(path) = &p.data {
                if path.is_relative() {
                    p.data = Some(base_dir.join(path));
                }
            }
        }

        let reg_specs = if raw.reg.is_empty() {
            vec![RegSpec {
                kind: RegKind::L1,
                lambda: DEFAULT_L1_GRID.to_vec(),
                k: Vec::new(),
            }]
        } else {
            raw.reg
        };
        let mut regs = Vec::new();
        for r in &reg_specs {
            regs.extend(expand_reg(r)?);
        }

        if raw.solver.is_empty() {
            return Err(invalid("at least one [[solver]] table is required"));
        }
        let mut labels = std::collections::BTreeSet::new();
        for s in &raw.solver {
            warnings.extend(validate_solver(s)?);
            if !labels.insert(solver_label(s)) {
                return Err(invalid(format!(
                    "two solver entries share the label {:?}; set `label`",
                    solver_label(s)
                )));
            }
        }

        warnings.sort();
        warnings.dedup();
        Ok(Self {
            seeds: raw.seeds,
            prune_thresholds,
            problems,
            regs,
            solvers: raw.solver,
            warnings,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text, base)
    }
}

pub fn solver_label(s: &SolverSpec) -> String {
    s.label.clone().unwrap_or_else(|| s.name.as_str().to_owned())
}

fn validate_problem(p: &ProblemSpec) -> Result<(), ConfigError> {
    let bad_name = p.name.is_empty()
        || !p
            .name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if bad_name {
        return Err(invalid(format!(
            "problem name {:?} must be nonempty [A-Za-z0-9_-]",
            p.name
        )));
    }
    if p.data.is_some() {
        if p.kind == ProblemKind::SparseRecovery {
            return Err(invalid("sparse_recovery is generated; it cannot load data"));
        }
        return Ok(());
    }
    if p.format.is_some() {
        return Err(invalid(format!("problem {:?}: format without data", p.name)));
    }
    let (Some(n), Some(d)) = (p.n_terms, p.dim) else {
        return Err(invalid(format!(
            "problem {:?}: generated problems need n_terms and dim",
            p.name
        )));
    };
    if n == 0 || d == 0 {
        return Err(invalid("n_terms and dim must be positive"));
    }
    if !(p.noise_sd >= 0.0) || !p.separation.is_finite() {
        return Err(invalid("noise_sd >= 0 and finite separation required"));
    }
    if p.kind == ProblemKind::SparseRecovery && p.support.is_none() {
        return Err(invalid("sparse_recovery needs `support`"));
    }
    if p.hidden == 0 {
        return Err(invalid("hidden > 0 required"));
    }
    Ok(())
}

fn expand_reg(r: &RegSpec) -> Result<Vec<Regularizer>, ConfigError> {
    let no_lambda = |what: &str| {
        if r.lambda.is_empty() {
            Ok(())
        } else {
            Err(invalid(format!("{what} takes no lambda")))
        }
    };
    let no_k = || {
        if r.k.is_empty() {
            Ok(())
        } else {
            Err(invalid("only l0_ball takes k"))
        }
    };
    let lambdas = |make: fn(f64) -> sr2kit_core::Result<Regularizer>| {
        no_k()?;
        if r.lambda.is_empty() {
            return Err(invalid("lambda list must not be empty"));
        }
        r.lambda
            .iter()
            .map(|&l| make(l).map_err(|e| invalid(e.to_string())))
            .collect()
    };
    match r.kind {
        RegKind::Zero => {
            no_lambda("zero")?;
            no_k()?;
            Ok(vec![Regularizer::Zero])
        }
        RegKind::L1 => lambdas(Regularizer::l1),
        RegKind::L0 => lambdas(Regularizer::l0),
        RegKind::L0Ball => {
            no_lambda("l0_ball")?;
            if r.k.is_empty() {
                return Err(invalid("l0_ball needs a nonempty k list"));
            }
            Ok(r.k.iter().map(|&k| Regularizer::l0_ball(k)).collect())
        }
    }
}

fn validate_solver(s: &SolverSpec) -> Result<Vec<String>, ConfigError> {
    let label = solver_label(s);
    if s.max_iter.is_some() && s.epochs.is_some() {
        return Err(invalid(format!("{label}: set max_iter or epochs, not both")));
    }
    if s.batch_size == Some(BatchSize::Count(0)) {
        return Err(invalid("batch_size > 0 required"));
    }
    let sr2_keys = [
        ("eta1", s.eta1.is_some()),
        ("eta2", s.eta2.is_some()),
        ("gamma1", s.gamma1.is_some()),
        ("gamma2", s.gamma2.is_some()),
        ("gamma3", s.gamma3.is_some()),
        ("sigma0", s.sigma0.is_some()),
        ("sigma_min", s.sigma_min.is_some()),
        ("epsilon", s.epsilon.is_some()),
        ("rho_mode", s.rho_mode.is_some()),
        ("assumption_check", s.assumption_check.is_some()),
        ("kappa_m", s.kappa_m.is_some()),
        ("window", s.window.is_some()),
        ("allow_gamma_inversion", s.allow_gamma_inversion.is_some()),
        ("surrogate_every", s.surrogate_every.is_some()),
    ];
    let baseline_keys = [("alpha", s.alpha.is_some()), ("schedule", s.schedule.is_some())];
    let (foreign, role) = match s.name {
        SolverName::Sr2 => (&baseline_keys[..], "baselines"),
        _ => (&sr2_keys[..], "sr2"),
    };
    if let Some((key, _)) = foreign.iter().find(|(_, set)| *set) {
        return Err(invalid(format!("{label}: `{key}` only applies to {role}")));
    }
    match s.name {
        SolverName::Sr2 => {
            // σ0 = auto resolves per problem; use a placeholder for the static check
            let cfg = sr2_config(s, 1.0, 1);
            let cfg = SolverConfig {
                sigma0: match s.sigma0 {
                    Some(AutoOr::Value(v)) => v,
                    _ => cfg.sigma_min.max(1.0),
                },
                ..cfg
            };
            cfg.validate().map_err(|e| invalid(format!("{label}: {e}")))
        }
        SolverName::Proxgen | SolverName::Proxsgd => {
            if let Some(AutoOr::Value(a)) = s.alpha {
                if !(a > 0.0) || !a.is_finite() {
                    return Err(invalid(format!("{label}: 0 < alpha required")));
                }
                if s.name == SolverName::Proxsgd && a > 1.0 {
                    return Err(invalid(format!("{label}: alpha <= 1 required for proxsgd")));
                }
            }
            Ok(Vec::new())
        }
    }
}

/// Iterations in one pass over the data.
pub fn epoch_length(n_terms: usize, batch: Option<usize>) -> usize {
    match batch {
        None => 1,
        Some(b) => n_terms.div_ceil(b.max(1)),
    }
}

fn resolve_iters(s: &SolverSpec, default: usize, n_terms: usize, batch: Option<usize>) -> usize {
    match (s.max_iter, s.epochs) {
        (Some(m), _) => m,
        (None, Some(e)) => e * epoch_length(n_terms, batch),
        (None, None) => default,
    }
}

fn default_audit(s: &SolverSpec, n_terms: usize, batch: Option<usize>) -> usize {
    s.audit_every.unwrap_or(match batch {
        None => 0,
        Some(_) => epoch_length(n_terms, batch),
    })
}

/// SR2 settings for a cell. `sigma0_auto` replaces `sigma0 = "auto"`; an
/// omitted `sigma0` keeps the default `σ0 = 1`.
pub fn sr2_config(s: &SolverSpec, sigma0_auto: f64, n_terms: usize) -> SolverConfig {
    let d = SolverConfig::default();
    let batch = s.batch_size.map_or(d.batch_size, BatchSize::resolve);
    SolverConfig {
        eta1: s.eta1.unwrap_or(d.eta1),
        eta2: s.eta2.unwrap_or(d.eta2),
        gamma1: s.gamma1.unwrap_or(d.gamma1),
        gamma2: s.gamma2.unwrap_or(d.gamma2),
        gamma3: s.gamma3.unwrap_or(d.gamma3),
        sigma0: match s.sigma0 {
            None => d.sigma0,
            Some(AutoOr::Auto) => sigma0_auto,
            Some(AutoOr::Value(v)) => v,
        },
        sigma_min: s.sigma_min.unwrap_or(d.sigma_min),
        epsilon: s.epsilon.unwrap_or(d.epsilon),
        batch_size: batch,
        max_iter: resolve_iters(s, d.max_iter, n_terms, batch),
        seed: d.seed,
        rho_mode: match s.rho_mode {
            None => d.rho_mode,
            Some(RhoModeName::Sampled) => RhoMode::Sampled,
            Some(RhoModeName::Full) => RhoMode::Full,
        },
        assumption_check: match s.assumption_check {
            None => d.assumption_check,
            Some(CheckName::Off) => AssumptionCheck::Off,
            Some(CheckName::Full) => AssumptionCheck::Full,
            Some(CheckName::SampledProxy) => AssumptionCheck::SampledProxy,
        },
        kappa_m: match s.kappa_m {
            None | Some(AutoOr::Auto) => KappaM::Auto,
            Some(AutoOr::Value(k)) => KappaM::Fixed(k),
        },
        window: s.window.unwrap_or(d.window),
        allow_gamma_inversion: s.allow_gamma_inversion.unwrap_or(d.allow_gamma_inversion),
        audit_every: default_audit(s, n_terms, batch),
        surrogate_every: s.surrogate_every.unwrap_or(d.surrogate_every),
        check_sigma_cap: d.check_sigma_cap,
    }
}

pub fn baseline_config(s: &SolverSpec, alpha_auto: f64, n_terms: usize) -> BaselineConfig {
    let d = BaselineConfig::default();
    let batch = s.batch_size.map_or(d.batch_size, BatchSize::resolve);
    BaselineConfig {
        alpha: match s.alpha {
            None | Some(AutoOr::Auto) => alpha_auto,
            Some(AutoOr::Value(a)) => a,
        },
        schedule: match s.schedule {
            None | Some(ScheduleName::Constant) => Schedule::Constant,
            Some(ScheduleName::InverseSqrt) => Schedule::InverseSqrt,
        },
        batch_size: batch,
        max_iter: resolve_iters(s, d.max_iter, n_terms, batch),
        seed: d.seed,
        audit_every: default_audit(s, n_terms, batch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
        [[problem]]
        name = "ls"
        kind = "least_squares"
        n_terms = 20
        dim = 3

        [[solver]]
        name = "sr2"
    "#;

    fn parse(text: &str) -> Result<ExperimentSpec, ConfigError> {
        ExperimentSpec::from_toml(text, Path::new("."))
    }

    #[test]
    fn empty_sr2_section_gives_defaults() {
        let spec = parse(MINIMAL).unwrap();
        let cfg = sr2_config(&spec.solvers[0], 1.0, 20);
        let d = SolverConfig::default();
        assert_eq!(
            (cfg.eta1, cfg.eta2, cfg.gamma1, cfg.gamma2, cfg.gamma3),
            (7.5e-4, 0.99, 5.56, 2.95, 0.8)
        );
        assert_eq!(cfg.sigma0, d.sigma0);
        assert_eq!(spec.regs.len(), 3);
        assert_eq!(spec.seeds, vec![0]);
        assert_eq!(spec.prune_thresholds.len(), 8);
        assert_eq!(spec.warnings.len(), 1, "{:?}", spec.warnings);
        assert!(spec.warnings[0].contains("gamma2"));
    }

    #[test]
    fn eta1_zero_is_rejected() {
        let text = format!("{MINIMAL}eta1 = 0.0\n");
        let err = parse(&text).unwrap_err().to_string();
        assert!(err.contains("0 < eta1 required"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse(&format!("{MINIMAL}etaa = 0.1\n")).unwrap_err().to_string();
        assert!(err.contains("etaa"), "{err}");
        let err = parse(&format!("bogus = 1\n{MINIMAL}")).unwrap_err().to_string();
        assert!(err.contains("bogus"), "{err}");
    }

    #[test]
    fn cross_solver_keys_are_rejected() {
        let err = parse(&format!("{MINIMAL}alpha = 0.1\n")).unwrap_err().to_string();
        assert!(err.contains("alpha"), "{err}");
        let text = MINIMAL.replace("name = \"sr2\"", "name = \"proxgen\"\nsigma0 = 2.0");
        assert!(parse(&text).is_err());
        let text = MINIMAL.replace("name = \"sr2\"", "name = \"proxsgd\"\nalpha = 1.5");
        assert!(parse(&text).unwrap_err().to_string().contains("alpha <= 1"));
    }

    #[test]
    fn auto_and_full_literals() {
        let text = format!("{MINIMAL}sigma0 = \"auto\"\nbatch_size = \"full\"\nkappa_m = 0.5\nepochs = 3\n");
        let spec = parse(&text).unwrap();
        let s = &spec.solvers[0];
        assert_eq!(s.sigma0, Some(AutoOr::Auto));
        assert_eq!(s.batch_size, Some(BatchSize::Full));
        let cfg = sr2_config(s, 42.0, 20);
        assert_eq!(cfg.sigma0, 42.0);
        assert_eq!(cfg.kappa_m, KappaM::Fixed(0.5));
        assert_eq!(cfg.max_iter, 3);
        assert!(parse(&format!("{MINIMAL}batch_size = \"half\"\n")).is_err());
        assert!(parse(&format!("{MINIMAL}epochs = 2\nmax_iter = 5\n")).is_err());
    }

    #[test]
    fn epochs_use_ceiling() {
        let text = format!("{MINIMAL}batch_size = 6\nepochs = 2\n");
        let spec = parse(&text).unwrap();
        let cfg = sr2_config(&spec.solvers[0], 1.0, 20);
        assert_eq!(cfg.max_iter, 8);
        assert_eq!(cfg.audit_every, 4);
    }

    #[test]
    fn reg_grid() {
        let text = format!(
            "{MINIMAL}\n[[reg]]\nkind = \"l0\"\nlambda = [0.1, 0.2]\n[[reg]]\nkind = \"l0_ball\"\nk = [2]\n[[reg]]\nkind = \"zero\"\n"
        );
        let spec = parse(&text).unwrap();
        assert_eq!(spec.regs.len(), 4);
        let bad = format!("{MINIMAL}\n[[reg]]\nkind = \"l1\"\nlambda = [-1.0]\n");
        assert!(parse(&bad).is_err());
        let bad = format!("{MINIMAL}\n[[reg]]\nkind = \"l0_ball\"\nlambda = [1.0]\n");
        assert!(parse(&bad).is_err());
    }

    #[test]
    fn problem_checks() {
        assert!(parse(&MINIMAL.replace("dim = 3", "")).is_err());
        let dup = format!("{MINIMAL}\n[[problem]]\nname = \"ls\"\nkind = \"logistic\"\nn_terms = 5\ndim = 2\n");
        assert!(parse(&dup).unwrap_err().to_string().contains("duplicate"));
        assert!(parse(&MINIMAL.replace("least_squares", "sparse_recovery")).is_err());
        let two = format!("{MINIMAL}\n[[solver]]\nname = \"sr2\"\n");
        assert!(parse(&two).unwrap_err().to_string().contains("label"));
    }
}
