//! Expands an [`ExperimentSpec`] into cells, runs them and writes every artifact.
//!
//! Output layout under `out/`:
//!
//! ```text
//! summary.json
//! skipped.json
//! cells/<cell>/trace.csv
//! cells/<cell>/model.txt
//! cells/<cell>/meta.json
//! cells/<cell>/prune_sparsity.dat    (α, % zero after pruning)
//! cells/<cell>/prune_accuracy.dat    (α, accuracy after pruning; classifiers only)
//! cells/<cell>/prune_objective.dat   (α, F after pruning)
//! cells/<cell>/objective.dat         (iteration, F)
//! cells/<cell>/sigma.dat             (iteration, σ)
//! ```
//!
//! Everything except the `wall_time` trace column is a function of the config.

use std::fs::{self, File};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use log::{info, warn};
use rayon::prelude::*;
use sr2kit_core::baselines::{run_baseline_with_clock, BaselineConfig, BaselineKind};
use sr2kit_core::diagnostics::{self, prune, sparsity_report};
use sr2kit_core::problem::{
    make_classification_data, make_least_squares, make_logistic, make_sparse_recovery, make_tiny_mlp, support,
    LeastSquares, Logistic, MlpLoss,
};
use sr2kit_core::sr2::{self, sigma_succ_bound, KappaM};
use sr2kit_core::trace::RunFailure;
use sr2kit_core::{seeded_rng, Problem, Regularizer, RunResult};

use crate::config::{
    baseline_config, epoch_length, solver_label, sr2_config, ExperimentSpec, FormatName, ProblemKind, ProblemSpec,
    SolverName, SolverSpec,
};
use crate::io::{self, DataFormat};
use crate::output::{self, Summary, SummaryRow};

pub const SUMMARY_VERSION: u32 = 1;

/// A problem instance plus what the generator knows about it.
pub struct BuiltProblem {
    pub name: String,
    pub problem: Box<dyn Problem>,
    pub true_support: Option<Vec<usize>>,
}

pub fn build_problem(spec: &ProblemSpec) -> anyhow::Result<BuiltProblem> {
    let mut rng = seeded_rng(spec.instance_seed);
    let mut true_support = None;
    let problem: Box<dyn Problem> = if let Some(path) = &spec.data {
        let format = match spec.format {
            Some(FormatName::Csv) => DataFormat::Csv,
            Some(FormatName::Libsvm) => DataFormat::Libsvm,
            None => DataFormat::from_path(path),
        };
        let data = io::load_dataset(path, format, spec.dim)?;
        match spec.kind {
            ProblemKind::LeastSquares => Box::new(LeastSquares::from_dataset(&data)?),
            ProblemKind::Logistic => Box::new(Logistic::from_dataset(&data)?),
            ProblemKind::Mlp => {
                let loss = MlpLoss::from(spec.loss);
                let data = if loss == MlpLoss::Logistic { data.to_sign_labels() } else { data };
                Box::new(make_tiny_mlp(&mut rng, data, spec.hidden, loss)?)
            }
            ProblemKind::SparseRecovery => bail!("sparse_recovery cannot load data"),
        }
    } else {
        let n = spec.n_terms.context("n_terms")?;
        let d = spec.dim.context("dim")?;
        match spec.kind {
            ProblemKind::LeastSquares => Box::new(make_least_squares(&mut rng, n, d, spec.noise_sd)?),
            ProblemKind::SparseRecovery => {
                let inst = make_sparse_recovery(&mut rng, n, d, spec.support.context("support")?, spec.noise_sd)?;
                true_support = Some(inst.true_support);
                Box::new(inst.problem)
            }
            ProblemKind::Logistic => Box::new(make_logistic(&mut rng, n, d, spec.separation)?),
            ProblemKind::Mlp => {
                let data = make_classification_data(&mut rng, n, d, spec.separation)?;
                let loss = MlpLoss::from(spec.loss);
                Box::new(make_tiny_mlp(&mut rng, data, spec.hidden, loss)?)
            }
        }
    };
    Ok(BuiltProblem {
        name: spec.name.clone(),
        problem,
        true_support,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub id: String,
    pub problem: usize,
    pub solver: usize,
    pub reg: Regularizer,
    pub seed: u64,
}

fn reg_tag(reg: &Regularizer) -> String {
    match reg {
        Regularizer::Zero => "zero".into(),
        Regularizer::L0Ball { k } => format!("l0ball-{k}"),
        r => format!("{}-{}", r.name(), r.weight()),
    }
}

/// Cells in (problem, solver, regularizer, seed) order, and the skip log for
/// ProxSGD with nonconvex regularizers.
pub fn plan(spec: &ExperimentSpec) -> (Vec<Cell>, Vec<String>) {
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for (pi, p) in spec.problems.iter().enumerate() {
        for (si, s) in spec.solvers.iter().enumerate() {
            for reg in &spec.regs {
                let label = solver_label(s);
                if s.name == SolverName::Proxsgd && !reg.is_convex() {
                    let msg = format!("{}/{label}/{}: proxsgd needs a convex regularizer", p.name, reg_tag(reg));
                    if !skipped.contains(&msg) {
                        skipped.push(msg);
                    }
                    continue;
                }
                for &seed in &spec.seeds {
                    cells.push(Cell {
                        index: cells.len(),
                        id: format!("{}__{label}__{}__seed{seed}", p.name, reg_tag(reg)),
                        problem: pi,
                        solver: si,
                        reg: *reg,
                        seed,
                    });
                }
            }
        }
    }
    (cells, skipped)
}

/// Replaces the seed list, as `--seed-override` and `SR2KIT_SEED` do.
pub fn override_seeds(spec: &mut ExperimentSpec, seed: Option<u64>) {
    if let Some(s) = seed {
        spec.seeds = vec![s];
    }
}

fn auto_sigma0(p: &dyn Problem, s: &SolverSpec) -> f64 {
    let cfg = sr2_config(s, 1.0, p.num_terms());
    let kappa = match cfg.kappa_m {
        KappaM::Fixed(k) => Some(k),
        KappaM::Auto => p.lipschitz_bound().map(|l| l / 2.0),
    };
    match kappa {
        Some(k) if k > 0.0 => sigma_succ_bound(k, cfg.eta2).max(cfg.sigma_min),
        _ => 1.0,
    }
}

fn auto_alpha(p: &dyn Problem, name: SolverName) -> f64 {
    let a = BaselineConfig::default_alpha(p);
    if name == SolverName::Proxsgd {
        a.min(1.0)
    } else {
        a
    }
}

struct Executed {
    result: Result<RunResult, RunFailure>,
    batch: usize,
}

fn execute(bp: &BuiltProblem, s: &SolverSpec, reg: &Regularizer, seed: u64) -> Executed {
    let p = bp.problem.as_ref();
    let n_terms = p.num_terms();
    let x0 = match reg {
        // the anchor must lie in the ball
        Regularizer::L0Ball { .. } if !reg.value(&p.initial_point()).is_finite() => vec![0.0; p.dim()],
        _ => p.initial_point(),
    };
    let start = Instant::now();
    let clock = move || start.elapsed().as_secs_f64();
    match s.name {
        SolverName::Sr2 => {
            let mut cfg = sr2_config(s, auto_sigma0(p, s), n_terms);
            cfg.seed = seed;
            Executed {
                batch: cfg.batch_size.unwrap_or(n_terms),
                result: sr2::run_with_clock(p, reg, x0, &cfg, clock),
            }
        }
        SolverName::Proxgen | SolverName::Proxsgd => {
            let mut cfg = baseline_config(s, auto_alpha(p, s.name), n_terms);
            cfg.seed = seed;
            let kind = if s.name == SolverName::Proxgen {
                BaselineKind::ProxGen
            } else {
                BaselineKind::ProxSgd
            };
            Executed {
                batch: cfg.batch_size.unwrap_or(n_terms),
                result: run_baseline_with_clock(kind, p, reg, x0, &cfg, clock),
            }
        }
    }
}

fn accuracy_of(p: &dyn Problem, x: &[f64]) -> Option<f64> {
    diagnostics::accuracy(p, x).ok()
}

fn run_cell(spec: &ExperimentSpec, problems: &[BuiltProblem], cell: &Cell, cells_dir: &Path) -> anyhow::Result<SummaryRow> {
    let bp = &problems[cell.problem];
    let s = &spec.solvers[cell.solver];
    let p = bp.problem.as_ref();
    info!("cell {}: start", cell.id);
    let Executed { result, batch } = execute(bp, s, &cell.reg, cell.seed);
    let (x, trace, outcome) = match result {
        Ok(r) => {
            let x = r.x.clone();
            let trace = r.trace.clone();
            (x, trace, Ok(r))
        }
        Err(f) => {
            warn!("cell {}: {}", cell.id, f);
            (f.x.clone(), f.trace.clone(), Err(f))
        }
    };
    let epoch_len = epoch_length(p.num_terms(), Some(batch));

    let dir = cells_dir.join(&cell.id);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    output::write_trace(File::create(dir.join("trace.csv"))?, &trace, epoch_len)?;
    io::write_model(File::create(dir.join("model.txt"))?, &x)?;

    let full_value = |z: &[f64]| p.full_value(z).ok().map(|v| v + cell.reg.value(z));
    let mut sparsity = Vec::new();
    let mut acc = Vec::new();
    let mut obj = Vec::new();
    for &alpha in &spec.prune_thresholds {
        let (pruned, frac) = prune(&x, alpha);
        sparsity.push((alpha, 100.0 * frac));
        if let Some(a) = accuracy_of(p, &pruned) {
            acc.push((alpha, a));
        }
        if let Some(f) = full_value(&pruned) {
            obj.push((alpha, f));
        }
    }
    output::write_series(&dir.join("prune_sparsity.dat"), "alpha", "pct_zero", &sparsity)?;
    if p.labels().is_some() {
        output::write_series(&dir.join("prune_accuracy.dat"), "alpha", "accuracy", &acc)?;
    }
    output::write_series(&dir.join("prune_objective.dat"), "alpha", "objective", &obj)?;

    let initial = outcome.as_ref().ok().map(|r| r.initial_objective);
    let final_objective = match &outcome {
        Ok(r) => Some(r.final_objective),
        Err(_) => full_value(&x),
    };
    let mut series = Vec::new();
    if let Some(f0) = initial {
        series.push((0.0, f0));
    }
    for r in &trace {
        if let Some(f) = r.full_objective {
            series.push(((r.t + 1) as f64, f));
        }
    }
    if let (Some(f), Ok(_)) = (final_objective, &outcome) {
        let t_end = trace.len() as f64;
        if series.last().map(|(t, _)| *t) != Some(t_end) {
            series.push((t_end, f));
        }
    }
    output::write_series(&dir.join("objective.dat"), "iteration", "objective", &series)?;
    let sigmas: Vec<(f64, f64)> = trace.iter().map(|r| (r.t as f64, r.sigma)).collect();
    output::write_series(&dir.join("sigma.dat"), "iteration", "sigma", &sigmas)?;

    let report = sparsity_report(&x, &[1e-3]);
    let (lambda, k) = match cell.reg {
        Regularizer::Zero => (None, None),
        Regularizer::L0Ball { k } => (None, Some(k)),
        r => (Some(r.weight()), None),
    };
    let counters = match &outcome {
        Ok(r) => r.counters.clone(),
        Err(_) => Default::default(),
    };
    let row = SummaryRow {
        index: cell.index,
        cell: cell.id.clone(),
        problem: bp.name.clone(),
        solver: s.name.as_str().to_owned(),
        label: solver_label(s),
        reg: cell.reg.name().to_owned(),
        lambda,
        k,
        seed: cell.seed,
        status: if outcome.is_ok() { "ok" } else { "failed" }.to_owned(),
        error: outcome.as_ref().err().map(|f| f.to_string()),
        iterations: trace.len(),
        epochs: trace.len() as f64 / epoch_len as f64,
        stop_reason: outcome.as_ref().ok().map(|r| r.stop_reason.as_str().to_owned()),
        initial_objective: initial,
        final_objective,
        accuracy: accuracy_of(p, &x),
        pct_zero: report.pct_exact_zero,
        pct_below_1e_3: report.pct_below(1e-3).unwrap_or(0.0),
        nnz: report.nnz,
        dim: report.n,
        sigma_final: trace.last().map(|r| r.sigma),
        successes: counters.successes,
        very_successes: counters.very_successes,
        failures: counters.failures,
        assumption_rejections: counters.assumption_rejections,
        stationarity: outcome.as_ref().ok().and_then(|r| r.stationarity),
        support_recovered: bp.true_support.as_ref().map(|t| support(&x) == *t),
    };
    output::write_json(&dir.join("meta.json"), &row)?;
    info!(
        "cell {}: {} after {} iterations",
        cell.id,
        row.stop_reason.as_deref().unwrap_or("failed"),
        row.iterations
    );
    Ok(row)
}

pub struct RunOptions {
    pub out: PathBuf,
    pub jobs: Option<usize>,
}

/// Runs every cell and writes `summary.json`. Cell failures are recorded in the
/// summary; only I/O and setup problems abort.
pub fn run_experiments(spec: &ExperimentSpec, opts: &RunOptions) -> anyhow::Result<Summary> {
    for w in &spec.warnings {
        warn!("{w}");
    }
    let (cells, skipped) = plan(spec);
    for s in &skipped {
        info!("skipped {s}");
    }
    let problems = spec
        .problems
        .iter()
        .map(build_problem)
        .collect::<anyhow::Result<Vec<_>>>()?;
    let cells_dir = opts.out.join("cells");
    fs::create_dir_all(&cells_dir).with_context(|| format!("creating {}", cells_dir.display()))?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build()?;
    let rows = pool.install(|| {
        cells
            .par_iter()
            .map(|c| run_cell(spec, &problems, c, &cells_dir))
            .collect::<anyhow::Result<Vec<_>>>()
    })?;
    let summary = Summary {
        version: SUMMARY_VERSION,
        cells: rows,
        skipped,
    };
    output::write_json(&opts.out.join("skipped.json"), &summary.skipped)?;
    output::write_json(&opts.out.join("summary.json"), &summary)?;
    Ok(summary)
}

/// Rebuilds `summary.json` from the per-cell files: counts come from
/// `trace.csv`, sparsity from `model.txt`, the rest from `meta.json`.
pub fn rebuild_summary(out: &Path) -> anyhow::Result<Summary> {
    let cells_dir = out.join("cells");
    let mut rows = Vec::new();
    let entries = fs::read_dir(&cells_dir).with_context(|| format!("reading {}", cells_dir.display()))?;
    for entry in entries {
        let dir = entry?.path();
        if !dir.is_dir() {
            continue;
        }
        let mut row: SummaryRow = output::read_json(&dir.join("meta.json"))?;
        let trace = output::read_trace(&dir.join("trace.csv"))?;
        let x = io::load_model(&dir.join("model.txt"))?;
        let report = sparsity_report(&x, &[1e-3]);
        if row.iterations != trace.len() || row.dim != x.len() {
            warn!("{}: meta.json disagrees with trace/model; using trace/model", dir.display());
        }
        row.iterations = trace.len();
        row.pct_zero = report.pct_exact_zero;
        row.pct_below_1e_3 = report.pct_below(1e-3).unwrap_or(0.0);
        row.nnz = report.nnz;
        row.dim = report.n;
        rows.push(row);
    }
    rows.sort_by_key(|r| r.index);
    let skipped_path = out.join("skipped.json");
    let skipped = if skipped_path.exists() {
        output::read_json(&skipped_path)?
    } else {
        Vec::new()
    };
    let summary = Summary {
        version: SUMMARY_VERSION,
        cells: rows,
        skipped,
    };
    output::write_json(&out.join("summary.json"), &summary)?;
    Ok(summary)
}
