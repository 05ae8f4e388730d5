//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Runtime limits are part of each criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use sr2kit::config::ExperimentSpec;
use sr2kit::harness::{run_experiments, RunOptions};
use sr2kit::output::read_trace;
use sr2kit_core::baselines::{run_baseline, BaselineConfig, BaselineKind};
use sr2kit_core::diagnostics::{accuracy, sparsity_report};
use sr2kit_core::problem::{
    make_classification_data, make_least_squares, make_logistic, make_sparse_recovery, make_tiny_mlp, support, MlpLoss,
};
use sr2kit_core::regularizer::oracle::{l0_ball_enumeration, prox_grid_oracle, scalar_objective};
use sr2kit_core::sr2::{self, sigma_succ_bound, KappaM, RhoMode};
use sr2kit_core::{linalg, seeded_rng, IterationRecord, Problem, Regularizer, SolverConfig, StopReason};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

/// Every SR2 record produced by the suite, for the model-decrease check.
#[derive(Default)]
struct Records {
    rows: Vec<(f64, f64, f64)>,
}

impl Records {
    fn add(&mut self, trace: &[IterationRecord]) {
        self.rows
            .extend(trace.iter().map(|r| (r.model_decrease, r.sigma, r.step_norm_sq)));
    }
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn lasso_instance() -> sr2kit_core::problem::SparseRecovery {
    make_sparse_recovery(&mut seeded_rng(2024), 400, 100, 10, 0.1).unwrap()
}

fn c1_prox_oracle() -> Verdict {
    let mut rng = seeded_rng(1);
    let mut worst = f64::NEG_INFINITY;
    for variant in 0..3 {
        for _ in 0..10_000 {
            let lambda = rng.random_range(0.0..2.0);
            let reg = match variant {
                0 => Regularizer::Zero,
                1 => Regularizer::l1(lambda).unwrap(),
                _ => Regularizer::l0(lambda).unwrap(),
            };
            let x = rng.random_range(-3.0..3.0);
            let g = rng.random_range(-3.0..3.0);
            let sigma = rng.random_range(0.1..10.0);
            let s = reg.shifted_prox(&[x], &[g], sigma).unwrap().step[0];
            let grid = prox_grid_oracle(&reg, x, g, sigma, -40.0, 40.0, 1e-3).unwrap();
            let a = scalar_objective(&reg, x, g, sigma, s).unwrap();
            let b = scalar_objective(&reg, x, g, sigma, grid).unwrap();
            worst = worst.max(a - b);
        }
    }
    let mut ball_worst = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let n = rng.random_range(1..=12);
        let k = rng.random_range(0..=n.min(6));
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        let g: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        let sigma = rng.random_range(0.1..10.0);
        let target = Regularizer::l0_ball(k).prox_target(&x, &g, sigma).unwrap();
        let (_, best) = l0_ball_enumeration(&x, &g, sigma, k);
        let s = linalg::sub(&target, &x);
        let obj = linalg::dot(&g, &s) + 0.5 * sigma * linalg::norm_sq(&s);
        ball_worst = ball_worst.max(obj - best);
    }
    verdict(
        worst <= 1e-6 && ball_worst <= 1e-10,
        format!("max(prox − grid) = {worst:.2e} over 30000 scalars, max(ball − enumeration) = {ball_worst:.2e} over 1000"),
    )
}

fn c2_model_decrease(records: &Records) -> Verdict {
    let worst = records
        .rows
        .iter()
        .map(|(dpsi, sigma, s2)| 0.5 * sigma * s2 - dpsi)
        .fold(f64::NEG_INFINITY, f64::max);
    verdict(
        !records.rows.is_empty() && worst <= 1e-12,
        format!("{} iterations, max(½σ‖s‖² − Δψ) = {worst:.2e}", records.rows.len()),
    )
}

fn c3_accept_above_threshold(records: &mut Records) -> Verdict {
    let mut checked = 0;
    let mut rejected = 0;
    let mut total = 0;
    for seed in 0..10u64 {
        let p = make_least_squares(&mut seeded_rng(300 + seed), 200, 30, 0.5).unwrap();
        let kappa = p.lipschitz_bound().unwrap() / 2.0;
        let threshold = sigma_succ_bound(kappa, 0.99);
        let cfg = SolverConfig {
            kappa_m: KappaM::Fixed(kappa),
            max_iter: 500,
            // ‖s‖² ≥ 1e-14 keeps ρ well above rounding noise
            epsilon: 1e-7,
            // σ decays by γ3 per very successful step, so start well above
            sigma0: 100.0 * threshold,
            seed,
            ..SolverConfig::full_batch()
        };
        let res = sr2::run(&p, &Regularizer::l1(0.05).unwrap(), vec![0.0; 30], &cfg).unwrap();
        records.add(&res.trace);
        total += res.trace.len();
        for r in &res.trace {
            if r.sigma >= threshold && r.step_norm_sq > 0.0 {
                checked += 1;
                if !r.accepted() {
                    rejected += 1;
                }
            }
        }
    }
    verdict(
        checked > 0 && rejected == 0,
        format!("{rejected} rejections among {checked} iterations with σ ≥ σ_succ ({total} iterations in all)"),
    )
}

fn c4_descent(records: &mut Records) -> Verdict {
    let lasso = lasso_instance();
    let logit = make_logistic(&mut seeded_rng(2025), 300, 20, 3.0).unwrap();
    let cases: [(&str, &dyn Problem, Regularizer); 2] = [
        ("lasso", &lasso.problem, Regularizer::l1(0.1).unwrap()),
        ("logistic", &logit, Regularizer::l1(1e-3).unwrap()),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, p, reg) in cases {
        let cfg = SolverConfig {
            rho_mode: RhoMode::Full,
            max_iter: 2000,
            epsilon: 1e-8,
            ..SolverConfig::full_batch()
        };
        let res = sr2::run(p, &reg, vec![0.0; p.dim()], &cfg).unwrap();
        records.add(&res.trace);
        let mut prev = res.initial_objective;
        let mut violations = 0;
        for r in &res.trace {
            let f = r.full_objective.unwrap();
            if f > prev || (r.accepted() && prev - f < cfg.eta1 * r.model_decrease) {
                violations += 1;
            }
            prev = f;
        }
        ok &= violations == 0;
        notes.push(format!("{name}: {violations} violations in {} iterations", res.trace.len()));
    }
    verdict(ok, notes.join(", "))
}

fn c5_lasso(records: &mut Records) -> Verdict {
    let inst = lasso_instance();
    let p = &inst.problem;
    let reference = common::ista(p, 0.1, &[0.0; 100], 1e-10, 1_000_000);
    let res = sr2::run(p, &Regularizer::l1(0.1).unwrap(), vec![0.0; 100], &SolverConfig::full_batch()).unwrap();
    records.add(&res.trace);
    let gap = (res.final_objective - reference.objective).abs();
    verdict(
        reference.gradient_map_norm <= 1e-10 && gap <= 1e-6,
        format!(
            "|F_sr2 − F_ista| = {gap:.2e} (ISTA gradient map {:.1e}, SR2 {} iterations, {})",
            reference.gradient_map_norm,
            res.trace.len(),
            res.stop_reason
        ),
    )
}

fn c6_support(records: &mut Records) -> Verdict {
    let inst = make_sparse_recovery(&mut seeded_rng(2024), 800, 200, 10, 0.0).unwrap();
    let p = &inst.problem;
    let reg = Regularizer::l0(inst.suggested_l0_lambda).unwrap();
    let cfg = SolverConfig {
        epsilon: 1e-4,
        max_iter: 100_000,
        ..SolverConfig::full_batch()
    };
    let s = sr2::run(p, &reg, vec![0.0; 200], &cfg).unwrap();
    records.add(&s.trace);
    let bcfg = BaselineConfig {
        alpha: 1.0 / p.lipschitz_bound().unwrap(),
        batch_size: None,
        max_iter: 2000,
        ..BaselineConfig::default()
    };
    let b = run_baseline(BaselineKind::ProxGen, p, &reg, vec![0.0; 200], &bcfg).unwrap();
    let sr2_ok = support(&s.x) == inst.true_support;
    let gen_ok = support(&b.x) == inst.true_support;
    let est = s.stationarity.unwrap_or(f64::INFINITY);
    verdict(
        sr2_ok && gen_ok && est <= 1e-8,
        format!("SR2 support {sr2_ok}, ProxGEN support {gen_ok}, E‖s‖² estimate {est:.2e} ≤ 1e-8"),
    )
}

fn c7_stochastic(records: &mut Records) -> Verdict {
    let p = make_logistic(&mut seeded_rng(2024), 2000, 50, 4.0).unwrap();
    let reg = Regularizer::l1(1e-4).unwrap();
    let batch = 128;
    let iters = 20 * 2000usize.div_ceil(batch);
    let l = p.lipschitz_bound().unwrap();
    let cfg = SolverConfig {
        sigma0: sigma_succ_bound(l / 2.0, 0.99),
        batch_size: Some(batch),
        max_iter: iters,
        ..SolverConfig::default()
    };
    let x0 = vec![0.0; 50];
    let s = sr2::run(&p, &reg, x0.clone(), &cfg).unwrap();
    records.add(&s.trace);
    let base = |kind, alpha| {
        let c = BaselineConfig {
            alpha,
            batch_size: Some(batch),
            max_iter: iters,
            ..BaselineConfig::default()
        };
        run_baseline(kind, &p, &reg, x0.clone(), &c).unwrap()
    };
    let g = base(BaselineKind::ProxGen, 1.0 / l);
    let q = base(BaselineKind::ProxSgd, (1.0 / l).min(1.0));
    let acc = |x: &[f64]| accuracy(&p, x).unwrap();
    let below = |x: &[f64]| sparsity_report(x, &[1e-3]).pct_below(1e-3).unwrap();
    let (sa, ga, qa) = (acc(&s.x), acc(&g.x), acc(&q.x));
    let (ss, qs) = (below(&s.x), below(&q.x));
    let pass = sa >= ga - 1.0 && sa >= qa - 1.0 && ss > qs;
    verdict(
        pass,
        format!(
            "accuracy SR2 {sa:.2}% ProxGEN {ga:.2}% ProxSGD {qa:.2}%; % |w| ≤ 1e-3 SR2 {ss:.1} ProxGEN {:.1} ProxSGD {qs:.1}",
            below(&g.x)
        ),
    )
}

fn c8_complexity(records: &mut Records) -> Verdict {
    let inst = lasso_instance();
    let mut counts = Vec::new();
    for eps in [1e-1, 1e-2, 1e-3] {
        let cfg = SolverConfig {
            epsilon: eps,
            max_iter: 100_000,
            ..SolverConfig::full_batch()
        };
        let res = sr2::run(&inst.problem, &Regularizer::l1(0.1).unwrap(), vec![0.0; 100], &cfg).unwrap();
        records.add(&res.trace);
        counts.push((eps, res.trace.len(), res.stop_reason == StopReason::Stationary));
    }
    let finite = counts.iter().all(|c| c.2);
    let monotone = counts.windows(2).all(|w| w[0].1 <= w[1].1);
    let shown: Vec<String> = counts.iter().map(|(e, t, _)| format!("t({e:e}) = {t}")).collect();
    verdict(finite && monotone, shown.join(", "))
}

fn c9_gradients() -> Verdict {
    let mut rng = seeded_rng(9);
    let ls = make_least_squares(&mut rng, 50, 8, 0.3).unwrap();
    let sr = make_sparse_recovery(&mut rng, 40, 12, 3, 0.1).unwrap().problem;
    let lg = make_logistic(&mut rng, 60, 6, 2.0).unwrap();
    let data = make_classification_data(&mut rng, 40, 3, 2.0).unwrap();
    let mlp_l = make_tiny_mlp(&mut rng, data.clone(), 4, MlpLoss::Logistic).unwrap();
    let mlp_s = make_tiny_mlp(&mut rng, data, 4, MlpLoss::Squared).unwrap();
    let problems: [(&str, &dyn Problem); 5] = [
        ("least_squares", &ls),
        ("sparse_recovery", &sr),
        ("logistic", &lg),
        ("mlp_logistic", &mlp_l),
        ("mlp_squared", &mlp_s),
    ];
    let mut worst = 0.0f64;
    for (_, p) in problems {
        for _ in 0..20 {
            let x: Vec<f64> = (0..p.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let g = p.full_grad(&x).unwrap();
            worst = worst.max(common::max_rel_err(&g, &common::fd_grad(p, &x, 1e-6)));
        }
    }
    verdict(worst <= 1e-5, format!("5 problems × 20 points, max relative error {worst:.2e}"))
}

fn c10_determinism(records: &mut Records) -> Verdict {
    let config = repo_root().join("configs/matrix.toml");
    let spec = ExperimentSpec::from_path(&config).unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let sa = run_experiments(&spec, &RunOptions { out: a.path().into(), jobs: Some(4) }).unwrap();
    run_experiments(&spec, &RunOptions { out: b.path().into(), jobs: Some(1) }).unwrap();
    let mut differing = Vec::new();
    for cell in &sa.cells {
        let load = |root: &Path| {
            let rows = read_trace(&root.join("cells").join(&cell.cell).join("trace.csv")).unwrap();
            rows.into_iter()
                .map(|mut r| {
                    r.pop(); // wall_time
                    r
                })
                .collect::<Vec<_>>()
        };
        let (ta, tb) = (load(a.path()), load(b.path()));
        if ta != tb {
            differing.push(cell.cell.clone());
        }
        if cell.solver == "sr2" {
            for r in &ta {
                let num = |i: usize| r[i].parse::<f64>().unwrap();
                records.rows.push((num(7), num(4), num(6)));
            }
        }
    }
    verdict(
        differing.is_empty() && !sa.cells.is_empty(),
        format!("{} cells compared, {} differ {:?}", sa.cells.len(), differing.len(), differing),
    )
}

fn main() -> ExitCode {
    let mut records = Records::default();
    let mut results: Vec<(u32, &str, f64, f64, Verdict)> = Vec::new();
    macro_rules! criterion {
        ($n:expr, $name:expr, $limit:expr, $body:expr) => {{
            let start = Instant::now();
            let v = $body;
            results.push(($n, $name, start.elapsed().as_secs_f64(), $limit, v));
        }};
    }
    criterion!(1, "prox oracle equivalence", 60.0, c1_prox_oracle());
    criterion!(3, "acceptance above σ_succ", 30.0, c3_accept_above_threshold(&mut records));
    criterion!(4, "descent with full ρ", f64::INFINITY, c4_descent(&mut records));
    criterion!(5, "lasso matches ISTA", 10.0, c5_lasso(&mut records));
    criterion!(6, "ℓ0 support recovery", 30.0, c6_support(&mut records));
    criterion!(7, "stochastic logistic sanity", 120.0, c7_stochastic(&mut records));
    criterion!(8, "complexity trend", f64::INFINITY, c8_complexity(&mut records));
    criterion!(9, "gradient certification", f64::INFINITY, c9_gradients());
    criterion!(10, "determinism", f64::INFINITY, c10_determinism(&mut records));
    criterion!(2, "model decrease bound", f64::INFINITY, c2_model_decrease(&records));
    results.sort_by_key(|r| r.0);

    let mut failed = 0;
    for (n, name, secs, limit, v) in &results {
        let in_time = secs <= limit;
        let pass = v.pass && in_time;
        failed += usize::from(!pass);
        let timing = if limit.is_finite() {
            format!("{secs:.2}s, limit {limit:.0}s")
        } else {
            format!("{secs:.2}s")
        };
        println!(
            "criterion {n:>2} {}: {name}: {} [{timing}]",
            if pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
