//! Reference oracles shared by the integration and acceptance suites. They avoid
//! the crate's prox and solver code paths on purpose.

#![allow(dead_code)]

use sr2kit_core::Problem;

/// Independent soft threshold: `argmin_w ½(w − v)² + t|w|`.
pub fn soft(v: f64, t: f64) -> f64 {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        0.0
    }
}

pub struct IstaResult {
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    pub gradient_map_norm: f64,
}

/// Fixed-step proximal gradient for `f + λ‖·‖₁` with step `1/L`, run until the
/// gradient map `L‖x − prox(x − ∇f(x)/L)‖` drops to `tol`.
pub fn ista<P: Problem + ?Sized>(p: &P, lambda: f64, x0: &[f64], tol: f64, max_iter: usize) -> IstaResult {
    let l = p.lipschitz_bound().expect("ista needs a Lipschitz bound");
    let mut x = x0.to_vec();
    let mut gm = f64::INFINITY;
    let mut it = 0;
    while it < max_iter {
        let g = p.full_grad(&x).unwrap();
        let next: Vec<f64> = x
            .iter()
            .zip(&g)
            .map(|(xi, gi)| soft(xi - gi / l, lambda / l))
            .collect();
        gm = l * x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        x = next;
        it += 1;
        if gm <= tol {
            break;
        }
    }
    let objective = p.full_value(&x).unwrap() + lambda * x.iter().map(|v| v.abs()).sum::<f64>();
    IstaResult {
        x,
        objective,
        iterations: it,
        gradient_map_norm: gm,
    }
}

/// Central differences with step `h`.
pub fn fd_grad<P: Problem + ?Sized>(p: &P, x: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len());
    let mut xp = x.to_vec();
    for i in 0..x.len() {
        let orig = xp[i];
        xp[i] = orig + h;
        let fp = p.full_value(&xp).unwrap();
        xp[i] = orig - h;
        let fm = p.full_value(&xp).unwrap();
        xp[i] = orig;
        out.push((fp - fm) / (2.0 * h));
    }
    out
}

/// Largest per-coordinate error `|a − b| / max(|a|, |b|, 1)`.
pub fn max_rel_err(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(1.0))
        .fold(0.0, f64::max)
}
