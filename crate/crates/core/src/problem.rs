//! Finite-sum smooth losses `f(x) = (1/N) Σ f_i(x)`.
//!
//! Term indices are zero-based. Sums over a sample always run in ascending index
//! order, so a full-batch [`SampleSet`] reproduces `full_value`/`full_grad`
//! bitwise.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Nonempty, strictly ascending subset of `0..N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    indices: Vec<usize>,
    without_replacement: bool,
}

impl SampleSet {
    pub fn full(n_terms: usize) -> Self {
        Self {
            indices: (0..n_terms).collect(),
            without_replacement: true,
        }
    }

    /// Sorts and validates `indices` against `n_terms`.
    pub fn from_indices(mut indices: Vec<usize>, n_terms: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::invalid("sample set is empty"));
        }
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("sample set has repeated indices"));
        }
        if *indices.last().unwrap() >= n_terms {
            return Err(Error::invalid(format!(
                "sample index {} out of range for {} terms",
                indices.last().unwrap(),
                n_terms
            )));
        }
        Ok(Self {
            indices,
            without_replacement: true,
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn without_replacement(&self) -> bool {
        self.without_replacement
    }
}

/// Uniform draw of `batch` distinct indices from `0..n_terms`.
pub fn draw_sample<R: Rng + ?Sized>(rng: &mut R, n_terms: usize, batch: usize) -> Result<SampleSet> {
    if batch == 0 || batch > n_terms {
        return Err(Error::invalid(format!(
            "batch size {batch} must lie in 1..={n_terms}"
        )));
    }
    if batch == n_terms {
        return Ok(SampleSet::full(n_terms));
    }
    let mut indices = rand::seq::index::sample(rng, n_terms, batch).into_vec();
    indices.sort_unstable();
    Ok(SampleSet {
        indices,
        without_replacement: true,
    })
}

/// Smooth finite-sum objective.
pub trait Problem: Send + Sync {
    fn dim(&self) -> usize;

    fn num_terms(&self) -> usize;

    fn descriptor(&self) -> String;

    /// `f_i(x)`.
    fn term_value(&self, x: &[f64], i: usize) -> f64;

    /// `out += scale · ∇f_i(x)`.
    fn add_term_grad(&self, x: &[f64], i: usize, scale: f64, out: &mut [f64]);

    /// Upper bound on the Lipschitz constant of `∇f`, when one is known.
    fn lipschitz_bound(&self) -> Option<f64> {
        None
    }

    /// `±1` labels for classification problems.
    fn labels(&self) -> Option<&[f64]> {
        None
    }

    /// Real-valued prediction (margin) for sample `i`.
    fn predict(&self, x: &[f64], i: usize) -> f64;

    /// Suggested starting point.
    fn initial_point(&self) -> Vec<f64> {
        vec![0.0; self.dim()]
    }

    fn full_value(&self, x: &[f64]) -> Result<f64> {
        self.check_point(x)?;
        Ok(self.mean_value(x, &SampleSet::full(self.num_terms())))
    }

    fn full_grad(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_point(x)?;
        Ok(self.mean_grad(x, &SampleSet::full(self.num_terms())))
    }

    fn sampled_value(&self, x: &[f64], xi: &SampleSet) -> Result<f64> {
        self.check_point(x)?;
        self.check_sample(xi)?;
        Ok(self.mean_value(x, xi))
    }

    fn sampled_grad(&self, x: &[f64], xi: &SampleSet) -> Result<Vec<f64>> {
        self.check_point(x)?;
        self.check_sample(xi)?;
        Ok(self.mean_grad(x, xi))
    }

    #[doc(hidden)]
    fn mean_value(&self, x: &[f64], xi: &SampleSet) -> f64 {
        let total: f64 = xi.indices().iter().map(|&i| self.term_value(x, i)).sum();
        total / xi.len() as f64
    }

    #[doc(hidden)]
    fn mean_grad(&self, x: &[f64], xi: &SampleSet) -> Vec<f64> {
        let mut g = vec![0.0; self.dim()];
        for &i in xi.indices() {
            self.add_term_grad(x, i, 1.0, &mut g);
        }
        let m = xi.len() as f64;
        g.iter_mut().for_each(|v| *v /= m);
        g
    }

    #[doc(hidden)]
    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::invalid(format!(
                "point has dimension {}, problem expects {}",
                x.len(),
                self.dim()
            )));
        }
        if !linalg::all_finite(x) {
            return Err(Error::invalid("point has non-finite entries"));
        }
        Ok(())
    }

    #[doc(hidden)]
    fn check_sample(&self, xi: &SampleSet) -> Result<()> {
        match xi.indices().last() {
            None => Err(Error::invalid("sample set is empty")),
            Some(&last) if last >= self.num_terms() => Err(Error::invalid(format!(
                "sample index {last} out of range for {} terms",
                self.num_terms()
            ))),
            _ => Ok(()),
        }
    }
}

impl<P: Problem + ?Sized> Problem for Box<P> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn num_terms(&self) -> usize {
        (**self).num_terms()
    }
    fn descriptor(&self) -> String {
        (**self).descriptor()
    }
    fn term_value(&self, x: &[f64], i: usize) -> f64 {
        (**self).term_value(x, i)
    }
    fn add_term_grad(&self, x: &[f64], i: usize, scale: f64, out: &mut [f64]) {
        (**self).add_term_grad(x, i, scale, out)
    }
    fn lipschitz_bound(&self) -> Option<f64> {
        (**self).lipschitz_bound()
    }
    fn labels(&self) -> Option<&[f64]> {
        (**self).labels()
    }
    fn predict(&self, x: &[f64], i: usize) -> f64 {
        (**self).predict(x, i)
    }
    fn initial_point(&self) -> Vec<f64> {
        (**self).initial_point()
    }
}

/// Feature matrix with one target per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub features: Matrix,
    pub targets: Vec<f64>,
}

impl Dataset {
    pub fn new(features: Matrix, targets: Vec<f64>) -> Result<Self> {
        if features.rows() != targets.len() {
            return Err(Error::invalid(format!(
                "{} feature rows but {} targets",
                features.rows(),
                targets.len()
            )));
        }
        if !linalg::all_finite(features.as_slice()) || !linalg::all_finite(&targets) {
            return Err(Error::invalid("dataset has non-finite entries"));
        }
        Ok(Self { features, targets })
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn num_features(&self) -> usize {
        self.features.cols()
    }

    /// Maps targets to `±1` (positive → `+1`, otherwise `−1`).
    pub fn to_sign_labels(&self) -> Dataset {
        Dataset {
            features: self.features.clone(),
            targets: self
                .targets
                .iter()
                .map(|t| if *t > 0.0 { 1.0 } else { -1.0 })
                .collect(),
        }
    }

    pub fn is_sign_labelled(&self) -> bool {
        self.targets.iter().all(|t| *t == 1.0 || *t == -1.0)
    }
}

fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| StandardNormal.sample(rng))
        .collect::<Vec<f64>>();
    Matrix::from_row_major(rows, cols, data)
}

fn check_dims(n_terms: usize, dim: usize) -> Result<()> {
    if n_terms == 0 || dim == 0 {
        Err(Error::invalid("problem dimensions must be positive"))
    } else {
        Ok(())
    }
}

/// `f_i(x) = ½(a_iᵀx − b_i)²`.
#[derive(Debug, Clone)]
pub struct LeastSquares {
    design: Matrix,
    rhs: Vec<f64>,
    lipschitz: f64,
}

impl LeastSquares {
    pub fn new(design: Matrix, rhs: Vec<f64>) -> Result<Self> {
        check_dims(design.rows(), design.cols())?;
        if rhs.len() != design.rows() {
            return Err(Error::invalid("right-hand side length differs from row count"));
        }
        let lipschitz = design.gram_spectral_bound(5_000, 1e-13) / design.rows() as f64;
        Ok(Self {
            design,
            rhs,
            lipschitz,
        })
    }

    pub fn from_dataset(data: &Dataset) -> Result<Self> {
        Self::new(data.features.clone(), data.targets.clone())
    }

    pub fn design(&self) -> &Matrix {
        &self.design
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }
}

impl Problem for LeastSquares {
    fn dim(&self) -> usize {
        self.design.cols()
    }
    fn num_terms(&self) -> usize {
        self.design.rows()
    }
    fn descriptor(&self) -> String {
        format!("least_squares(N={}, n={})", self.num_terms(), self.dim())
    }
    fn term_value(&self, x: &[f64], i: usize) -> f64 {
        let r = linalg::dot(self.design.row(i), x) - self.rhs[i];
        0.5 * r * r
    }
    fn add_term_grad(&self, x: &[f64], i: usize, scale: f64, out: &mut [f64]) {
        let row = self.design.row(i);
        let r = linalg::dot(row, x) - self.rhs[i];
        linalg::axpy(scale * r, row, out);
    }
    fn lipschitz_bound(&self) -> Option<f64> {
        Some(self.lipschitz)
    }
    fn predict(&self, x: &[f64], i: usize) -> f64 {
        linalg::dot(self.design.row(i), x)
    }
}

/// `ln(1 + exp(t))` without overflow.
pub(crate) fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + libm::log1p(libm::exp(-t))
    } else {
        libm::log1p(libm::exp(t))
    }
}

pub(crate) fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + libm::exp(-t))
    } else {
        let e = libm::exp(t);
        e / (1.0 + e)
    }
}

/// `f_i(x) = ln(1 + exp(−y_i a_iᵀx))`, `y_i ∈ {−1, +1}`.
#[derive(Debug, Clone)]
pub struct Logistic {
    design: Matrix,
    labels: Vec<f64>,
    lipschitz: f64,
}

impl Logistic {
    pub fn new(design: Matrix, labels: Vec<f64>) -> Result<Self> {
        check_dims(design.rows(), design.cols())?;
        if labels.len() != design.rows() {
            return Err(Error::invalid("label count differs from row count"));
        }
        if !labels.iter().all(|y| *y == 1.0 || *y == -1.0) {
            return Err(Error::invalid("logistic labels must be -1 or +1"));
        }
        let lipschitz = design.gram_spectral_bound(5_000, 1e-13) / (4.0 * design.rows() as f64);
        Ok(Self {
            design,
            labels,
            lipschitz,
        })
    }

    pub fn from_dataset(data: &Dataset) -> Result<Self> {
        let data = data.to_sign_labels();
        Self::new(data.features, data.targets)
    }

    pub fn design(&self) -> &Matrix {
        &self.design
    }
}

impl Problem for Logistic {
    fn dim(&self) -> usize {
        self.design.cols()
    }
    fn num_terms(&self) -> usize {
        self.design.rows()
    }
    fn descriptor(&self) -> String {
        format!("logistic(N={}, n={})", self.num_terms(), self.dim())
    }
    fn term_value(&self, x: &[f64], i: usize) -> f64 {
        softplus(-self.labels[i] * linalg::dot(self.design.row(i), x))
    }
    fn add_term_grad(&self, x: &[f64], i: usize, scale: f64, out: &mut [f64]) {
        let row = self.design.row(i);
        let y = self.labels[i];
        let coef = -y * sigmoid(-y * linalg::dot(row, x));
        linalg::axpy(scale * coef, row, out);
    }
    fn lipschitz_bound(&self) -> Option<f64> {
        Some(self.lipschitz)
    }
    fn labels(&self) -> Option<&[f64]> {
        Some(&self.labels)
    }
    fn predict(&self, x: &[f64], i: usize) -> f64 {
        linalg::dot(self.design.row(i), x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlpLoss {
    /// `½(z − y)²`
    Squared,
    /// `ln(1 + exp(−y z))`
    Logistic,
}

/// One hidden tanh layer with a scalar output:
/// `z(a) = w₂ᵀ tanh(W₁a + b₁) + b₂`.
///
/// Parameters are packed as `[W₁ (row-major, hidden × d), b₁, w₂, b₂]`.
#[derive(Debug, Clone)]
pub struct TinyMlp {
    data: Dataset,
    hidden: usize,
    loss: MlpLoss,
    init: Vec<f64>,
}

impl TinyMlp {
    pub fn param_count(features: usize, hidden: usize) -> usize {
        hidden * features + 2 * hidden + 1
    }

    fn split<'a>(&self, x: &'a [f64]) -> (&'a [f64], &'a [f64], &'a [f64], f64) {
        let d = self.data.num_features();
        let h = self.hidden;
        let (w1, rest) = x.split_at(h * d);
        let (b1, rest) = rest.split_at(h);
        let (w2, rest) = rest.split_at(h);
        (w1, b1, w2, rest[0])
    }

    fn forward(&self, x: &[f64], i: usize, hidden_out: &mut [f64]) -> f64 {
        let (w1, b1, w2, b2) = self.split(x);
        let a = self.data.features.row(i);
        let d = a.len();
        for j in 0..self.hidden {
            hidden_out[j] = libm::tanh(linalg::dot(&w1[j * d..(j + 1) * d], a) + b1[j]);
        }
        linalg::dot(w2, hidden_out) + b2
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }
}

impl Problem for TinyMlp {
    fn dim(&self) -> usize {
        Self::param_count(self.data.num_features(), self.hidden)
    }
    fn num_terms(&self) -> usize {
        self.data.len()
    }
    fn descriptor(&self) -> String {
        format!(
            "tiny_mlp(N={}, d={}, hidden={}, loss={:?})",
            self.num_terms(),
            self.data.num_features(),
            self.hidden,
            self.loss
        )
    }
    fn term_value(&self, x: &[f64], i: usize) -> f64 {
        let mut h = vec![0.0; self.hidden];
        let z = self.forward(x, i, &mut h);
        let y = self.data.targets[i];
        match self.loss {
            MlpLoss::Squared => 0.5 * (z - y) * (z - y),
            MlpLoss::Logistic => softplus(-y * z),
        }
    }
    fn add_term_grad(&self, x: &[f64], i: usize, scale: f64, out: &mut [f64]) {
        let mut h = vec![0.0; self.hidden];
        let z = self.forward(x, i, &mut h);
        let y = self.data.targets[i];
        let dz = scale
            * match self.loss {
                MlpLoss::Squared => z - y,
                MlpLoss::Logistic => -y * sigmoid(-y * z),
            };
        let (_, _, w2, _) = self.split(x);
        let a = self.data.features.row(i);
        let d = a.len();
        let hd = self.hidden * d;
        for j in 0..self.hidden {
            let pre = dz * w2[j] * (1.0 - h[j] * h[j]);
            linalg::axpy(pre, a, &mut out[j * d..(j + 1) * d]);
            out[hd + j] += pre;
            out[hd + self.hidden + j] += dz * h[j];
        }
        out[hd + 2 * self.hidden] += dz;
    }
    fn labels(&self) -> Option<&[f64]> {
        match self.loss {
            MlpLoss::Logistic => Some(&self.data.targets),
            MlpLoss::Squared => None,
        }
    }
    fn predict(&self, x: &[f64], i: usize) -> f64 {
        let mut h = vec![0.0; self.hidden];
        self.forward(x, i, &mut h)
    }
    fn initial_point(&self) -> Vec<f64> {
        self.init.clone()
    }
}

/// Gaussian design `A` (entries `N(0,1)`), `b = A x_true + noise`.
pub fn make_least_squares<R: Rng + ?Sized>(
    rng: &mut R,
    n_terms: usize,
    dim: usize,
    noise_sd: f64,
) -> Result<LeastSquares> {
    check_dims(n_terms, dim)?;
    let design = gaussian_matrix(rng, n_terms, dim);
    let truth: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
    let mut rhs = design.mul_vec(&truth);
    for b in rhs.iter_mut() {
        let e: f64 = StandardNormal.sample(rng);
        *b += noise_sd * e;
    }
    LeastSquares::new(design, rhs)
}

/// Binary classification with Gaussian features.
///
/// A sparse direction `w★` (one fifth of the coordinates, entries `±1`) is drawn
/// and labels follow `P(y = +1) = sigmoid(separation · a_iᵀw★ / ‖w★‖)`. Large
/// `separation` approaches a linearly separable instance.
pub fn make_logistic<R: Rng + ?Sized>(
    rng: &mut R,
    n_terms: usize,
    dim: usize,
    separation: f64,
) -> Result<Logistic> {
    let data = make_classification_data(rng, n_terms, dim, separation)?;
    Logistic::new(data.features, data.targets)
}

/// The labelled data behind [`make_logistic`].
pub fn make_classification_data<R: Rng + ?Sized>(
    rng: &mut R,
    n_terms: usize,
    dim: usize,
    separation: f64,
) -> Result<Dataset> {
    check_dims(n_terms, dim)?;
    let design = gaussian_matrix(rng, n_terms, dim);
    let support = core::cmp::max(1, dim / 5);
    let mut direction = vec![0.0; dim];
    for i in rand::seq::index::sample(rng, dim, support) {
        direction[i] = if rng.random::<bool>() { 1.0 } else { -1.0 };
    }
    let scale = separation / libm::sqrt(support as f64);
    let labels = (0..n_terms)
        .map(|i| {
            let p = sigmoid(scale * linalg::dot(design.row(i), &direction));
            if rng.random::<f64>() < p {
                1.0
            } else {
                -1.0
            }
        })
        .collect();
    Dataset::new(design, labels)
}

/// Tanh network on `data` with Glorot-scaled random initial weights.
pub fn make_tiny_mlp<R: Rng + ?Sized>(
    rng: &mut R,
    data: Dataset,
    hidden: usize,
    loss: MlpLoss,
) -> Result<TinyMlp> {
    if data.is_empty() {
        return Err(Error::invalid("dataset has no rows"));
    }
    check_dims(data.len(), data.num_features())?;
    if hidden == 0 {
        return Err(Error::invalid("hidden layer must have at least one unit"));
    }
    if loss == MlpLoss::Logistic && !data.is_sign_labelled() {
        return Err(Error::invalid("logistic loss needs -1/+1 targets"));
    }
    let d = data.num_features();
    let s1 = libm::sqrt(2.0 / (d + hidden) as f64);
    let s2 = libm::sqrt(2.0 / (hidden + 1) as f64);
    let mut init = Vec::with_capacity(TinyMlp::param_count(d, hidden));
    for _ in 0..hidden * d {
        let e: f64 = StandardNormal.sample(rng);
        init.push(s1 * e);
    }
    init.extend(core::iter::repeat_n(0.0, hidden));
    for _ in 0..hidden {
        let e: f64 = StandardNormal.sample(rng);
        init.push(s2 * e);
    }
    init.push(0.0);
    Ok(TinyMlp {
        data,
        hidden,
        loss,
        init,
    })
}

/// Planted sparse regression instance.
#[derive(Debug, Clone)]
pub struct SparseRecovery {
    pub problem: LeastSquares,
    /// Ascending indices of the nonzeros of `x_star`.
    pub true_support: Vec<usize>,
    pub x_star: Vec<f64>,
    /// `ℓ0` weight for which `x_star` is a fixed point of the hard-thresholded
    /// step at any `σ ≥ L`, with margin: `min|x★_i|² / (8 L)`.
    pub suggested_l0_lambda: f64,
}

/// `A` with `N(0,1)` entries, `x★` with `support_size` nonzeros of magnitude in
/// `[0.5, 2]` and random sign, `b = A x★ + noise_sd · N(0,1)`.
pub fn make_sparse_recovery<R: Rng + ?Sized>(
    rng: &mut R,
    n_terms: usize,
    dim: usize,
    support_size: usize,
    noise_sd: f64,
) -> Result<SparseRecovery> {
    check_dims(n_terms, dim)?;
    if support_size > dim {
        return Err(Error::invalid("support size exceeds dimension"));
    }
    let design = gaussian_matrix(rng, n_terms, dim);
    let mut support = rand::seq::index::sample(rng, dim, support_size).into_vec();
    support.sort_unstable();
    let mut x_star = vec![0.0; dim];
    for &i in &support {
        let mag = rng.random_range(0.5..=2.0);
        x_star[i] = if rng.random::<bool>() { mag } else { -mag };
    }
    let mut rhs = design.mul_vec(&x_star);
    if noise_sd > 0.0 {
        for b in rhs.iter_mut() {
            let e: f64 = StandardNormal.sample(rng);
            *b += noise_sd * e;
        }
    }
    let problem = LeastSquares::new(design, rhs)?;
    let min_mag = support
        .iter()
        .map(|&i| libm::fabs(x_star[i]))
        .fold(f64::INFINITY, f64::min);
    let suggested_l0_lambda = if support.is_empty() {
        0.0
    } else {
        min_mag * min_mag / (8.0 * problem.lipschitz_bound().unwrap_or(1.0))
    };
    Ok(SparseRecovery {
        problem,
        true_support: support,
        x_star,
        suggested_l0_lambda,
    })
}

/// Nonzero positions of `x`.
pub fn support(x: &[f64]) -> Vec<usize> {
    x.iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(i, _)| i)
        .collect()
}
