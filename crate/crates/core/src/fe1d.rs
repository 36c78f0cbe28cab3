//! One-dimensional TSVD-stabilized Fourier extension operators.
//!
//! An operator holds a node set on the reference interval `[0, 2*pi/T]`, the
//! extension matrix A with entries `exp(i*l*t_k)` for `|l| <= N`, and its
//! singular value decomposition. The reference (uniform-node) operator is
//! built once and shared across patches; per-column operators on arbitrary
//! node sets use the same machinery.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, SvdFactors};

/// Parameters of a 1D Fourier extension space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fe1dParams {
    /// Extension parameter T > 1; the reference interval is [0, 2*pi/T].
    pub t_ext: f64,
    /// Fourier order: modes |l| <= N.
    pub n_modes: usize,
    /// Oversampling ratio gamma >= 1; m = floor(gamma * (2N+1)).
    pub oversample: f64,
    /// Relative TSVD truncation threshold.
    pub eps_rel: f64,
}

impl Fe1dParams {
    pub fn new(t_ext: f64, n_modes: usize, oversample: f64, eps_rel: f64) -> Result<Self> {
        let p = Self {
            t_ext,
            n_modes,
            oversample,
            eps_rel,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_ext > 1.0) {
            return Err(Error::InvalidParams(format!(
                "extension parameter T must exceed 1, got {}",
                self.t_ext
            )));
        }
        if self.n_modes < 1 {
            return Err(Error::InvalidParams("Fourier order N must be >= 1".into()));
        }
        if !(self.oversample >= 1.0) {
            return Err(Error::InvalidParams(format!(
                "oversampling ratio must be >= 1, got {}",
                self.oversample
            )));
        }
        if !(self.eps_rel >= 0.0 && self.eps_rel < 1.0) {
            return Err(Error::InvalidParams(format!(
                "eps_rel must lie in [0, 1), got {}",
                self.eps_rel
            )));
        }
        Ok(())
    }

    /// Number of Fourier modes q = 2N + 1.
    pub fn q(&self) -> usize {
        2 * self.n_modes + 1
    }

    /// Length of the reference interval, 2*pi/T.
    pub fn interval(&self) -> f64 {
        2.0 * PI / self.t_ext
    }

    /// Uniform sample count m = floor(gamma * (2N+1)).
    pub fn uniform_m(&self) -> usize {
        (self.oversample * self.q() as f64).floor() as usize
    }
}

impl Default for Fe1dParams {
    /// The default local parameter set: T = 4, N = 10, gamma = 1.2, and a
    /// truncation threshold close to machine precision.
    fn default() -> Self {
        Self {
            t_ext: 4.0,
            n_modes: 10,
            oversample: 1.2,
            eps_rel: 1e-12,
        }
    }
}

/// Effective local frequency mu = omega * dx * T / (2*pi) seen by the
/// extension after a patch of width `dx` is rescaled to the reference
/// interval.
pub fn effective_frequency(omega: f64, dx: f64, t_ext: f64) -> f64 {
    omega * dx * t_ext / (2.0 * PI)
}

/// A 1D Fourier extension operator on a fixed node set.
#[derive(Clone, Debug)]
pub struct Fe1dOperator {
    pub params: Fe1dParams,
    pub nodes: Vec<f64>,
    pub matrix: ComplexMatrix,
    pub factors: SvdFactors,
    /// Singular values above eps_rel * s_max.
    pub retained: usize,
}

impl Fe1dOperator {
    pub fn m(&self) -> usize {
        self.nodes.len()
    }
}

fn build_matrix(nodes: &[f64], params: &Fe1dParams) -> ComplexMatrix {
    let n = params.n_modes as i64;
    ComplexMatrix::from_fn(nodes.len(), params.q(), |k, col| {
        let l = col as i64 - n;
        Complex64::from_polar(1.0, l as f64 * nodes[k])
    })
}

fn finish_operator(nodes: Vec<f64>, params: Fe1dParams) -> Result<Fe1dOperator> {
    let matrix = build_matrix(&nodes, &params);
    let factors = linalg::svd(&matrix)?;
    let retained = factors.retained_count(params.eps_rel);
    Ok(Fe1dOperator {
        params,
        nodes,
        matrix,
        factors,
        retained,
    })
}

/// Build the reference operator on m equispaced nodes covering the full
/// reference interval including both endpoints.
pub fn build_uniform_operator(params: Fe1dParams) -> Result<Fe1dOperator> {
    params.validate()?;
    let m = params.uniform_m();
    if m < 2 {
        return Err(Error::InvalidParams(format!(
            "uniform operator needs at least 2 nodes, got m = {m}"
        )));
    }
    let len = params.interval();
    let nodes: Vec<f64> = (0..m)
        .map(|k| len * k as f64 / (m - 1) as f64)
        .collect();
    finish_operator(nodes, params)
}

/// Build an operator on caller-supplied nodes (sorted, distinct, inside the
/// reference interval).
pub fn build_custom_operator(nodes: &[f64], params: Fe1dParams) -> Result<Fe1dOperator> {
    params.validate()?;
    if nodes.len() < 2 {
        return Err(Error::InvalidParams(
            "custom operator needs at least 2 nodes".into(),
        ));
    }
    let len = params.interval();
    let tol = 1e-12 * len;
    for (k, w) in nodes.windows(2).enumerate() {
        if w[1] - w[0] < tol {
            return Err(Error::DuplicateNodes(k));
        }
    }
    for (k, &t) in nodes.iter().enumerate() {
        if !(-tol..=len + tol).contains(&t) {
            return Err(Error::NodeOutOfRange(k));
        }
    }
    finish_operator(nodes.to_vec(), params)
}

/// Solve for the 2N+1 Fourier coefficients from values at the operator nodes.
pub fn solve_coeffs(op: &Fe1dOperator, values: &[Complex64]) -> Result<Vec<Complex64>> {
    if values.len() != op.m() {
        return Err(Error::DimensionMismatch {
            expected: op.m(),
            got: values.len(),
            context: "solve_coeffs values",
        });
    }
    linalg::tsvd_solve(&op.factors, values, op.params.eps_rel)
}

/// Evaluate sum_l c_l exp(i*l*t) at the given points. Coefficients are in
/// l = -N..N order.
pub fn eval_series(coeffs: &[Complex64], _t_ext: f64, points: &[f64]) -> Vec<Complex64> {
    assert!(coeffs.len() % 2 == 1, "coefficient count must be odd");
    let n = (coeffs.len() / 2) as i64;
    points
        .iter()
        .map(|&t| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (col, c) in coeffs.iter().enumerate() {
                let l = col as i64 - n;
                acc += c * Complex64::from_polar(1.0, l as f64 * t);
            }
            acc
        })
        .collect()
}

/// Solve then evaluate: the 1D line transfer.
pub fn transfer(op: &Fe1dOperator, values: &[Complex64], targets: &[f64]) -> Result<Vec<Complex64>> {
    let coeffs = solve_coeffs(op, values)?;
    Ok(eval_series(&coeffs, op.params.t_ext, targets))
}

/// Recover the single unknown value at the final (artificial) node from the
/// first m-1 values, by forcing the full data vector to have a small
/// component in the discarded left-singular directions.
pub fn complete_one_value(op: &Fe1dOperator, known: &[Complex64]) -> Result<Complex64> {
    let m = op.m();
    if known.len() != m - 1 {
        return Err(Error::DimensionMismatch {
            expected: m - 1,
            got: known.len(),
            context: "complete_one_value known values",
        });
    }
    let u0 = op.factors.discarded_left(op.params.eps_rel);
    let d = u0.cols();
    if d == 0 {
        return Err(Error::CompletionImpossible);
    }
    // Minimize || U0_in^H known + conj(u0_out) * alpha || over alpha.
    let mut rhs = vec![Complex64::new(0.0, 0.0); d];
    for j in 0..d {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, f) in known.iter().enumerate() {
            acc += u0[(k, j)].conj() * f;
        }
        rhs[j] = acc;
    }
    let a: Vec<Complex64> = (0..d).map(|j| u0[(m - 1, j)].conj()).collect();
    match linalg::lstsq_one_var(&a, &rhs) {
        Err(Error::NoConstraint) => Err(Error::UnconstrainedUnknown),
        other => other,
    }
}

/// Measured discrete operator norm of the stabilized reconstruction: the
/// worst ratio ||eval(solve(v)) at the nodes|| / ||v|| over random unit data.
pub fn operator_norm_estimate(op: &Fe1dOperator, trials: usize, seed: u64) -> f64 {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = op.m();
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let v: Vec<Complex64> = (0..m)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        if let Ok(out) = transfer(op, &v, &op.nodes) {
            let out_norm: f64 = out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            worst = worst.max(out_norm / norm);
        }
    }
    worst
}
