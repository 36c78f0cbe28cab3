//! Tensor-product 2D local Fourier extension: row/column application of the
//! 1D operators, tensor evaluation, and directional error diagnostics.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fe1d::{self, Fe1dOperator};
use crate::linalg::ComplexMatrix;

/// Solve the local data array (shape m_y x m_x, rows indexed by the y node)
/// into a coefficient matrix of shape q_y x q_x.
///
/// Rows are solved with `op_x` first, then the resulting coefficient columns
/// with `op_y`; the order is fixed for determinism.
pub fn solve2d(
    data: &ComplexMatrix,
    op_x: &Fe1dOperator,
    op_y: &Fe1dOperator,
) -> Result<ComplexMatrix> {
    if data.cols() != op_x.m() {
        return Err(Error::DimensionMismatch {
            expected: op_x.m(),
            got: data.cols(),
            context: "solve2d x-direction sample count",
        });
    }
    if data.rows() != op_y.m() {
        return Err(Error::DimensionMismatch {
            expected: op_y.m(),
            got: data.rows(),
            context: "solve2d y-direction sample count",
        });
    }
    let qx = op_x.params.q();
    let qy = op_y.params.q();
    let my = data.rows();

    let mut half = ComplexMatrix::zeros(my, qx);
    for j in 0..my {
        let coeffs = fe1d::solve_coeffs(op_x, data.row(j))?;
        for (l, c) in coeffs.into_iter().enumerate() {
            half[(j, l)] = c;
        }
    }
    let mut out = ComplexMatrix::zeros(qy, qx);
    let mut col = vec![Complex64::new(0.0, 0.0); my];
    for l in 0..qx {
        for j in 0..my {
            col[j] = half[(j, l)];
        }
        let coeffs = fe1d::solve_coeffs(op_y, &col)?;
        for (qrow, c) in coeffs.into_iter().enumerate() {
            out[(qrow, l)] = c;
        }
    }
    Ok(out)
}

/// Basis matrix E with E[k][col] = exp(i*l*t_k), l = -N..N.
pub fn basis_matrix(points: &[f64], n_modes: usize) -> ComplexMatrix {
    let n = n_modes as i64;
    ComplexMatrix::from_fn(points.len(), 2 * n_modes + 1, |k, col| {
        Complex64::from_polar(1.0, (col as i64 - n) as f64 * points[k])
    })
}

/// Tensor evaluation of a coefficient matrix at the given reference points;
/// output has shape len(pts_y) x len(pts_x).
pub fn eval2d(
    coeffs: &ComplexMatrix,
    pts_x: &[f64],
    pts_y: &[f64],
    _t_x: f64,
    _t_y: f64,
) -> ComplexMatrix {
    assert!(coeffs.rows() % 2 == 1 && coeffs.cols() % 2 == 1);
    let nx = (coeffs.cols() - 1) / 2;
    let ny = (coeffs.rows() - 1) / 2;
    let ex = basis_matrix(pts_x, nx);
    let ey = basis_matrix(pts_y, ny);
    ey.mul(coeffs).mul(&ex.conj_transpose_plain())
}

impl ComplexMatrix {
    /// Plain transpose without conjugation, used for tensor evaluation.
    pub fn conj_transpose_plain(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols(), self.rows(), |i, j| self[(j, i)])
    }
}

/// Trapezoidal weights on an arbitrary sorted node set.
fn trapezoid_weights(nodes: &[f64]) -> Vec<f64> {
    let m = nodes.len();
    let mut w = vec![0.0; m];
    for k in 0..m - 1 {
        let h = nodes[k + 1] - nodes[k];
        w[k] += 0.5 * h;
        w[k + 1] += 0.5 * h;
    }
    w
}

/// Discrete directional reconstruction errors and the measured row-operator
/// norm: (E_x, E_y, kappa_x). Quadrature is trapezoidal on the operators'
/// own node grids.
pub fn directional_errors(
    data: &ComplexMatrix,
    op_x: &Fe1dOperator,
    op_y: &Fe1dOperator,
) -> Result<(f64, f64, f64)> {
    let wx = trapezoid_weights(&op_x.nodes);
    let wy = trapezoid_weights(&op_y.nodes);
    let my = data.rows();
    let mx = data.cols();

    // E_x: per-row residual of the 1D x-reconstruction at the x nodes.
    let mut ex_sq = 0.0;
    for j in 0..my {
        let row = data.row(j);
        let back = fe1d::transfer(op_x, row, &op_x.nodes)?;
        let r_sq: f64 = back
            .iter()
            .zip(row)
            .zip(&wx)
            .map(|((b, d), w)| w * (b - d).norm_sqr())
            .sum();
        ex_sq += wy[j] * r_sq;
    }

    // E_y: per-column residual of the 1D y-reconstruction at the y nodes.
    let mut ey_sq = 0.0;
    let mut col = vec![Complex64::new(0.0, 0.0); my];
    for i in 0..mx {
        for j in 0..my {
            col[j] = data[(j, i)];
        }
        let back = fe1d::transfer(op_y, &col, &op_y.nodes)?;
        let r_sq: f64 = back
            .iter()
            .zip(&col)
            .zip(&wy)
            .map(|((b, d), w)| w * (b - d).norm_sqr())
            .sum();
        ey_sq += wx[i] * r_sq;
    }

    let kappa_x = fe1d::operator_norm_estimate(op_x, 500, 0x5eed);
    Ok((ex_sq.sqrt(), ey_sq.sqrt(), kappa_x))
}

/// Node-grid values of the full tensor reconstruction, for residual checks.
pub fn reconstruct_at_nodes(
    data: &ComplexMatrix,
    op_x: &Fe1dOperator,
    op_y: &Fe1dOperator,
) -> Result<ComplexMatrix> {
    let coeffs = solve2d(data, op_x, op_y)?;
    Ok(eval2d(
        &coeffs,
        &op_x.nodes,
        &op_y.nodes,
        op_x.params.t_ext,
        op_y.params.t_ext,
    ))
}
