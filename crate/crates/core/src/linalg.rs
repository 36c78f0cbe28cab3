//! Dense complex linear algebra: SVD, truncated-SVD least squares, and a
//! one-unknown least-squares kernel.
//!
//! The SVD is computed by Householder QR followed by one-sided Jacobi
//! orthogonalization of the square factor. Matrices here stay small (a few
//! hundred rows at most), so a dense, accuracy-first routine is the right
//! trade: one-sided Jacobi delivers high relative accuracy on the tiny
//! singular values that the truncation threshold has to resolve.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn check_finite(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// A * x
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// A^H * x
    pub fn conj_t_mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![Complex64::new(0.0, 0.0); self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            for (j, o) in out.iter_mut().enumerate() {
                *o += self[(i, j)].conj() * xi;
            }
        }
        out
    }

    /// A * B
    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Thin singular value decomposition A = U diag(S) V^H.
///
/// `u` is m x r and `v` is n x r with r = min(m, n); `singular` is sorted
/// descending. Column phases are fixed so the largest-magnitude entry of each
/// left singular vector is real positive, making repeated runs bit-identical.
#[derive(Clone, Debug)]
pub struct SvdFactors {
    pub u: ComplexMatrix,
    pub singular: Vec<f64>,
    pub v: ComplexMatrix,
}

impl SvdFactors {
    /// Number of singular values strictly above `eps_rel * s_max`.
    pub fn retained_count(&self, eps_rel: f64) -> usize {
        if self.singular.is_empty() {
            return 0;
        }
        let cut = eps_rel * self.singular[0];
        self.singular.iter().filter(|&&s| s > cut).count()
    }

    /// Columns of U whose singular values fall at or below the threshold,
    /// as an m x (r - retained) matrix.
    pub fn discarded_left(&self, eps_rel: f64) -> ComplexMatrix {
        let keep = self.retained_count(eps_rel);
        let r = self.singular.len();
        ComplexMatrix::from_fn(self.u.rows(), r - keep, |i, j| self.u[(i, keep + j)])
    }
}

const JACOBI_TOL: f64 = 1e-31; // on |a_pq|^2 / (a_pp a_qq)
const MAX_SWEEPS: usize = 40;

/// Thin SVD of a dense complex matrix.
///
/// Deterministic for identical input: sweep order, sorting and the phase
/// convention are all fixed.
pub fn svd(a: &ComplexMatrix) -> Result<SvdFactors> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::InvalidParams("empty matrix in svd".into()));
    }
    a.check_finite()?;
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        // SVD of A^H, then swap the factors.
        let f = svd_tall(&a.conj_transpose())?;
        Ok(SvdFactors {
            u: f.v,
            singular: f.singular,
            v: f.u,
        })
    }
}

fn svd_tall(a: &ComplexMatrix) -> Result<SvdFactors> {
    let (m, n) = (a.rows(), a.cols());
    debug_assert!(m >= n);

    // QR first when clearly rectangular; Jacobi then runs on the n x n factor.
    let (q, mut w) = if m > n {
        let (q, r) = householder_qr(a);
        (Some(q), r)
    } else {
        (None, a.clone())
    };

    let k = w.rows();
    let mut v = ComplexMatrix::identity(n);

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n - 1 {
            for qi in p + 1..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..k {
                    let wp = w[(i, p)];
                    let wq = w[(i, qi)];
                    app += wp.norm_sqr();
                    aqq += wq.norm_sqr();
                    apq += wp.conj() * wq;
                }
                if app == 0.0 || aqq == 0.0 || apq.norm_sqr() <= JACOBI_TOL * app * aqq {
                    continue;
                }
                rotated = true;
                let r = apq.norm();
                let phase = apq / r;
                let zeta = (aqq - app) / (2.0 * r);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // Columns: W_p' = c W_p - s conj(phase) W_q ; W_q' = s phase W_p + c W_q
                let sp = s * phase;
                let spc = s * phase.conj();
                for i in 0..k {
                    let wp = w[(i, p)];
                    let wq = w[(i, qi)];
                    w[(i, p)] = c * wp - spc * wq;
                    w[(i, qi)] = sp * wp + c * wq;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, qi)];
                    v[(i, p)] = c * vp - spc * vq;
                    v[(i, qi)] = sp * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    // Singular values are the column norms; sort descending (stable).
    let mut norms: Vec<f64> = (0..n)
        .map(|j| (0..k).map(|i| w[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap().then(i.cmp(&j)));

    let mut uw = ComplexMatrix::zeros(k, n);
    let mut vv = ComplexMatrix::zeros(n, n);
    let mut singular = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        let s = norms[src];
        singular.push(s);
        if s > 0.0 {
            for i in 0..k {
                uw[(i, dst)] = w[(i, src)] / s;
            }
        }
        for i in 0..n {
            vv[(i, dst)] = v[(i, src)];
        }
    }
    norms.sort_by(|x, y| y.partial_cmp(x).unwrap());

    // Fill exactly-zero columns with an orthonormal completion so U^H U = I
    // holds even for rank-deficient input.
    complete_zero_columns(&mut uw, &singular);

    // Map back through Q.
    let mut u = match q {
        Some(q) => q.mul(&uw),
        None => uw,
    };

    // Phase convention: largest-magnitude entry of each U column made real
    // positive; V gets the matching phase so the product is unchanged.
    for j in 0..n {
        let mut best = 0usize;
        let mut best_mag = -1.0;
        for i in 0..m {
            let mag = u[(i, j)].norm_sqr();
            if mag > best_mag {
                best_mag = mag;
                best = i;
            }
        }
        let z = u[(best, j)];
        let mag = z.norm();
        if mag > 0.0 {
            let ph = (z / mag).conj();
            for i in 0..m {
                u[(i, j)] *= ph;
            }
            for i in 0..vv.rows() {
                vv[(i, j)] *= ph;
            }
        }
    }

    Ok(SvdFactors {
        u,
        singular,
        v: vv,
    })
}

fn complete_zero_columns(u: &mut ComplexMatrix, singular: &[f64]) {
    let (k, n) = (u.rows(), u.cols());
    for j in 0..n {
        if singular[j] > 0.0 {
            continue;
        }
        // Gram-Schmidt a canonical basis vector against every column that is
        // already valid: nonzero-singular ones, plus zero columns filled in
        // earlier passes (they precede j because singular values are sorted).
        'seed: for seed in 0..k {
            let mut col = vec![Complex64::new(0.0, 0.0); k];
            col[seed] = Complex64::new(1.0, 0.0);
            for jj in 0..n {
                if jj >= j && singular[jj] == 0.0 {
                    continue;
                }
                let dot: Complex64 = (0..k).map(|i| u[(i, jj)].conj() * col[i]).sum();
                for i in 0..k {
                    let q = u[(i, jj)];
                    col[i] -= dot * q;
                }
            }
            let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                for i in 0..k {
                    u[(i, j)] = col[i] / norm;
                }
                break 'seed;
            }
        }
    }
}

/// Householder QR with thin Q (m x n) and square R (n x n), m >= n.
fn householder_qr(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    // Householder vectors stored per step.
    let mut vs: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for kcol in 0..n {
        let mut norm_sq = 0.0;
        for i in kcol..m {
            norm_sq += r[(i, kcol)].norm_sqr();
        }
        let norm = norm_sq.sqrt();
        let akk = r[(kcol, kcol)];
        if norm == 0.0 {
            vs.push(Vec::new());
            continue;
        }
        let alpha = if akk.norm() > 0.0 {
            -(akk / akk.norm()) * norm
        } else {
            Complex64::new(-norm, 0.0)
        };
        let mut v: Vec<Complex64> = (kcol..m).map(|i| r[(i, kcol)]).collect();
        v[0] -= alpha;
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            vs.push(Vec::new());
            continue;
        }
        // Apply H = I - 2 v v^H / (v^H v) to the trailing block.
        for j in kcol..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, i) in (kcol..m).enumerate() {
                dot += v[idx].conj() * r[(i, j)];
            }
            let scale = 2.0 * dot / vnorm_sq;
            for (idx, i) in (kcol..m).enumerate() {
                let vi = v[idx];
                r[(i, j)] -= scale * vi;
            }
        }
        vs.push(v);
    }
    // Build thin Q by applying the reflectors to the identity block.
    let mut q = ComplexMatrix::zeros(m, n);
    for j in 0..n {
        q[(j, j)] = Complex64::new(1.0, 0.0);
    }
    for kcol in (0..n).rev() {
        let v = &vs[kcol];
        if v.is_empty() {
            continue;
        }
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, i) in (kcol..m).enumerate() {
                dot += v[idx].conj() * q[(i, j)];
            }
            let scale = 2.0 * dot / vnorm_sq;
            for (idx, i) in (kcol..m).enumerate() {
                let vi = v[idx];
                q[(i, j)] -= scale * vi;
            }
        }
    }
    let rr = ComplexMatrix::from_fn(n, n, |i, j| if j >= i { r[(i, j)] } else { Complex64::new(0.0, 0.0) });
    (q, rr)
}

/// Truncated-SVD least-squares solve: x = V diag(1/s_j) U^H b over the
/// singular values above `eps_rel * s_max`.
pub fn tsvd_solve(f: &SvdFactors, b: &[Complex64], eps_rel: f64) -> Result<Vec<Complex64>> {
    if b.len() != f.u.rows() {
        return Err(Error::DimensionMismatch {
            expected: f.u.rows(),
            got: b.len(),
            context: "tsvd_solve rhs",
        });
    }
    let keep = f.retained_count(eps_rel);
    if keep == 0 {
        return Err(Error::DegenerateSystem);
    }
    let m = f.u.rows();
    let n = f.v.rows();
    let mut coeff = vec![Complex64::new(0.0, 0.0); keep];
    for j in 0..keep {
        let mut dot = Complex64::new(0.0, 0.0);
        for i in 0..m {
            dot += f.u[(i, j)].conj() * b[i];
        }
        coeff[j] = dot / f.singular[j];
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..keep {
            acc += f.v[(i, j)] * coeff[j];
        }
        x[i] = acc;
    }
    Ok(x)
}

/// Minimizer of ||b + a*alpha||_2 over the scalar alpha:
/// alpha = -<a, b> / <a, a>, conjugate-linear in the first slot.
pub fn lstsq_one_var(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
            context: "lstsq_one_var",
        });
    }
    let denom: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    if denom < 1e-300 {
        return Err(Error::NoConstraint);
    }
    let num: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    Ok(-num / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(m, n, |_, _| {
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        })
    }

    fn reconstruct(f: &SvdFactors) -> ComplexMatrix {
        let r = f.singular.len();
        let mut us = f.u.clone();
        for j in 0..r {
            for i in 0..us.rows() {
                us[(i, j)] = us[(i, j)] * f.singular[j];
            }
        }
        us.mul(&f.v.conj_transpose())
    }

    fn assert_orthonormal(m: &ComplexMatrix, tol: f64) {
        let g = m.conj_transpose().mul(m);
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (g[(i, j)] - c(expect, 0.0)).norm() < tol,
                    "gram ({i},{j}) = {:?}",
                    g[(i, j)]
                );
            }
        }
    }

    #[test]
    fn svd_identity() {
        let f = svd(&ComplexMatrix::identity(3)).unwrap();
        for s in &f.singular {
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn svd_diagonal() {
        let mut a = ComplexMatrix::zeros(3, 3);
        a[(0, 0)] = c(3.0, 0.0);
        a[(1, 1)] = c(2.0, 0.0);
        a[(2, 2)] = c(1.0, 0.0);
        let f = svd(&a).unwrap();
        assert!((f.singular[0] - 3.0).abs() < 1e-14);
        assert!((f.singular[1] - 2.0).abs() < 1e-14);
        assert!((f.singular[2] - 1.0).abs() < 1e-14);
        // up to column phase, U and V are the identity
        for i in 0..3 {
            assert!((f.u[(i, i)].norm() - 1.0).abs() < 1e-13);
            assert!((f.v[(i, i)].norm() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn svd_random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let a = random_matrix(&mut rng, 25, 21);
        let f = svd(&a).unwrap();
        let mut diff = reconstruct(&f);
        for i in 0..25 {
            for j in 0..21 {
                diff[(i, j)] -= a[(i, j)];
            }
        }
        assert!(diff.frobenius_norm() <= 1e-12 * a.frobenius_norm());
        assert_orthonormal(&f.u, 1e-12);
        assert_orthonormal(&f.v, 1e-12);
    }

    #[test]
    fn svd_wide_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(&mut rng, 10, 21);
        let f = svd(&a).unwrap();
        assert_eq!(f.singular.len(), 10);
        assert_eq!(f.u.rows(), 10);
        assert_eq!(f.v.rows(), 21);
        let mut diff = reconstruct(&f);
        for i in 0..10 {
            for j in 0..21 {
                diff[(i, j)] -= a[(i, j)];
            }
        }
        assert!(diff.frobenius_norm() <= 1e-12 * a.frobenius_norm());
    }

    #[test]
    fn svd_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 12, 9);
        let f1 = svd(&a).unwrap();
        let f2 = svd(&a).unwrap();
        assert_eq!(f1.u, f2.u);
        assert_eq!(f1.v, f2.v);
        assert_eq!(f1.singular, f2.singular);
    }

    #[test]
    fn svd_rejects_non_finite() {
        let mut a = ComplexMatrix::identity(2);
        a[(0, 1)] = c(f64::NAN, 0.0);
        assert!(matches!(
            svd(&a),
            Err(Error::NonFiniteEntry { row: 0, col: 1 })
        ));
    }

    #[test]
    fn tsvd_identity_passthrough() {
        let f = svd(&ComplexMatrix::identity(4)).unwrap();
        let b = vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0), c(4.0, -4.0)];
        let x = tsvd_solve(&f, &b, 1e-12).unwrap();
        for (xi, bi) in x.iter().zip(&b) {
            assert!((xi - bi).norm() < 1e-13);
        }
    }

    #[test]
    fn tsvd_forced_truncation() {
        let mut a = ComplexMatrix::zeros(2, 2);
        a[(0, 0)] = c(1.0, 0.0);
        a[(1, 1)] = c(1e-16, 0.0);
        let f = svd(&a).unwrap();
        let x = tsvd_solve(&f, &[c(1.0, 0.0), c(1.0, 0.0)], 1e-12).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(x[1].norm() < 1e-12);
    }

    #[test]
    fn tsvd_degenerate_all_truncated() {
        let a = ComplexMatrix::zeros(3, 2);
        let mut a = a;
        a[(0, 0)] = c(1e-30, 0.0);
        let f = svd(&a).unwrap();
        // eps_rel relative to s1 keeps s1; force truncation of everything by
        // asking for a threshold above 1.
        assert!(matches!(
            tsvd_solve(&f, &[c(1.0, 0.0); 3], 2.0),
            Err(Error::DegenerateSystem)
        ));
    }

    /// Normal-equations oracle for a consistent overdetermined system.
    #[test]
    fn tsvd_matches_normal_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 10, 6);
        let x_true: Vec<Complex64> = (0..6).map(|_| c(rng.gen(), rng.gen())).collect();
        let b = a.mul_vec(&x_true);
        // Oracle: solve A^H A x = A^H b by Gaussian elimination.
        let aha = a.conj_transpose().mul(&a);
        let ahb = a.conj_t_mul_vec(&b);
        let x_oracle = gauss_solve(&aha, &ahb);
        let f = svd(&a).unwrap();
        let x = tsvd_solve(&f, &b, 1e-12).unwrap();
        for (xi, oi) in x.iter().zip(&x_oracle) {
            assert!((xi - oi).norm() < 1e-10, "{xi:?} vs {oi:?}");
        }
    }

    #[test]
    fn tsvd_zero_eps_exact_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 6, 6);
        let x_true: Vec<Complex64> = (0..6).map(|_| c(rng.gen(), rng.gen())).collect();
        let b = a.mul_vec(&x_true);
        let f = svd(&a).unwrap();
        let x = tsvd_solve(&f, &b, 0.0).unwrap();
        let norm: f64 = x_true.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (xi, ti) in x.iter().zip(&x_true) {
            assert!((xi - ti).norm() < 1e-10 * norm.max(1.0));
        }
    }

    fn gauss_solve(a: &ComplexMatrix, b: &[Complex64]) -> Vec<Complex64> {
        let n = a.rows();
        let mut m = a.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let mut piv = k;
            for i in k + 1..n {
                if m[(i, k)].norm() > m[(piv, k)].norm() {
                    piv = i;
                }
            }
            if piv != k {
                for j in 0..n {
                    let tmp = m[(k, j)];
                    m[(k, j)] = m[(piv, j)];
                    m[(piv, j)] = tmp;
                }
                rhs.swap(k, piv);
            }
            for i in k + 1..n {
                let factor = m[(i, k)] / m[(k, k)];
                for j in k..n {
                    let mkj = m[(k, j)];
                    m[(i, j)] -= factor * mkj;
                }
                let rk = rhs[k];
                rhs[i] -= factor * rk;
            }
        }
        let mut x = vec![c(0.0, 0.0); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i];
            for j in i + 1..n {
                acc -= m[(i, j)] * x[j];
            }
            x[i] = acc / m[(i, i)];
        }
        x
    }

    #[test]
    fn one_var_examples() {
        let alpha = lstsq_one_var(&[c(1.0, 0.0)], &[c(-2.0, 5.0)]).unwrap();
        assert!((alpha - c(2.0, -5.0)).norm() < 1e-14);

        let a = vec![c(1.0, 1.0), c(2.0, -1.0), c(0.5, 0.0)];
        let b: Vec<Complex64> = a.iter().map(|z| -z).collect();
        let alpha = lstsq_one_var(&a, &b).unwrap();
        assert!((alpha - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn one_var_no_constraint() {
        assert!(matches!(
            lstsq_one_var(&[c(0.0, 0.0)], &[c(1.0, 0.0)]),
            Err(Error::NoConstraint)
        ));
    }

    /// Grid-search oracle: alpha from a fine scan around the analytic value.
    #[test]
    fn one_var_matches_grid_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a: Vec<Complex64> = (0..7).map(|_| c(rng.gen(), rng.gen())).collect();
        let b: Vec<Complex64> = (0..7).map(|_| c(rng.gen(), rng.gen())).collect();
        let alpha = lstsq_one_var(&a, &b).unwrap();
        let resid = |al: Complex64| -> f64 {
            a.iter()
                .zip(&b)
                .map(|(ai, bi)| (bi + ai * al).norm_sqr())
                .sum()
        };
        let mut best = alpha;
        let mut best_r = resid(alpha);
        let step = 1e-6;
        for di in -2..=2i32 {
            for dj in -2..=2i32 {
                let cand = alpha + c(di as f64 * step, dj as f64 * step);
                let r = resid(cand);
                if r < best_r {
                    best_r = r;
                    best = cand;
                }
            }
        }
        assert!((best - alpha).norm() < 1e-5);
    }

    #[test]
    fn one_var_residual_optimality() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let a: Vec<Complex64> = (0..9).map(|_| c(rng.gen(), rng.gen())).collect();
        let b: Vec<Complex64> = (0..9).map(|_| c(rng.gen(), rng.gen())).collect();
        let alpha = lstsq_one_var(&a, &b).unwrap();
        let resid = |al: Complex64| -> f64 {
            a.iter()
                .zip(&b)
                .map(|(ai, bi)| (bi + ai * al).norm_sqr())
                .sum::<f64>()
                .sqrt()
        };
        let r0 = resid(alpha);
        for _ in 0..100 {
            let beta = c(rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 4.0 - 2.0);
            assert!(r0 <= resid(beta) + 1e-12);
        }
    }
}
