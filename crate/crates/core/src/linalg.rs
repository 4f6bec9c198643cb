//! Dense real matrices and the factorizations the rest of the crate is built
//! on: a one-sided Jacobi SVD, a cyclic Jacobi symmetric eigensolver, and
//! Cholesky solves for Gram systems.

use crate::{Error, Result};

/// Row-major dense matrix of `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors, all of equal length.
    pub fn from_columns(columns: &[Vec<f64>]) -> Self {
        if columns.is_empty() {
            return Self::zeros(0, 0);
        }
        let rows = columns[0].len();
        assert!(columns.iter().all(|c| c.len() == rows));
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn col(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `y = A·x` for a vector `x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, &x| m.max(x.abs()))
    }

    pub fn scaled(&self, a: f64) -> Mat {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= a;
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o += b;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(&other.data) {
            *o -= b;
        }
        out
    }

    /// `diag(w)·A`.
    pub fn scale_rows(&self, w: &[f64]) -> Mat {
        assert_eq!(self.rows, w.len());
        let mut out = self.clone();
        for i in 0..self.rows {
            let wi = w[i];
            for v in out.row_mut(i) {
                *v *= wi;
            }
        }
        out
    }

    /// `A·diag(w)`.
    pub fn scale_cols(&self, w: &[f64]) -> Mat {
        assert_eq!(self.cols, w.len());
        let mut out = self.clone();
        for i in 0..self.rows {
            for (v, &wj) in out.row_mut(i).iter_mut().zip(w) {
                *v *= wj;
            }
        }
        out
    }

    /// The first `k` columns as a new matrix.
    pub fn column_block(&self, k: usize) -> Mat {
        assert!(k <= self.cols);
        Mat::from_fn(self.rows, k, |i, j| self.get(i, j))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }
}

/// Relative threshold below which singular values are treated as zero.
pub const RANK_REL_TOL: f64 = 1e-12;

/// Relative tolerance on the off-diagonal mass of a column pair.
const PAIR_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 60;

/// Thin SVD restricted to the numerical rank: `a ≈ u · diag(sigma) · vᵀ`
/// with `sigma` nonincreasing and strictly positive.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Mat,
    pub sigma: Vec<f64>,
    pub v: Mat,
}

/// One-sided Jacobi SVD.
///
/// Columns of a working copy are rotated until every pair is orthogonal to
/// relative tolerance 1e-12; column norms then give the singular values.
/// Jacobi is used for its high relative accuracy on small singular values,
/// which the tail sums downstream depend on. Singular values below
/// `RANK_REL_TOL`·σ₁ are dropped.
pub fn jacobi_svd(a: &Mat) -> Result<Svd> {
    if a.rows() < a.cols() {
        let svd = jacobi_svd(&a.transpose())?;
        return Ok(Svd {
            u: svd.v,
            sigma: svd.sigma,
            v: svd.u,
        });
    }
    let m = a.rows();
    let n = a.cols();
    let mut cols: Vec<Vec<f64>> = (0..n).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    // Pairs of columns that are numerically zero relative to the whole
    // matrix carry no singular value above the rank cutoff; rotating them
    // against each other only churns noise (and can underflow the
    // convergence test), so they are skipped.
    let zero_col = 1e-14 * a.frobenius_norm();

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let (alpha, beta, gamma) = column_moments(&cols[p], &cols[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let (np, nq) = (alpha.sqrt(), beta.sqrt());
                if np <= zero_col && nq <= zero_col {
                    continue;
                }
                if gamma.abs() <= PAIR_TOL * np * nq {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = stable_tan(zeta);
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut cols, p, q, c, s);
                rotate_pair(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        // A sweep at the cap may still have finished the job; check the mass.
        let residual = worst_pair_ratio(&cols, zero_col);
        if residual > PAIR_TOL {
            return Err(Error::SvdNoConvergence {
                residual,
                sweeps: MAX_SWEEPS,
            });
        }
    }

    // Polish: a few extra sweeps at machine-precision threshold. The nominal
    // tolerance above leaves pair correlations of ~1e-12, which downstream
    // fourth-power identities amplify; the polish pulls them to the rounding
    // floor. Bounded count, so no convergence concerns.
    for _ in 0..4 {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let (alpha, beta, gamma) = column_moments(&cols[p], &cols[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let (np, nq) = (alpha.sqrt(), beta.sqrt());
                if np <= zero_col && nq <= zero_col {
                    continue;
                }
                if gamma.abs() <= 4.0 * f64::EPSILON * np * nq {
                    continue;
                }
                rotated = true;
                let t = stable_tan((beta - alpha) / (2.0 * gamma));
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut cols, p, q, c, s);
                rotate_pair(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(f64, usize)> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| (c.iter().map(|x| x * x).sum::<f64>().sqrt(), j))
        .collect();
    order.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    let sigma_max = order.first().map(|x| x.0).unwrap_or(0.0);

    let mut u_cols = Vec::new();
    let mut v_cols = Vec::new();
    let mut sigma = Vec::new();
    for &(s, j) in &order {
        if s <= RANK_REL_TOL * sigma_max || s == 0.0 {
            break;
        }
        let mut uc: Vec<f64> = cols[j].iter().map(|x| x / s).collect();
        let mut vc = v[j].clone();
        fix_sign(&mut uc, &mut vc);
        sigma.push(s);
        u_cols.push(uc);
        v_cols.push(vc);
    }
    let k = sigma.len();
    let u = if k == 0 {
        Mat::zeros(m, 0)
    } else {
        Mat::from_columns(&u_cols)
    };
    let v = if k == 0 {
        Mat::zeros(n, 0)
    } else {
        Mat::from_columns(&v_cols)
    };
    Ok(Svd { u, sigma, v })
}

/// Smaller root of `t² + 2ζt − 1 = 0`, guarded against `ζ²` overflow.
#[inline]
fn stable_tan(zeta: f64) -> f64 {
    if zeta.abs() > 1e150 {
        0.5 / zeta
    } else if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    }
}

fn column_moments(cp: &[f64], cq: &[f64]) -> (f64, f64, f64) {
    let mut aa = 0.0;
    let mut bb = 0.0;
    let mut ab = 0.0;
    for (&a, &b) in cp.iter().zip(cq) {
        aa += a * a;
        bb += b * b;
        ab += a * b;
    }
    (aa, bb, ab)
}

fn worst_pair_ratio(cols: &[Vec<f64>], zero_col: f64) -> f64 {
    let n = cols.len();
    let mut worst = 0.0_f64;
    for p in 0..n.saturating_sub(1) {
        for q in (p + 1)..n {
            let (a, b, g) = column_moments(&cols[p], &cols[q]);
            if a > 0.0 && b > 0.0 {
                let (np, nq) = (a.sqrt(), b.sqrt());
                if np <= zero_col && nq <= zero_col {
                    continue;
                }
                worst = worst.max(g.abs() / (np * nq));
            }
        }
    }
    worst
}

fn rotate_pair(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    let cp = &mut lo[p];
    let cq = &mut hi[0];
    for (a, b) in cp.iter_mut().zip(cq.iter_mut()) {
        let (x, y) = (*a, *b);
        *a = c * x - s * y;
        *b = s * x + c * y;
    }
}

/// Deterministic sign convention: the first entry of `u` that is not
/// negligibly small relative to the column maximum is made nonnegative.
pub(crate) fn fix_sign(u: &mut [f64], v: &mut [f64]) {
    let max_abs = u.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
    if max_abs == 0.0 {
        return;
    }
    for &x in u.iter() {
        if x.abs() > 1e-12 * max_abs {
            if x < 0.0 {
                for a in u.iter_mut() {
                    *a = -*a;
                }
                for b in v.iter_mut() {
                    *b = -*b;
                }
            }
            return;
        }
    }
}

/// Eigendecomposition of a symmetric matrix: `values` nonincreasing, columns
/// of `vectors` the corresponding orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Mat,
}

/// Cyclic two-sided Jacobi for symmetric matrices. The input is symmetrized
/// defensively; intended for small Gram matrices.
pub fn sym_eigen(a: &Mat) -> Result<SymEigen> {
    assert_eq!(a.rows(), a.cols(), "sym_eigen requires a square matrix");
    let n = a.rows();
    let mut w = Mat::from_fn(n, n, |i, j| 0.5 * (a.get(i, j) + a.get(j, i)));
    let mut v = Mat::identity(n);
    let frob = w.frobenius_norm().max(f64::MIN_POSITIVE);

    for sweep in 0..120 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += w.get(p, q) * w.get(p, q);
            }
        }
        if (2.0 * off).sqrt() <= 1e-14 * frob {
            break;
        }
        if sweep == 119 {
            return Err(Error::SvdNoConvergence {
                residual: (2.0 * off).sqrt() / frob,
                sweeps: 120,
            });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = w.get(p, q);
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (w.get(q, q) - w.get(p, p)) / (2.0 * apq);
                let t = stable_tan(theta);
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let app = w.get(p, p);
                let aqq = w.get(q, q);
                w.set(p, p, app - t * apq);
                w.set(q, q, aqq + t * apq);
                w.set(p, q, 0.0);
                w.set(q, p, 0.0);
                for i in 0..n {
                    if i != p && i != q {
                        let aip = w.get(i, p);
                        let aiq = w.get(i, q);
                        w.set(i, p, c * aip - s * aiq);
                        w.set(p, i, c * aip - s * aiq);
                        w.set(i, q, s * aip + c * aiq);
                        w.set(q, i, s * aip + c * aiq);
                    }
                }
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, c * vip - s * viq);
                    v.set(i, q, s * vip + c * viq);
                }
            }
        }
    }

    let mut order: Vec<(f64, usize)> = (0..n).map(|i| (w.get(i, i), i)).collect();
    order.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    let values = order.iter().map(|x| x.0).collect();
    let vectors = Mat::from_fn(n, n, |i, j| v.get(i, order[j].1));
    Ok(SymEigen { values, vectors })
}

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
pub fn cholesky(a: &Mat) -> Result<Mat> {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let mut l = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if s <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "Cholesky pivot {s:.3e} at index {i} is not positive"
                    )));
                }
                l.set(i, j, s.sqrt());
            } else {
                l.set(i, j, s / l.get(j, j));
            }
        }
    }
    Ok(l)
}

/// Solve `L·Lᵀ·x = b` for a Cholesky factor `L`.
pub fn cholesky_solve(l: &Mat, b: &[f64]) -> Vec<f64> {
    let n = l.rows();
    assert_eq!(b.len(), n);
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l.get(i, k) * y[k];
        }
        y[i] /= l.get(i, i);
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            y[i] -= l.get(k, i) * y[k];
        }
        y[i] /= l.get(i, i);
    }
    y
}

/// `L⁻¹·A` by forward substitution applied to each column of `A`.
pub fn lower_tri_inverse_times(l: &Mat, a: &Mat) -> Mat {
    let n = l.rows();
    assert_eq!(a.rows(), n);
    let mut out = a.clone();
    for j in 0..a.cols() {
        for i in 0..n {
            let mut s = out.get(i, j);
            for k in 0..i {
                s -= l.get(i, k) * out.get(k, j);
            }
            out.set(i, j, s / l.get(i, i));
        }
    }
    out
}

/// An orthonormal basis of the column span of `a` (ℓ² inner product),
/// restricted to the numerical rank.
pub fn orthonormal_basis(a: &Mat) -> Result<Mat> {
    Ok(jacobi_svd(a)?.u)
}

/// Largest principal angle between the column spans of `a` and `b`, in
/// radians. Uses the sine-based residual formula, which stays accurate for
/// small angles. Spans of different dimension are reported as π/2.
pub fn max_principal_angle(a: &Mat, b: &Mat) -> Result<f64> {
    let qa = orthonormal_basis(a)?;
    let qb = orthonormal_basis(b)?;
    if qa.cols() != qb.cols() {
        return Ok(std::f64::consts::FRAC_PI_2);
    }
    if qa.cols() == 0 {
        return Ok(0.0);
    }
    let proj = qa.matmul(&qa.transpose().matmul(&qb));
    let r = qb.sub(&proj);
    let s = jacobi_svd(&r)?;
    let sin_theta = s.sigma.first().copied().unwrap_or(0.0).clamp(0.0, 1.0);
    Ok(sin_theta.asin())
}
