//! Real orthonormal trigonometric basis on `[-π, π]^d` and exact Sobolev
//! norms of coefficient arrays.
//!
//! The 1-D basis of maximum frequency `n` has `2n+1` functions ordered
//! `[1/√(2π), cos(x)/√π, sin(x)/√π, cos(2x)/√π, sin(2x)/√π, …]`, so index
//! `i` carries frequency `⌈i/2⌉`. With this normalization every norm used in
//! the crate is a diagonally weighted ℓ² norm of the coefficients, and the
//! stiffness operator of the Laplacian is diagonal.

use crate::linalg::Mat;
use crate::{Error, Result};
use std::f64::consts::PI;

/// 1-D real trigonometric basis up to frequency `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrigBasis1D {
    n: usize,
}

impl TrigBasis1D {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn max_frequency(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        2 * self.n + 1
    }

    /// Frequency carried by basis index `i`.
    #[inline]
    pub fn frequency(i: usize) -> usize {
        i.div_ceil(2)
    }

    pub fn eval(&self, i: usize, x: f64) -> f64 {
        debug_assert!(i < self.size());
        basis_eval(i, x)
    }
}

#[inline]
pub(crate) fn basis_eval(i: usize, x: f64) -> f64 {
    if i == 0 {
        return 1.0 / (2.0 * PI).sqrt();
    }
    let f = i.div_ceil(2) as f64;
    if i % 2 == 1 {
        (f * x).cos() / PI.sqrt()
    } else {
        (f * x).sin() / PI.sqrt()
    }
}

/// Per-factor 1-D weight rules on a single frequency.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorWeight {
    L2,
    H1,
    H2,
}

impl FactorWeight {
    pub fn apply(&self, freq: usize) -> f64 {
        let k2 = (freq * freq) as f64;
        match self {
            FactorWeight::L2 => 1.0,
            FactorWeight::H1 => 1.0 + k2,
            FactorWeight::H2 => 1.0 + k2 + k2 * k2,
        }
    }
}

/// Diagonal realization of a per-factor weight over basis indices;
/// entry `i` is the rule applied to `frequency(i)`.
pub fn weight_vector(n: usize, kind: FactorWeight) -> Vec<f64> {
    (0..2 * n + 1)
        .map(|i| kind.apply(TrigBasis1D::frequency(i)))
        .collect()
}

/// Diagonal weight of a d-variate Sobolev inner product, as a rule on
/// frequency tuples. All weights are ≥ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SobolevWeight {
    /// 1
    L2,
    /// H¹ in factor `j`, L² in the others: `1 + k_j²`.
    PartialH1(usize),
    /// H² in factor `j`, L² in the others: `1 + k_j² + k_j⁴`.
    PartialH2(usize),
    /// `1 + Σ_j k_j²` (any d).
    FullH1,
    /// `(1+k²)(1+m²)`, d = 2.
    Mix2D,
    /// `(1+k_j²)(1+Σ_{i≠j} k_i²)`, d = 3.
    MixJ(usize),
}

impl SobolevWeight {
    /// Is the weight defined for dimension `d`?
    pub fn compatible(&self, d: usize) -> bool {
        match self {
            SobolevWeight::L2 | SobolevWeight::FullH1 => true,
            SobolevWeight::PartialH1(j) | SobolevWeight::PartialH2(j) => *j < d,
            SobolevWeight::Mix2D => d == 2,
            SobolevWeight::MixJ(j) => d == 3 && *j < 3,
        }
    }

    pub fn apply(&self, freqs: &[usize]) -> f64 {
        debug_assert!(self.compatible(freqs.len()));
        match self {
            SobolevWeight::L2 => 1.0,
            SobolevWeight::PartialH1(j) => FactorWeight::H1.apply(freqs[*j]),
            SobolevWeight::PartialH2(j) => FactorWeight::H2.apply(freqs[*j]),
            SobolevWeight::FullH1 => {
                1.0 + freqs.iter().map(|&k| (k * k) as f64).sum::<f64>()
            }
            SobolevWeight::Mix2D => {
                FactorWeight::H1.apply(freqs[0]) * FactorWeight::H1.apply(freqs[1])
            }
            SobolevWeight::MixJ(j) => {
                let kj2 = (freqs[*j] * freqs[*j]) as f64;
                let rest: f64 = freqs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| i != j)
                    .map(|(_, &k)| (k * k) as f64)
                    .sum();
                (1.0 + kj2) * (1.0 + rest)
            }
        }
    }
}

/// Coefficients of a function of two variables in the tensor trigonometric
/// basis: `c[i][j]` multiplies `basis_i(x)·basis_j(y)`. The single source of
/// truth for the function it represents.
#[derive(Clone, Debug)]
pub struct Coeffs2D {
    n: usize,
    c: Mat,
}

impl Coeffs2D {
    pub fn new(n: usize, c: Mat) -> Result<Self> {
        let size = 2 * n + 1;
        if c.rows() != size || c.cols() != size {
            return Err(Error::DimensionMismatch(format!(
                "expected {size}×{size} coefficient array, got {}×{}",
                c.rows(),
                c.cols()
            )));
        }
        if let Some(bad) = c.data().iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample {
                coords: vec![],
                value: *bad,
            });
        }
        Ok(Self { n, c })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            c: Mat::zeros(2 * n + 1, 2 * n + 1),
        }
    }

    pub fn max_frequency(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        2 * self.n + 1
    }

    pub fn matrix(&self) -> &Mat {
        &self.c
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.c.get(i, j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.c.set(i, j, v);
    }

    pub fn sub(&self, other: &Coeffs2D) -> Result<Coeffs2D> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(
                "coefficient arrays have different max frequency".into(),
            ));
        }
        Ok(Coeffs2D {
            n: self.n,
            c: self.c.sub(&other.c),
        })
    }

    pub fn add(&self, other: &Coeffs2D) -> Result<Coeffs2D> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(
                "coefficient arrays have different max frequency".into(),
            ));
        }
        Ok(Coeffs2D {
            n: self.n,
            c: self.c.add(&other.c),
        })
    }

    pub fn scaled(&self, a: f64) -> Coeffs2D {
        Coeffs2D {
            n: self.n,
            c: self.c.scaled(a),
        }
    }

    /// Apply `f(freq_x, freq_y, value)` entrywise.
    pub fn map(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Coeffs2D {
        let c = Mat::from_fn(self.size(), self.size(), |i, j| {
            f(
                TrigBasis1D::frequency(i),
                TrigBasis1D::frequency(j),
                self.c.get(i, j),
            )
        });
        Coeffs2D { n: self.n, c }
    }

    /// Embed into the basis of a larger maximum frequency. The index
    /// ordering is a prefix ordering, so this is a top-left block copy.
    pub fn pad_to(&self, n_big: usize) -> Result<Coeffs2D> {
        if n_big < self.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot pad from n={} down to n={n_big}",
                self.n
            )));
        }
        let mut out = Coeffs2D::zeros(n_big);
        for i in 0..self.size() {
            for j in 0..self.size() {
                out.set(i, j, self.get(i, j));
            }
        }
        Ok(out)
    }

    /// `sqrt(Σ w(freqs)·c²)`; exact Parseval norm for the weighted space.
    pub fn norm(&self, w: SobolevWeight) -> Result<f64> {
        if !w.compatible(2) {
            return Err(Error::IncompatibleWeight(format!(
                "{w:?} is not a 2-variate weight"
            )));
        }
        let mut acc = 0.0;
        for i in 0..self.size() {
            let fi = TrigBasis1D::frequency(i);
            for j in 0..self.size() {
                let fj = TrigBasis1D::frequency(j);
                let v = self.c.get(i, j);
                acc += w.apply(&[fi, fj]) * v * v;
            }
        }
        Ok(acc.sqrt())
    }

    /// Evaluate the represented function at the given points.
    pub fn synthesize(&self, points: &[(f64, f64)]) -> Result<Vec<f64>> {
        let size = self.size();
        let mut out = Vec::with_capacity(points.len());
        for &(x, y) in points {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::NonFiniteSample {
                    coords: vec![x, y],
                    value: f64::NAN,
                });
            }
            let bx: Vec<f64> = (0..size).map(|i| basis_eval(i, x)).collect();
            let by: Vec<f64> = (0..size).map(|j| basis_eval(j, y)).collect();
            let ty = self.c.matvec(&by);
            out.push(bx.iter().zip(&ty).map(|(a, b)| a * b).sum());
        }
        Ok(out)
    }
}

/// Coefficients of a function of three variables; entry `(i,j,k)` multiplies
/// `basis_i(x)·basis_j(y)·basis_k(z)`.
#[derive(Clone, Debug)]
pub struct Coeffs3D {
    n: usize,
    data: Vec<f64>,
}

impl Coeffs3D {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        let size = 2 * n + 1;
        if data.len() != size * size * size {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for n={n}, got {}",
                size * size * size,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample {
                coords: vec![],
                value: *bad,
            });
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        let size = 2 * n + 1;
        Self {
            n,
            data: vec![0.0; size * size * size],
        }
    }

    pub fn max_frequency(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        2 * self.n + 1
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.size() + j) * self.size() + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let d = self.idx(i, j, k);
        self.data[d] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn sub(&self, other: &Coeffs3D) -> Result<Coeffs3D> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(
                "coefficient arrays have different max frequency".into(),
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Coeffs3D { n: self.n, data })
    }

    pub fn scaled(&self, a: f64) -> Coeffs3D {
        Coeffs3D {
            n: self.n,
            data: self.data.iter().map(|v| v * a).collect(),
        }
    }

    pub fn norm(&self, w: SobolevWeight) -> Result<f64> {
        if !w.compatible(3) {
            return Err(Error::IncompatibleWeight(format!(
                "{w:?} is not a 3-variate weight"
            )));
        }
        let size = self.size();
        let mut acc = 0.0;
        for i in 0..size {
            let fi = TrigBasis1D::frequency(i);
            for j in 0..size {
                let fj = TrigBasis1D::frequency(j);
                for k in 0..size {
                    let fk = TrigBasis1D::frequency(k);
                    let v = self.get(i, j, k);
                    acc += w.apply(&[fi, fj, fk]) * v * v;
                }
            }
        }
        Ok(acc.sqrt())
    }

    pub fn synthesize(&self, points: &[(f64, f64, f64)]) -> Result<Vec<f64>> {
        let size = self.size();
        let mut out = Vec::with_capacity(points.len());
        for &(x, y, z) in points {
            if !x.is_finite() || !y.is_finite() || !z.is_finite() {
                return Err(Error::NonFiniteSample {
                    coords: vec![x, y, z],
                    value: f64::NAN,
                });
            }
            let bx: Vec<f64> = (0..size).map(|i| basis_eval(i, x)).collect();
            let by: Vec<f64> = (0..size).map(|j| basis_eval(j, y)).collect();
            let bz: Vec<f64> = (0..size).map(|k| basis_eval(k, z)).collect();
            let mut acc = 0.0;
            for i in 0..size {
                let mut acc_j = 0.0;
                for j in 0..size {
                    let row = &self.data[(i * size + j) * size..(i * size + j + 1) * size];
                    let s: f64 = row.iter().zip(&bz).map(|(a, b)| a * b).sum();
                    acc_j += by[j] * s;
                }
                acc += bx[i] * acc_j;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Composite-trapezoid quadrature nodes and weights on `[-π, π]` with
/// `m` subintervals.
fn trapezoid_rule(m: usize) -> (Vec<f64>, Vec<f64>) {
    let h = 2.0 * PI / m as f64;
    let nodes: Vec<f64> = (0..=m).map(|g| -PI + g as f64 * h).collect();
    let mut weights = vec![h; m + 1];
    weights[0] = 0.5 * h;
    weights[m] = 0.5 * h;
    (nodes, weights)
}

/// Expand a pointwise-evaluable function of two variables in the tensor
/// trigonometric basis by composite trapezoid quadrature on a uniform grid
/// with `q·(2n+1)` subintervals per direction.
///
/// Exact to roundoff for trigonometric polynomials of degree ≤ n per
/// variable whenever `q ≥ 2`.
pub fn analyze2(f: impl Fn(f64, f64) -> f64, n: usize, q: usize) -> Result<Coeffs2D> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "oversampling factor must be ≥ 2, got {q}"
        )));
    }
    let size = 2 * n + 1;
    let m = q * size;
    let (nodes, wq) = trapezoid_rule(m);
    let basis = Mat::from_fn(m + 1, size, |g, i| basis_eval(i, nodes[g]));

    let mut cmat = Mat::zeros(size, size);
    let mut arow = vec![0.0; size];
    for g1 in 0..=m {
        let x = nodes[g1];
        arow.iter_mut().for_each(|v| *v = 0.0);
        for g2 in 0..=m {
            let y = nodes[g2];
            let v = f(x, y);
            if !v.is_finite() {
                return Err(Error::NonFiniteSample {
                    coords: vec![x, y],
                    value: v,
                });
            }
            let vw = v * wq[g2];
            let brow = basis.row(g2);
            for (a, &b) in arow.iter_mut().zip(brow) {
                *a += vw * b;
            }
        }
        for i1 in 0..size {
            let coef = wq[g1] * basis.get(g1, i1);
            if coef == 0.0 {
                continue;
            }
            for (c, &a) in cmat.row_mut(i1).iter_mut().zip(&arow) {
                *c += coef * a;
            }
        }
    }
    Coeffs2D::new(n, cmat)
}

/// Three-variable analogue of [`analyze2`].
pub fn analyze3(f: impl Fn(f64, f64, f64) -> f64, n: usize, q: usize) -> Result<Coeffs3D> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "oversampling factor must be ≥ 2, got {q}"
        )));
    }
    let size = 2 * n + 1;
    let m = q * size;
    let (nodes, wq) = trapezoid_rule(m);
    let basis = Mat::from_fn(m + 1, size, |g, i| basis_eval(i, nodes[g]));

    let mut out = Coeffs3D::zeros(n);
    // Stream one (y,z)-plane at a time: contract z, then y, then accumulate x.
    let mut plane_a = Mat::zeros(m + 1, size); // indexed (g2, k3)
    let mut plane_b = Mat::zeros(size, size); // indexed (k2, k3)
    for g1 in 0..=m {
        let x = nodes[g1];
        for g2 in 0..=m {
            let y = nodes[g2];
            let arow = plane_a.row_mut(g2);
            arow.iter_mut().for_each(|v| *v = 0.0);
            for g3 in 0..=m {
                let z = nodes[g3];
                let v = f(x, y, z);
                if !v.is_finite() {
                    return Err(Error::NonFiniteSample {
                        coords: vec![x, y, z],
                        value: v,
                    });
                }
                let vw = v * wq[g3];
                let brow = basis.row(g3);
                for (a, &b) in arow.iter_mut().zip(brow) {
                    *a += vw * b;
                }
            }
        }
        for k2 in 0..size {
            let row = plane_b.row_mut(k2);
            row.iter_mut().for_each(|v| *v = 0.0);
            for g2 in 0..=m {
                let coef = wq[g2] * basis.get(g2, k2);
                for (o, &a) in row.iter_mut().zip(plane_a.row(g2)) {
                    *o += coef * a;
                }
            }
        }
        for k1 in 0..size {
            let coef = wq[g1] * basis.get(g1, k1);
            if coef == 0.0 {
                continue;
            }
            for k2 in 0..size {
                let src = plane_b.row(k2);
                let base = (k1 * size + k2) * size;
                for (k3, &v) in src.iter().enumerate() {
                    out.data[base + k3] += coef * v;
                }
            }
        }
    }
    Ok(out)
}
