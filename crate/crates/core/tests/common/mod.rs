//! Shared test oracles, independent of the library's computation paths.

#![allow(dead_code)]

use sobosvd::linalg::Mat;

/// Brute-force symmetric eigenvalues by two-sided cyclic Jacobi with a
/// descending sweep order — deliberately a different algorithm and sweep
/// pattern than the library's one-sided SVD. Returns eigenvalues sorted
/// nonincreasing.
pub fn oracle_sym_eigenvalues(a: &Mat) -> Vec<f64> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut w: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect();
    let frob: f64 = w
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);
    for _sweep in 0..200 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += w[p][q] * w[p][q];
            }
        }
        if (2.0 * off).sqrt() <= 1e-15 * frob {
            break;
        }
        // descending cyclic order
        for p in (0..n).rev() {
            for q in ((p + 1)..n).rev() {
                let apq = w[p][q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (w[q][q] - w[p][p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (app, aqq) = (w[p][p], w[q][q]);
                w[p][p] = app - t * apq;
                w[q][q] = aqq + t * apq;
                w[p][q] = 0.0;
                w[q][p] = 0.0;
                for i in 0..n {
                    if i != p && i != q {
                        let (aip, aiq) = (w[i][p], w[i][q]);
                        w[i][p] = c * aip - s * aiq;
                        w[p][i] = w[i][p];
                        w[i][q] = s * aip + c * aiq;
                        w[q][i] = w[i][q];
                    }
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| w[i][i]).collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    vals
}

/// Brute-force singular values of a dense matrix: eigenvalues of AᵀA.
pub fn oracle_singular_values(a: &Mat) -> Vec<f64> {
    let ata = a.transpose().matmul(a);
    oracle_sym_eigenvalues(&ata)
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect()
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
}

fn adaptive_simpson_inner(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    adaptive_simpson_inner(f, a, m, left, 0.5 * tol, depth - 1)
        + adaptive_simpson_inner(f, m, b, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let whole = simpson(&f, a, b);
    adaptive_simpson_inner(&f, a, b, whole, tol, 30)
}

/// Adaptive 2-D quadrature: inner adaptive Simpson in `y` for each outer
/// node, outer adaptive in `x`.
pub fn adaptive_quad_2d(f: impl Fn(f64, f64) -> f64 + Copy, tol: f64) -> f64 {
    use std::f64::consts::PI;
    adaptive_simpson(
        |x| adaptive_simpson(|y| f(x, y), -PI, PI, tol * 0.05),
        -PI,
        PI,
        tol,
    )
}

/// The four named reference functions.
pub fn reference_function(tag: &str) -> fn(f64, f64) -> f64 {
    match tag {
        "r06" => |x, y| (x * x + y * y).powf(0.3),
        "absdiag" => |x, y| (x + y).abs().powf(0.6),
        "expcos" => |x, y| (x.cos() * y.cos()).exp(),
        "ring" => |x, y| (1.0 - (x * x + y * y)).abs().powf(0.95),
        _ => panic!("unknown tag {tag}"),
    }
}

/// Deterministic xorshift generator for reproducible random matrices.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, lo: f64, hi: f64) -> Mat {
        Mat::from_fn(rows, cols, |_, _| self.uniform(lo, hi))
    }
}
