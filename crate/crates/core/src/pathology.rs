//! Executable demonstrations that H¹-orthogonal projections need not be
//! bounded in weaker norms, built from closed-form piecewise functions on
//! `(0, 1)` with zero boundary values.
//!
//! The point-evaluation functional at `t₀` has an explicit H¹₀ Riesz
//! representer `A·sinh(x)` / `B·sinh(1-x)`; projecting onto its span sends
//! a sequence of shrinking hats `v_n` (peak 1, L² norm → 0) to a fixed
//! multiple of the representer, so the projection cannot be L²-continuous.
//! Tensorizing with a second hat sequence `w_n` shows the one-sided tensor
//! projection is not H¹-continuous either: `‖v_n ⊗ w_n‖₁ → 0` while the
//! projected pair keeps a fixed norm.

use crate::{Error, Result};

/// Continuous piecewise-linear function on `[0, 1]`, zero at both endpoints,
/// given by breakpoints and nodal values. Norms are exact per-segment sums.
#[derive(Clone, Debug)]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PiecewiseLinear {
    /// Build from `(x, value)` nodes. Nodes are sorted; duplicate
    /// breakpoints (zero-length segments) are merged and must agree.
    pub fn new(nodes: &[(f64, f64)]) -> Result<Self> {
        let mut sorted: Vec<(f64, f64)> = nodes.to_vec();
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut xs = Vec::with_capacity(sorted.len());
        let mut ys = Vec::with_capacity(sorted.len());
        for &(x, y) in &sorted {
            if !(x.is_finite() && y.is_finite()) {
                return Err(Error::NonFiniteSample {
                    coords: vec![x],
                    value: y,
                });
            }
            if let Some(&last) = xs.last() {
                if x == last {
                    let last_y: f64 = *ys.last().unwrap();
                    if (y - last_y).abs() > 1e-14 {
                        return Err(Error::InvalidParameter(format!(
                            "conflicting values {last_y} and {y} at breakpoint {x}"
                        )));
                    }
                    continue;
                }
            }
            xs.push(x);
            ys.push(y);
        }
        if xs.first() != Some(&0.0) || xs.last() != Some(&1.0) {
            return Err(Error::InvalidParameter(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if ys[0] != 0.0 || *ys.last().unwrap() != 0.0 {
            return Err(Error::InvalidParameter(
                "boundary values must vanish".into(),
            ));
        }
        Ok(Self { xs, ys })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xs
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        let i = match self.xs.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.ys[i],
            Err(i) => i,
        };
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// `∫ f²` summed exactly per segment.
    pub fn l2_norm_sq(&self) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.xs.len() {
            let h = self.xs[i] - self.xs[i - 1];
            let (a, b) = (self.ys[i - 1], self.ys[i]);
            acc += h * (a * a + a * b + b * b) / 3.0;
        }
        acc
    }

    /// `∫ f'²` summed exactly per segment.
    pub fn h1_seminorm_sq(&self) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.xs.len() {
            let h = self.xs[i] - self.xs[i - 1];
            let d = self.ys[i] - self.ys[i - 1];
            acc += d * d / h;
        }
        acc
    }

    pub fn h1_norm_sq(&self) -> f64 {
        self.l2_norm_sq() + self.h1_seminorm_sq()
    }
}

/// Riesz representer of point evaluation at `t₀` in H¹₀(0,1): the solution
/// of `-g'' + g = δ_{t₀}` with zero boundary values, `A·sinh(x)` left of
/// `t₀` and `B·sinh(1-x)` right of it.
#[derive(Clone, Copy, Debug)]
pub struct RieszRepresenter {
    pub t0: f64,
    pub a: f64,
    pub b: f64,
}

/// Solve the continuity and derivative-jump conditions at `t₀`.
pub fn riesz_point_representer(t0: f64) -> Result<RieszRepresenter> {
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "evaluation point must lie strictly inside (0,1), got {t0}"
        )));
    }
    // A·sinh(t₀) = B·sinh(1−t₀)  and  A·cosh(t₀) + B·cosh(1−t₀) = 1
    let (sh0, ch0) = (t0.sinh(), t0.cosh());
    let (sh1, ch1) = ((1.0 - t0).sinh(), (1.0 - t0).cosh());
    let det = sh1 * ch0 + sh0 * ch1; // = sinh(1)
    let a = sh1 / det;
    let b = sh0 / det;
    Ok(RieszRepresenter { t0, a, b })
}

impl RieszRepresenter {
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        if x <= self.t0 {
            self.a * x.sinh()
        } else {
            self.b * (1.0 - x).sinh()
        }
    }

    /// `‖g̃‖₁² = g̃(t₀)` by the reproduction property applied to itself.
    pub fn h1_norm_sq(&self) -> f64 {
        self.a * self.t0.sinh()
    }

    /// Exact `∫ g̃²` from the sinh antiderivatives.
    pub fn l2_norm_sq(&self) -> f64 {
        let left = self.a * self.a * (self.t0.sinh() * self.t0.cosh() - self.t0) / 2.0;
        let u = 1.0 - self.t0;
        let right = self.b * self.b * (u.sinh() * u.cosh() - u) / 2.0;
        left + right
    }

    /// Exact H¹₀ inner product `∫ f·g̃ + f'·g̃'` with a piecewise-linear
    /// function, by closed-form segment integrals. Reproduces `f(t₀)`.
    pub fn h1_inner_piecewise(&self, f: &PiecewiseLinear) -> f64 {
        let mut cuts: Vec<f64> = f.breakpoints().to_vec();
        if !cuts.contains(&self.t0) {
            cuts.push(self.t0);
            cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        }
        let mut acc = 0.0;
        for w in cuts.windows(2) {
            let (x0, x1) = (w[0], w[1]);
            if x1 <= x0 {
                continue;
            }
            // f = p + q·x on the segment; f is continuous, so endpoint
            // evaluation is exact from either side
            let y0 = f.eval(x0);
            let y1 = f.eval(x1);
            let q = (y1 - y0) / (x1 - x0);
            let p = y0 - q * x0;
            if x1 <= self.t0 + 1e-300 && x0 < self.t0 {
                acc += self.left_segment(p, q, x0, x1.min(self.t0));
            } else if x0 >= self.t0 {
                acc += self.right_segment(p, q, x0, x1);
            } else {
                acc += self.left_segment(p, q, x0, self.t0);
                acc += self.right_segment(p, q, self.t0, x1);
            }
        }
        acc
    }

    // ∫ (p+qx)·A·sinh(x) dx + ∫ q·A·cosh(x) dx on [x0, x1]
    fn left_segment(&self, p: f64, q: f64, x0: f64, x1: f64) -> f64 {
        let anti = |x: f64| (p + q * x) * x.cosh() - q * x.sinh();
        let value = self.a * (anti(x1) - anti(x0));
        let deriv = self.a * q * (x1.sinh() - x0.sinh());
        value + deriv
    }

    // g̃ = B·sinh(1−x), g̃' = −B·cosh(1−x) on [x0, x1]
    fn right_segment(&self, p: f64, q: f64, x0: f64, x1: f64) -> f64 {
        // substitute u = 1−x: ∫ (p+qx)·sinh(1−x) dx = ∫ (p+q−q·u)·sinh(u) du
        let pq = p + q;
        let anti = |u: f64| (pq - q * u) * u.cosh() + q * u.sinh();
        let (u0, u1) = (1.0 - x0, 1.0 - x1);
        let value = self.b * (anti(u0) - anti(u1));
        let deriv = self.b * q * ((1.0 - x1).sinh() - (1.0 - x0).sinh());
        value + deriv
    }
}

/// The two hat sequences: `v_n` with peak 1 and `w_n` with peak
/// `(n+1)^{-1/2}`, both supported on `[1/2 − 1/(n+1), 1/2 + 1/(n+1)]`.
pub fn spike_sequences(n: usize) -> Result<(PiecewiseLinear, PiecewiseLinear)> {
    if n == 0 {
        return Err(Error::InvalidParameter("spike index must be ≥ 1".into()));
    }
    let half_width = 1.0 / (n as f64 + 1.0);
    let left = 0.5 - half_width;
    let right = 0.5 + half_width;
    let v = PiecewiseLinear::new(&[
        (0.0, 0.0),
        (left.max(0.0), 0.0),
        (0.5, 1.0),
        (right.min(1.0), 0.0),
        (1.0, 0.0),
    ])?;
    let peak = 1.0 / (n as f64 + 1.0).sqrt();
    let w = PiecewiseLinear::new(&[
        (0.0, 0.0),
        (left.max(0.0), 0.0),
        (0.5, peak),
        (right.min(1.0), 0.0),
        (1.0, 0.0),
    ])?;
    Ok((v, w))
}

/// One row of the unboundedness table.
#[derive(Clone, Debug)]
pub struct UnboundedRow {
    pub n: usize,
    /// `‖v_n‖₀`.
    pub v_l2: f64,
    /// `‖P v_n‖₁`, constant in `n`.
    pub projected_h1: f64,
    /// `‖P v_n‖₁ / ‖v_n‖₀`, divergent.
    pub ratio: f64,
    /// Crossnorm bound `(‖v‖₁²‖w‖₀² + ‖v‖₀²‖w‖₁²)^{1/2}` on `‖v_n ⊗ w_n‖₁`.
    pub tensor_h1_bound: f64,
    /// `‖(P⊗id)(v_n ⊗ w_n)‖_{(0,1)} = ‖P v_n‖₀·‖w_n‖₁`.
    pub projected_tensor_01: f64,
}

/// Evaluate the table for the given spike indices, projecting onto the span
/// of the point representer at 1/2.
pub fn demo_unbounded(ns: &[usize]) -> Result<Vec<UnboundedRow>> {
    let g = riesz_point_representer(0.5)?;
    let g_h1_sq = g.h1_norm_sq();
    let g_l2 = g.l2_norm_sq().sqrt();
    let g_h1 = g_h1_sq.sqrt();

    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let (v, w) = spike_sequences(n)?;
        // P v = ‖g̃‖₁⁻²·⟨v, g̃⟩₁·g̃ with ⟨v, g̃⟩₁ = v(1/2)
        let inner = g.h1_inner_piecewise(&v);
        let projected_h1 = inner.abs() * g_h1 / g_h1_sq;
        let projected_l2 = inner.abs() * g_l2 / g_h1_sq;
        let v_l2 = v.l2_norm_sq().sqrt();
        let tensor_h1_bound =
            (v.h1_norm_sq() * w.l2_norm_sq() + v.l2_norm_sq() * w.h1_norm_sq()).sqrt();
        rows.push(UnboundedRow {
            n,
            v_l2,
            projected_h1,
            ratio: projected_h1 / v_l2,
            tensor_h1_bound,
            projected_tensor_01: projected_l2 * w.h1_norm_sq().sqrt(),
        });
    }
    Ok(rows)
}
