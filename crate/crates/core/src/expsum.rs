//! Exponential-sum approximation of `t ↦ t^{-1/2}` and the separable
//! representation it induces for the non-factoring H¹ scaling
//! `1/√(1+k²+m²)`.
//!
//! The sum comes from sinc quadrature of `1/√t = (2/√π)∫₀^∞ e^{-t·s²} ds`
//! with the substitution `s = eˣ`: node `x_ν` contributes the term
//! `ω_ν e^{-α_ν t}` with `ω_ν = (2/√π)·h·e^{x_ν}` and `α_ν = e^{2x_ν}`.
//! Splitting `e^{-α(1+k²+m²)}` symmetrically gives the separable factors
//! `E(k,ν) = √ω_ν·e^{-α_ν(k²+1/2)}` with `Σ_ν E(k,ν)E(m,ν) ≈ 1/√(1+k²+m²)`.

use crate::fourier::{Coeffs2D, TrigBasis1D};
use crate::linalg::Mat;
use crate::svd::{weighted_matrix_svd, SingularSystem, SvdVariant};
use crate::{Error, Result};
use std::f64::consts::PI;

const TERM_CAP: usize = 200;
const SCAN_POINTS: usize = 10_000;

/// One exponential term `weight · e^{-rate·t}`.
#[derive(Clone, Copy, Debug)]
pub struct ExpTerm {
    pub weight: f64,
    pub rate: f64,
}

/// Exponential-sum approximation of `t^{-1/2}` on `[1, t_max]`.
#[derive(Clone, Debug)]
pub struct ExpSum {
    pub terms: Vec<ExpTerm>,
    pub t_max: f64,
    /// Target uniform relative accuracy the construction was asked for.
    pub delta: f64,
    /// Relative error actually achieved on the acceptance scan.
    pub achieved: f64,
}

impl ExpSum {
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// `Σ_ν ω_ν e^{-α_ν t}`.
    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|td| td.weight * (-td.rate * t).exp()).sum()
    }

    /// Separable factor `E(k,ν) = √ω_ν · e^{-α_ν(k²+1/2)}`.
    pub fn factor(&self, freq: usize, nu: usize) -> f64 {
        let td = self.terms[nu];
        td.weight.sqrt() * (-td.rate * ((freq * freq) as f64 + 0.5)).exp()
    }
}

fn scan_error(terms: &[ExpTerm], t_max: f64) -> f64 {
    let mut worst = 0.0_f64;
    let log_max = t_max.ln();
    for i in 0..SCAN_POINTS {
        let t = if SCAN_POINTS == 1 {
            1.0
        } else {
            (log_max * i as f64 / (SCAN_POINTS - 1) as f64).exp()
        };
        let approx: f64 = terms.iter().map(|td| td.weight * (-td.rate * t).exp()).sum();
        let rel = (approx * t.sqrt() - 1.0).abs();
        worst = worst.max(rel);
    }
    worst
}

fn build_terms(x_lo: f64, x_hi: f64, h: f64) -> Vec<ExpTerm> {
    let count = ((x_hi - x_lo) / h).ceil() as usize + 1;
    (0..count)
        .map(|nu| {
            let x = x_lo + nu as f64 * h;
            ExpTerm {
                weight: 2.0 / PI.sqrt() * h * x.exp(),
                rate: (2.0 * x).exp(),
            }
        })
        .collect()
}

/// Construct an exponential sum meeting relative accuracy `delta` on
/// `[1, t_max]`, verified on a dense logarithmic scan.
///
/// The truncation points of the quadrature interval are fixed by tail
/// estimates; the step is found by geometric search and then bisection
/// between the last failing and first passing value, keeping the term count
/// near-minimal. Fails if the cap of 200 terms is reached first.
pub fn build_expsum(t_max: f64, delta: f64) -> Result<ExpSum> {
    if !t_max.is_finite() || t_max < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "t_max must be ≥ 1, got {t_max}"
        )));
    }
    if !(delta > 1e-12 && delta < 1e-1) {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (1e-12, 1e-1), got {delta}"
        )));
    }

    // Lower truncation: the dropped integral is below (2/√π)·e^{x_lo}, which
    // must stay under δ/8 relative to the smallest value t_max^{-1/2}.
    let x_lo = (delta * PI.sqrt() / 8.0).ln() - 0.5 * t_max.ln() - 1.0;
    // Upper truncation: double-exponential decay in x; worst case t = 1.
    let s0_sq = (8.0 / (delta * PI.sqrt())).ln() + 4.0;
    let x_hi = 0.5 * s0_sq.ln();

    // Aim slightly below the target so that arguments falling between scan
    // nodes still meet it.
    let goal = 0.95 * delta;
    let mut best = f64::INFINITY;
    let mut h = 0.7;
    let mut h_fail = None;
    let h_pass = loop {
        let terms = build_terms(x_lo, x_hi, h);
        if terms.len() > TERM_CAP {
            return Err(Error::ExpSumTargetUnreachable {
                target: delta,
                cap: TERM_CAP,
                best,
            });
        }
        let err = scan_error(&terms, t_max);
        best = best.min(err);
        if err <= goal {
            break h;
        }
        h_fail = Some(h);
        h *= 0.9;
    };

    // Bisect toward the largest passing step.
    let mut lo = h_pass;
    if let Some(mut hi) = h_fail {
        for _ in 0..25 {
            let mid = 0.5 * (lo + hi);
            let terms = build_terms(x_lo, x_hi, mid);
            if terms.len() <= TERM_CAP && scan_error(&terms, t_max) <= goal {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let terms = build_terms(x_lo, x_hi, lo);
    let achieved = scan_error(&terms, t_max);
    Ok(ExpSum {
        terms,
        t_max,
        delta,
        achieved,
    })
}

/// Worst relative error of the sum over the arguments actually used by a
/// degree-`n` expansion: the lattice `{1+k²+m² : 0 ≤ k,m ≤ n}`.
pub fn scan_scaling_error(e: &ExpSum, n: usize) -> Result<f64> {
    let needed = 1.0 + 2.0 * (n * n) as f64;
    if e.t_max < needed {
        return Err(Error::ExpSumIntervalTooSmall {
            t_max: e.t_max,
            needed,
        });
    }
    let mut worst = 0.0_f64;
    for k in 0..=n {
        for m in 0..=n {
            let t = 1.0 + (k * k + m * m) as f64;
            let rel = (e.eval(t) * t.sqrt() - 1.0).abs();
            worst = worst.max(rel);
        }
    }
    Ok(worst)
}

/// Plain SVD of the entrywise-scaled array `{c_km·√(1+k²+m²)}`. The scaling
/// does not factor, so this is not a weighted SVD of `C`; its singular
/// values satisfy `Σσ² = ‖C‖₁²`.
pub fn scaled_svd(c: &Coeffs2D) -> Result<SingularSystem> {
    let scaled = c.map(|fi, fj, v| (1.0 + (fi * fi + fj * fj) as f64).sqrt() * v);
    let ones = vec![1.0; c.size()];
    weighted_matrix_svd(scaled.matrix(), &ones, &ones, SvdVariant::L2L2)
}

/// One separable term: the outer product of the stored factor vectors.
#[derive(Clone, Debug)]
pub struct SepTerm {
    pub rank_index: usize,
    pub term_index: usize,
    pub x_coeffs: Vec<f64>,
    pub y_coeffs: Vec<f64>,
}

/// Separable approximation of a function: rank-`r` scaled SVD combined with
/// the exponential-sum factors, `r·p` outer products in total.
#[derive(Clone, Debug)]
pub struct SeparableRep {
    n: usize,
    pub terms: Vec<SepTerm>,
    /// Frobenius tail of the scaled SVD at the chosen rank; the H¹
    /// reconstruction error is bounded by this plus `δ·‖C‖₁` up to assembly
    /// roundoff.
    pub truncation_tail: f64,
}

impl SeparableRep {
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Assembled coefficient array `Σ x ⊗ y` over all terms.
    pub fn assemble(&self) -> Result<Coeffs2D> {
        let size = 2 * self.n + 1;
        let mut m = Mat::zeros(size, size);
        for term in &self.terms {
            for (i, &xi) in term.x_coeffs.iter().enumerate() {
                if xi == 0.0 {
                    continue;
                }
                for (j, &yj) in term.y_coeffs.iter().enumerate() {
                    m.set(i, j, m.get(i, j) + xi * yj);
                }
            }
        }
        Coeffs2D::new(self.n, m)
    }
}

/// Combine the rank-`r` scaled SVD of `C` with the exponential-sum factors
/// into an explicitly separable representation. The sum's validity interval
/// must cover `1+2n²`.
pub fn separable_representation(c: &Coeffs2D, e: &ExpSum, r: usize) -> Result<SeparableRep> {
    let n = c.max_frequency();
    let needed = 1.0 + 2.0 * (n * n) as f64;
    if e.t_max < needed {
        return Err(Error::ExpSumIntervalTooSmall {
            t_max: e.t_max,
            needed,
        });
    }
    let s = scaled_svd(c)?;
    let r_eff = r.min(s.rank());
    let size = c.size();
    let p = e.term_count();
    let mut terms = Vec::with_capacity(r_eff * p);
    for l in 0..r_eff {
        let sl = s.sigma[l].sqrt();
        for nu in 0..p {
            let x_coeffs: Vec<f64> = (0..size)
                .map(|i| sl * e.factor(TrigBasis1D::frequency(i), nu) * s.left.get(i, l))
                .collect();
            let y_coeffs: Vec<f64> = (0..size)
                .map(|j| sl * e.factor(TrigBasis1D::frequency(j), nu) * s.right.get(j, l))
                .collect();
            terms.push(SepTerm {
                rank_index: l,
                term_index: nu,
                x_coeffs,
                y_coeffs,
            });
        }
    }
    Ok(SeparableRep {
        n,
        terms,
        truncation_tail: s.tail_sq(r_eff).sqrt(),
    })
}
