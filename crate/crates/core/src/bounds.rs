//! Numerical verification of the inequalities and identities relating the
//! weighted SVD variants: tail-sum brackets between spectra, the exact
//! identity tying the derivative-weighted singular values to the plain ones,
//! two-sided error bounds for tensor and per-mode projections, and the
//! regularity factors (extremal Sobolev norm ratios) those bounds use.

use crate::fourier::{Coeffs2D, Coeffs3D, FactorWeight, SobolevWeight, TrigBasis1D};
use crate::linalg::{cholesky, lower_tri_inverse_times, sym_eigen, Mat};
use crate::projections::{
    subspace_from_svd, tensor_project, truncate_from_system, Side, SubspaceBasis,
};
use crate::svd::{refold3, unfold3, SingularSystem, SvdVariant};
use crate::{Error, Result};

/// One evaluated inequality `lower ≤ actual ≤ upper` at a given rank.
///
/// `satisfied` uses the tolerance `1e-9·(1+upper)` (or `1e-9·(1+|lower|)`
/// when the upper side is unbounded). Slack ratios are `actual/lower`
/// and `upper/actual`, with `1` substituted for `0/0`.
#[derive(Clone, Debug)]
pub struct BoundRow {
    pub name: String,
    pub rank: usize,
    pub lower: f64,
    pub upper: f64,
    pub actual: f64,
    pub satisfied: bool,
    pub slack_lower: f64,
    pub slack_upper: f64,
}

impl BoundRow {
    pub fn evaluate(name: impl Into<String>, rank: usize, lower: f64, upper: f64, actual: f64) -> Self {
        let tol = if upper.is_finite() {
            1e-9 * (1.0 + upper)
        } else {
            1e-9 * (1.0 + lower.abs())
        };
        let satisfied = lower - tol <= actual && actual <= upper + tol;
        BoundRow {
            name: name.into(),
            rank,
            lower,
            upper,
            actual,
            satisfied,
            slack_lower: slack_ratio(actual, lower),
            slack_upper: slack_ratio(upper, actual),
        }
    }
}

fn slack_ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

/// A list of evaluated bound rows.
#[derive(Clone, Debug, Default)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.rows.iter().all(|r| r.satisfied)
    }

    pub fn extend(&mut self, other: BoundReport) {
        self.rows.extend(other.rows);
    }
}

fn weighted_inner(a: &Mat, ca: usize, b: &Mat, cb: usize, w: impl Fn(usize) -> f64) -> f64 {
    let mut s = 0.0;
    for i in 0..a.rows() {
        s += w(TrigBasis1D::frequency(i)) * a.get(i, ca) * b.get(i, cb);
    }
    s
}

fn column_norm_sq(m: &Mat, c: usize, w: impl Fn(usize) -> f64) -> f64 {
    let mut s = 0.0;
    for i in 0..m.rows() {
        let v = m.get(i, c);
        s += w(TrigBasis1D::frequency(i)) * v * v;
    }
    s
}

fn h1_rule(f: usize) -> f64 {
    1.0 + (f * f) as f64
}

fn l2_rule(_: usize) -> f64 {
    1.0
}

fn second_derivative_rule(f: usize) -> f64 {
    let k2 = (f * f) as f64;
    k2 * k2
}

/// Tail-sum brackets between the plain spectrum and the derivative-weighted
/// spectra: for every `r ≤ r_max`,
/// `Σ_{k>r}(σ⁰⁰)² ≤ Σ_{k>r}(σ¹⁰)² ≤ Σ_{k>r}(σ⁰⁰)²‖ψ_k‖₁²`
/// and the analogue with columns. The upper factors use the H¹ norms of the
/// plain left/right singular functions.
pub fn check_tail_inequalities(
    s00: &SingularSystem,
    s10: &SingularSystem,
    s01: &SingularSystem,
    r_max: usize,
) -> Result<BoundReport> {
    expect_variant(s00, SvdVariant::L2L2)?;
    expect_variant(s10, SvdVariant::H1L2)?;
    expect_variant(s01, SvdVariant::L2H1)?;

    let psi_h1: Vec<f64> = (0..s00.rank())
        .map(|k| column_norm_sq(&s00.left, k, h1_rule))
        .collect();
    let phi_h1: Vec<f64> = (0..s00.rank())
        .map(|k| column_norm_sq(&s00.right, k, h1_rule))
        .collect();

    let weighted_tail = |weights: &[f64], r: usize| -> f64 {
        (r..s00.rank())
            .rev()
            .map(|k| s00.sigma[k] * s00.sigma[k] * weights[k])
            .sum()
    };

    let mut report = BoundReport::default();
    for r in 0..=r_max {
        let t00 = s00.tail_sq(r);
        report.rows.push(BoundRow::evaluate(
            "tail_bracket_10",
            r,
            t00,
            weighted_tail(&psi_h1, r),
            s10.tail_sq(r),
        ));
        report.rows.push(BoundRow::evaluate(
            "tail_bracket_01",
            r,
            t00,
            weighted_tail(&phi_h1, r),
            s01.tail_sq(r),
        ));
    }
    Ok(report)
}

/// Exact identity and lower bound tying each derivative-weighted singular
/// value to the plain system:
/// `σ_r¹⁰ = ‖ψ_r¹‖₀^{-1/2}·(Σ_k (σ_k⁰⁰)⁴ ⟨ψ_r¹, ψ_k⟩₁²)^{1/4}` and
/// `σ_r¹⁰ ≥ σ_r⁰⁰·(|⟨ψ_r¹, ψ_r⟩₁| / ‖ψ_r¹‖₀)^{1/2}`, plus the column-side
/// analogue. Ranks with vanishing σ are skipped.
pub fn check_singular_value_identity(
    s00: &SingularSystem,
    s10: &SingularSystem,
    s01: &SingularSystem,
    r_max: usize,
) -> Result<BoundReport> {
    expect_variant(s00, SvdVariant::L2L2)?;
    expect_variant(s10, SvdVariant::H1L2)?;
    expect_variant(s01, SvdVariant::L2H1)?;

    let mut report = BoundReport::default();
    let mut side = |tag: &str, sys: &SingularSystem, sys_cols: &Mat, plain: &Mat| {
        for r in 1..=sys.rank().min(r_max) {
            let col = r - 1;
            let norm0 = column_norm_sq(sys_cols, col, l2_rule).sqrt();
            let sum: f64 = (0..s00.rank())
                .rev()
                .map(|k| {
                    let inner = weighted_inner(sys_cols, col, plain, k, h1_rule);
                    s00.sigma[k].powi(4) * inner * inner
                })
                .sum();
            let rhs = sum.powf(0.25) / norm0.sqrt();
            report.rows.push(BoundRow::evaluate(
                format!("sv_identity_{tag}"),
                r,
                rhs,
                rhs,
                sys.sigma[col],
            ));
            if r <= s00.rank() {
                let inner_r = weighted_inner(sys_cols, col, plain, r - 1, h1_rule);
                let lower = s00.sigma[r - 1] * (inner_r.abs() / norm0).sqrt();
                report.rows.push(BoundRow::evaluate(
                    format!("sv_lowerbound_{tag}"),
                    r,
                    lower,
                    f64::INFINITY,
                    sys.sigma[col],
                ));
            }
        }
    };
    side("10", s10, &s10.left, &s00.left);
    side("01", s01, &s01.right, &s00.right);
    Ok(report)
}

/// Bound on the `H¹ ← L²` operator norm of the orthogonal projection onto an
/// H¹-orthonormal basis: `√2·(Σ_k ‖ψ_k‖₀² + ‖ψ_k''‖₀²)^{1/2}`, with the
/// second derivative realized by the coefficient weight k⁴.
pub fn projection_l2_operator_bound(basis: &SubspaceBasis) -> f64 {
    let mut sum = 0.0;
    for k in (0..basis.dim()).rev() {
        sum += column_norm_sq(&basis.columns, k, l2_rule)
            + column_norm_sq(&basis.columns, k, second_derivative_rule);
    }
    2.0_f64.sqrt() * sum.sqrt()
}

/// Extremal Sobolev norm ratios over a subspace.
#[derive(Clone, Copy, Debug)]
pub struct RegularityFactors {
    /// sup ‖v‖₁/‖v‖₀ over the span.
    pub h1_over_l2: f64,
    /// sup ‖v‖₂/‖v‖₁ over the span.
    pub h2_over_h1: f64,
}

impl RegularityFactors {
    pub fn product(&self) -> f64 {
        self.h1_over_l2 * self.h2_over_h1
    }
}

/// Supremum of `‖v‖_num / ‖v‖_den` over the span, via the generalized
/// symmetric eigenproblem of the two weighted Gram matrices. The denominator
/// Gram is reduced by its Cholesky factor; bases orthonormal in a comparable
/// weight keep it well conditioned.
pub fn rayleigh_sup(
    basis: &SubspaceBasis,
    numerator: FactorWeight,
    denominator: FactorWeight,
) -> Result<f64> {
    if basis.dim() == 0 {
        return Err(Error::InvalidParameter(
            "regularity factors need a nonempty basis".into(),
        ));
    }
    let num_w: Vec<f64> = (0..basis.columns.rows())
        .map(|i| numerator.apply(TrigBasis1D::frequency(i)))
        .collect();
    let den_w: Vec<f64> = (0..basis.columns.rows())
        .map(|i| denominator.apply(TrigBasis1D::frequency(i)))
        .collect();
    let g_num = basis
        .columns
        .transpose()
        .matmul(&basis.columns.scale_rows(&num_w));
    let g_den = basis
        .columns
        .transpose()
        .matmul(&basis.columns.scale_rows(&den_w));
    let l = cholesky(&g_den)?;
    // S = L⁻¹ · G_num · L⁻ᵀ
    let tmp = lower_tri_inverse_times(&l, &g_num);
    let s = lower_tri_inverse_times(&l, &tmp.transpose());
    let eig = sym_eigen(&s)?;
    Ok(eig.values[0].max(0.0).sqrt())
}

/// Both regularity ratios of a factor subspace.
pub fn regularity_factors(basis: &SubspaceBasis) -> Result<RegularityFactors> {
    Ok(RegularityFactors {
        h1_over_l2: rayleigh_sup(basis, FactorWeight::H1, FactorWeight::L2)?,
        h2_over_h1: rayleigh_sup(basis, FactorWeight::H2, FactorWeight::H1)?,
    })
}

/// Two-sided H¹ bound for the rank-`r` tensor projection through the
/// "10"/"01" bases:
/// `(1/√2)·e(r) ≤ ‖u − (P_r⊗Q_r)u‖₁ ≤ (Σ_{k>r}(1+2r²R²)(σ¹⁰)² + (1+2r²L²)(σ⁰¹)²)^{1/2}`
/// with `L`/`R` the regularity factor products of the row/column bases.
pub fn check_tensor_projection_bounds(
    c: &Coeffs2D,
    s10: &SingularSystem,
    s01: &SingularSystem,
    r: usize,
) -> Result<BoundRow> {
    expect_variant(s10, SvdVariant::H1L2)?;
    expect_variant(s01, SvdVariant::L2H1)?;
    let r10 = r.min(s10.rank());
    let r01 = r.min(s01.rank());
    let bx = subspace_from_svd(s10, Side::Left, r10)?;
    let by = subspace_from_svd(s01, Side::Right, r01)?;

    let proj = tensor_project(c, &bx, &by)?;
    let actual = c.sub(&proj)?.norm(SobolevWeight::FullH1)?;

    let tail10 = s10.tail_sq(r);
    let tail01 = s01.tail_sq(r);
    let lower = (0.5 * (tail10 + tail01)).sqrt();

    let l_factor = if r10 > 0 {
        regularity_factors(&bx)?.product()
    } else {
        1.0
    };
    let r_factor = if r01 > 0 {
        regularity_factors(&by)?.product()
    } else {
        1.0
    };
    let r2 = (r * r) as f64;
    let upper = ((1.0 + 2.0 * r2 * r_factor * r_factor) * tail10
        + (1.0 + 2.0 * r2 * l_factor * l_factor) * tail01)
        .sqrt();

    Ok(BoundRow::evaluate("tensor_proj", r, lower, upper, actual))
}

/// Two-sided bracket (in squared H¹ norm) for the mixed-SVD truncation:
/// `(1/2)·S ≤ ‖u − u_r‖₁² ≤ S` where
/// `S = Σ_{k>r}(σ¹¹)²(‖φ_k‖₀² + ‖ψ_k‖₀²)` over the H¹-orthonormal mixed
/// singular vectors.
pub fn check_mix_truncation_bounds(
    c: &Coeffs2D,
    s11: &SingularSystem,
    r: usize,
) -> Result<BoundRow> {
    expect_variant(s11, SvdVariant::MixMix)?;
    let trunc = truncate_from_system(c, s11, r)?;
    let actual_sq = c.sub(&trunc)?.norm(SobolevWeight::FullH1)?.powi(2);
    let s: f64 = (r..s11.rank())
        .rev()
        .map(|k| {
            let psi0 = column_norm_sq(&s11.left, k, l2_rule);
            let phi0 = column_norm_sq(&s11.right, k, l2_rule);
            s11.sigma[k] * s11.sigma[k] * (psi0 + phi0)
        })
        .sum();
    Ok(BoundRow::evaluate("mix_truncation", r, 0.5 * s, s, actual_sq))
}

/// A peeling order for the d = 3 projector composition: a permutation of the
/// modes from which each mode's nested index sets are derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeelOrder {
    perm: [usize; 3],
}

impl PeelOrder {
    pub fn new(perm: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p >= 3 || seen[p] {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation of the three modes"
                )));
            }
            seen[p] = true;
        }
        Ok(Self { perm })
    }

    pub fn all() -> Vec<PeelOrder> {
        let mut out = Vec::with_capacity(6);
        for a in 0..3 {
            for b in 0..3 {
                if b == a {
                    continue;
                }
                let c = 3 - a - b;
                out.push(PeelOrder { perm: [a, b, c] });
            }
        }
        out
    }

    pub fn perm(&self) -> [usize; 3] {
        self.perm
    }

    /// 1-based compact label, e.g. "231".
    pub fn label(&self) -> String {
        self.perm.iter().map(|p| (p + 1).to_string()).collect()
    }

    /// Nested index sets for mode `j`: the empty set, then the other modes
    /// added one at a time in peel order.
    pub fn nested_sets(&self, j: usize) -> [Vec<usize>; 3] {
        let others: Vec<usize> = self.perm.iter().copied().filter(|&p| p != j).collect();
        [
            Vec::new(),
            vec![others[0]],
            vec![others[0], others[1]],
        ]
    }
}

/// Orthogonal projection applied along one mode of a 3-way array.
pub fn mode_project3(t: &Coeffs3D, basis: &SubspaceBasis, mode: usize) -> Result<Coeffs3D> {
    let size = t.size();
    if basis.columns.rows() != size || basis.weight.len() != size {
        return Err(Error::DimensionMismatch(format!(
            "basis of length {} against array of size {size}",
            basis.columns.rows()
        )));
    }
    let m = unfold3(t, mode);
    let psi = &basis.columns;
    let wm = m.scale_rows(&basis.weight);
    let projected = psi.matmul(&psi.transpose().matmul(&wm));
    refold3(&projected, mode, t.max_frequency())
}

fn composed_mode_projection_error(
    t: &Coeffs3D,
    systems: &[SingularSystem; 3],
    r: usize,
) -> Result<f64> {
    let mut current = t.clone();
    for (mode, sys) in systems.iter().enumerate() {
        let basis = subspace_from_svd(sys, Side::Left, r.min(sys.rank()))?;
        current = mode_project3(&current, &basis, mode)?;
    }
    t.sub(&current)?.norm(SobolevWeight::FullH1)
}

/// H¹ error bound for the composed per-mode projections of the plain-H¹
/// family, for one peeling order:
/// `‖u − Πⱼ P_r^j u‖₁ ≤ (Σ_j Σ_{k>r}(σ_k^j)²·[Σ_i (√2·r)^{2(i-1)} Π_{l∈I_i^j} C_l²])^{1/2}`.
/// The actual error composes the projections in fixed mode order 1,2,3.
pub fn check_hosvd_peel_bounds(
    t: &Coeffs3D,
    systems: &[SingularSystem; 3],
    r: usize,
    order: &PeelOrder,
) -> Result<BoundRow> {
    for (j, s) in systems.iter().enumerate() {
        expect_variant(s, SvdVariant::ModeH1(j))?;
    }
    let actual = composed_mode_projection_error(t, systems, r)?;

    let mut c_sq = [1.0_f64; 3];
    if r > 0 {
        for (j, sys) in systems.iter().enumerate() {
            let basis = subspace_from_svd(sys, Side::Left, r.min(sys.rank()))?;
            c_sq[j] = if basis.dim() > 0 {
                regularity_factors(&basis)?.product().powi(2)
            } else {
                1.0
            };
        }
    }

    let two_r_sq = 2.0 * (r * r) as f64;
    let mut total = 0.0;
    for j in 0..3 {
        let sets = order.nested_sets(j);
        let mut coeff = 0.0;
        for (i, set) in sets.iter().enumerate() {
            let mut term = if i == 0 { 1.0 } else { two_r_sq.powi(i as i32) };
            if term == 0.0 {
                continue;
            }
            for &l in set {
                term *= c_sq[l];
            }
            coeff += term;
        }
        total += systems[j].tail_sq(r) * coeff;
    }
    let upper = total.sqrt();
    Ok(BoundRow::evaluate(
        format!("hosvd_peel[{}]", order.label()),
        r,
        0.0,
        upper,
        actual,
    ))
}

/// H¹ error bound for the composed per-mode projections of the factored
/// mixed family, for one permutation `J`:
/// `‖u − P_r u‖₁ ≤ 2·r^{1/2}·Σ_j [max_{i∈(J(j))^c} Π_{k∈{J(1..j-1)}\{i}} D_k]·tail_{J(j)}^{1/2}`
/// with `D_k = sup ‖v‖₂/‖v‖₁` over the mode-k subspace. Requires `r ≥ 1`.
pub fn check_mixed_hosvd_bounds(
    t: &Coeffs3D,
    systems: &[SingularSystem; 3],
    r: usize,
    order: &PeelOrder,
) -> Result<BoundRow> {
    for (j, s) in systems.iter().enumerate() {
        expect_variant(s, SvdVariant::ModeMixJ(j))?;
    }
    if r == 0 {
        return Err(Error::InvalidParameter(
            "the mixed-family bound needs rank r ≥ 1".into(),
        ));
    }
    let actual = composed_mode_projection_error(t, systems, r)?;

    let mut d = [1.0_f64; 3];
    for (j, sys) in systems.iter().enumerate() {
        let basis = subspace_from_svd(sys, Side::Left, r.min(sys.rank()))?;
        d[j] = if basis.dim() > 0 {
            rayleigh_sup(&basis, FactorWeight::H2, FactorWeight::H1)?
        } else {
            1.0
        };
    }

    let perm = order.perm();
    let mut sum = 0.0;
    for j in 0..3 {
        let mode = perm[j];
        let complement: Vec<usize> = (0..3).filter(|&i| i != mode).collect();
        let mut factor = f64::NEG_INFINITY;
        for &i in &complement {
            let mut prod = 1.0;
            for &k in &perm[..j] {
                if k != i {
                    prod *= d[k];
                }
            }
            factor = factor.max(prod);
        }
        sum += factor * systems[mode].tail_sq(r).sqrt();
    }
    let upper = 2.0 * (r as f64).sqrt() * sum;
    Ok(BoundRow::evaluate(
        format!("mixed_hosvd[{}]", order.label()),
        r,
        0.0,
        upper,
        actual,
    ))
}

fn expect_variant(s: &SingularSystem, expected: SvdVariant) -> Result<()> {
    if s.variant != expected {
        return Err(Error::VariantMismatch {
            expected: expected.label(),
            got: s.variant.label(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{analyze2, analyze3};
    use crate::projections::BasisLabel;
    use crate::svd::{hosvd3, weighted_svd, HosvdFamily};
    use std::f64::consts::PI;

    fn cos_cos(n: usize) -> Coeffs2D {
        let mut c = Coeffs2D::zeros(n);
        c.set(1, 1, PI);
        c
    }

    fn systems(c: &Coeffs2D) -> (SingularSystem, SingularSystem, SingularSystem) {
        (
            weighted_svd(c, SvdVariant::L2L2).unwrap(),
            weighted_svd(c, SvdVariant::H1L2).unwrap(),
            weighted_svd(c, SvdVariant::L2H1).unwrap(),
        )
    }

    #[test]
    fn tail_bracket_rank_one() {
        let c = cos_cos(3);
        let (s00, s10, s01) = systems(&c);
        let report = check_tail_inequalities(&s00, &s10, &s01, 2).unwrap();
        assert!(report.all_satisfied());
        let row = &report.rows[0];
        assert_eq!(row.rank, 0);
        assert!((row.lower - PI * PI).abs() < 1e-9);
        assert!((row.actual - 2.0 * PI * PI).abs() < 1e-9);
        // ‖ψ₁‖₁² = 2 for the L²-normalized cosine, so the upper bound is
        // attained exactly.
        assert!((row.upper - 2.0 * PI * PI).abs() < 1e-9);
        // full-rank tails are all zero
        let last = &report.rows[report.rows.len() - 1];
        assert_eq!(last.lower, 0.0);
        assert_eq!(last.actual, 0.0);
    }

    #[test]
    fn tail_bracket_rough_function() {
        let c = analyze2(|x, y| (x * x + y * y).powf(0.3), 8, 8).unwrap();
        let (s00, s10, s01) = systems(&c);
        let report = check_tail_inequalities(&s00, &s10, &s01, c.size()).unwrap();
        assert!(report.all_satisfied());
    }

    #[test]
    fn singular_value_identity_rank_one() {
        let c = cos_cos(3);
        let (s00, s10, s01) = systems(&c);
        let report = check_singular_value_identity(&s00, &s10, &s01, 1).unwrap();
        assert!(report.all_satisfied());
        let identity = report.rows.iter().find(|r| r.name == "sv_identity_10").unwrap();
        assert!((identity.lower - PI * 2.0_f64.sqrt()).abs() < 1e-9);
        assert!((identity.actual - PI * 2.0_f64.sqrt()).abs() < 1e-9);
        // lower bound attains equality here
        let lower = report.rows.iter().find(|r| r.name == "sv_lowerbound_10").unwrap();
        assert!((lower.lower - PI * 2.0_f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn singular_value_identity_rough_function() {
        let c = analyze2(|x, y| (x * x + y * y).powf(0.3), 8, 8).unwrap();
        let (s00, s10, s01) = systems(&c);
        let report = check_singular_value_identity(&s00, &s10, &s01, 5).unwrap();
        for row in report.rows.iter().filter(|r| r.name.starts_with("sv_identity")) {
            let residual = (row.actual - row.lower).abs() / row.lower;
            assert!(residual < 1e-8, "{} r={}: {residual}", row.name, row.rank);
        }
        assert!(report.all_satisfied());
    }

    #[test]
    fn operator_bound_single_cosine() {
        let c = cos_cos(3);
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let b = subspace_from_svd(&s10, Side::Left, 1).unwrap();
        // ‖ψ‖₀² = 1/2 and ‖ψ''‖₀² = 1/2 for ψ = cos x/√(2π)
        assert!((projection_l2_operator_bound(&b) - 2.0_f64.sqrt()).abs() < 1e-12);

        let empty = subspace_from_svd(&s10, Side::Left, 0).unwrap();
        assert_eq!(projection_l2_operator_bound(&empty), 0.0);
    }

    #[test]
    fn operator_bound_dominates_on_samples() {
        let c = analyze2(|x, y| (x.cos() * y.cos()).exp(), 6, 4).unwrap();
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let b = subspace_from_svd(&s10, Side::Left, 3.min(s10.rank())).unwrap();
        let bound = projection_l2_operator_bound(&b);
        // P v = Σ ⟨v,ψ_k⟩₁ ψ_k on the H¹-orthonormal columns
        let size = c.size();
        let mut state = 0x9e3779b97f4a7c15_u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..200 {
            let v: Vec<f64> = (0..size).map(|_| next()).collect();
            let vmat = Mat::from_columns(&[v]);
            let mut p_h1_sq = 0.0;
            for k in 0..b.dim() {
                let inner = weighted_inner(&vmat, 0, &b.columns, k, h1_rule);
                p_h1_sq += inner * inner;
            }
            let v_l2 = column_norm_sq(&vmat, 0, l2_rule).sqrt();
            assert!(p_h1_sq.sqrt() <= bound * v_l2 * (1.0 + 1e-12));
        }
        // an orthogonal input projects to zero
        let mut sin3 = vec![0.0; size];
        sin3[6] = 1.0;
        let vmat = Mat::from_columns(&[sin3]);
        let mut p_h1_sq = 0.0;
        for k in 0..b.dim() {
            let inner = weighted_inner(&vmat, 0, &b.columns, k, h1_rule);
            p_h1_sq += inner * inner;
        }
        assert!(p_h1_sq.sqrt() <= bound);
    }

    #[test]
    fn rayleigh_sup_closed_forms() {
        let c = cos_cos(3);
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let b = subspace_from_svd(&s10, Side::Left, 1).unwrap();
        let v = rayleigh_sup(&b, FactorWeight::H1, FactorWeight::L2).unwrap();
        assert!((v - 2.0_f64.sqrt()).abs() < 1e-10);

        // constant-only basis: every ratio is 1
        let mut cols = Mat::zeros(7, 1);
        cols.set(0, 0, 1.0);
        let const_basis = SubspaceBasis {
            columns: cols,
            weight: vec![1.0; 7],
            label: BasisLabel::Other,
        };
        for (num, den) in [
            (FactorWeight::H1, FactorWeight::L2),
            (FactorWeight::H2, FactorWeight::H1),
        ] {
            let v = rayleigh_sup(&const_basis, num, den).unwrap();
            assert!((v - 1.0).abs() < 1e-12);
        }

        // span{cos x, cos 2x}, H¹-orthonormalized: sup ‖v‖₂/‖v‖₁ = √(21/5)
        let mut cols = Mat::zeros(7, 2);
        cols.set(1, 0, 1.0 / 2.0_f64.sqrt());
        cols.set(3, 1, 1.0 / 5.0_f64.sqrt());
        let b2 = SubspaceBasis {
            columns: cols,
            weight: weight_vec_h1(3),
            label: BasisLabel::Other,
        };
        let v = rayleigh_sup(&b2, FactorWeight::H2, FactorWeight::H1).unwrap();
        assert!((v - (21.0_f64 / 5.0).sqrt()).abs() < 1e-10);
    }

    fn weight_vec_h1(n: usize) -> Vec<f64> {
        crate::fourier::weight_vector(n, FactorWeight::H1)
    }

    #[test]
    fn regularity_factors_monotone_under_growth() {
        let c = analyze2(|x, y| (x * x + y * y).powf(0.3), 6, 8).unwrap();
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let mut prev = RegularityFactors {
            h1_over_l2: 0.0,
            h2_over_h1: 0.0,
        };
        for r in 1..=5.min(s10.rank()) {
            let b = subspace_from_svd(&s10, Side::Left, r).unwrap();
            let f = regularity_factors(&b).unwrap();
            assert!(f.h1_over_l2 >= 1.0 - 1e-12);
            assert!(f.h2_over_h1 >= 1.0 - 1e-12);
            assert!(f.h1_over_l2 >= prev.h1_over_l2 - 1e-9, "r={r}");
            assert!(f.h2_over_h1 >= prev.h2_over_h1 - 1e-9, "r={r}");
            prev = f;
        }
    }

    #[test]
    fn tensor_projection_bounds_rank_one() {
        let c = cos_cos(3);
        let (_, s10, s01) = systems(&c);
        let row = check_tensor_projection_bounds(&c, &s10, &s01, 1).unwrap();
        assert!(row.satisfied);
        assert!(row.actual < 1e-10);
        assert!(row.upper < 1e-9);

        let row0 = check_tensor_projection_bounds(&c, &s10, &s01, 0).unwrap();
        assert!(row0.satisfied);
        // lower = e(0)/√2 = 2π/√2, actual = ‖u‖₁ = √3·π
        assert!((row0.lower - 2.0 * PI / 2.0_f64.sqrt()).abs() < 1e-9);
        assert!((row0.actual - 3.0_f64.sqrt() * PI).abs() < 1e-9);
    }

    #[test]
    fn tensor_projection_bounds_rough_function() {
        let c = analyze2(|x, y| (x * x + y * y).powf(0.3), 8, 8).unwrap();
        let (_, s10, s01) = systems(&c);
        for r in 0..=8 {
            let row = check_tensor_projection_bounds(&c, &s10, &s01, r).unwrap();
            assert!(row.satisfied, "r={r}: {row:?}");
        }
    }

    #[test]
    fn mix_truncation_bracket() {
        let c = cos_cos(3);
        let s11 = weighted_svd(&c, SvdVariant::MixMix).unwrap();
        let row1 = check_mix_truncation_bounds(&c, &s11, 1).unwrap();
        assert!(row1.satisfied);
        assert!(row1.actual < 1e-10 && row1.upper < 1e-10);

        let row0 = check_mix_truncation_bounds(&c, &s11, 0).unwrap();
        assert!(row0.satisfied);
        assert!((row0.actual - 3.0 * PI * PI).abs() < 1e-9);
        assert!((row0.lower - 2.0 * PI * PI).abs() < 1e-9);
        assert!((row0.upper - 4.0 * PI * PI).abs() < 1e-9);

        let c = analyze2(|x, y| (x.cos() * y.cos()).exp(), 8, 4).unwrap();
        let s11 = weighted_svd(&c, SvdVariant::MixMix).unwrap();
        for r in 1..=6 {
            let row = check_mix_truncation_bounds(&c, &s11, r).unwrap();
            assert!(row.satisfied, "r={r}: {row:?}");
        }
    }

    #[test]
    fn peel_orders_enumeration_and_sets() {
        let orders = PeelOrder::all();
        assert_eq!(orders.len(), 6);
        for order in &orders {
            for j in 0..3 {
                let sets = order.nested_sets(j);
                assert!(sets[0].is_empty());
                assert_eq!(sets[1].len(), 1);
                assert_eq!(sets[2].len(), 2);
                for set in &sets {
                    assert!(set.iter().all(|&l| l != j));
                }
                assert!(sets[2].contains(&sets[1][0]));
            }
        }
        assert!(PeelOrder::new([0, 0, 1]).is_err());
    }

    #[test]
    fn hosvd_peel_bounds_rank_one_product() {
        let t = analyze3(|x, y, z| x.cos() * y.cos() * z.cos(), 2, 3).unwrap();
        let systems = hosvd3(&t, HosvdFamily::PlainH1).unwrap();
        for order in PeelOrder::all() {
            let row = check_hosvd_peel_bounds(&t, &systems, 1, &order).unwrap();
            assert!(row.satisfied);
            assert!(row.actual < 1e-10 && row.upper < 1e-9);
        }
        // r = 0: bound is the plain tail expression, actual is ‖u‖₁
        let row0 = check_hosvd_peel_bounds(&t, &systems, 0, &PeelOrder::new([0, 1, 2]).unwrap())
            .unwrap();
        assert!(row0.satisfied);
        let h1 = t.norm(SobolevWeight::FullH1).unwrap();
        assert!((row0.actual - h1).abs() < 1e-9);
        assert!(row0.upper >= h1);
    }

    #[test]
    fn mixed_hosvd_bounds_rank_one_product() {
        let t = analyze3(|x, y, z| x.cos() * y.cos() * z.cos(), 2, 3).unwrap();
        let systems = hosvd3(&t, HosvdFamily::MixJ).unwrap();
        for order in PeelOrder::all() {
            let row = check_mixed_hosvd_bounds(&t, &systems, 1, &order).unwrap();
            assert!(row.satisfied);
            assert!(row.actual < 1e-10);
        }
        let err = check_mixed_hosvd_bounds(
            &t,
            &systems,
            0,
            &PeelOrder::new([0, 1, 2]).unwrap(),
        );
        assert!(err.is_err());
    }

    #[test]
    fn hosvd_bounds_rough_function_small() {
        let t = analyze3(|x, y, z| (x * x + y * y + z * z).powf(0.3), 4, 4).unwrap();
        let plain = hosvd3(&t, HosvdFamily::PlainH1).unwrap();
        let mixed = hosvd3(&t, HosvdFamily::MixJ).unwrap();
        for order in PeelOrder::all() {
            for r in 1..=2 {
                let a = check_hosvd_peel_bounds(&t, &plain, r, &order).unwrap();
                assert!(a.satisfied, "plain r={r} order={}", order.label());
                let b = check_mixed_hosvd_bounds(&t, &mixed, r, &order).unwrap();
                assert!(b.satisfied, "mixed r={r} order={}", order.label());
            }
        }
    }
}
