//! Weighted-orthogonal projections onto singular-vector subspaces, rank
//! truncations, the pooled H¹-optimal projection, and the tail-sum error
//! estimator.

use crate::fourier::{Coeffs2D, SobolevWeight, TrigBasis1D};
use crate::linalg::{jacobi_svd, sym_eigen, Mat};
use crate::svd::{weighted_svd, SingularSystem, SvdVariant};
use crate::{Error, Result};

/// What a subspace basis was extracted from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    /// H¹-orthonormal left vectors of the "10" system (x-factor).
    XFactorH1,
    /// H¹-orthonormal right vectors of the "01" system (y-factor).
    YFactorH1,
    /// L²-orthonormal left vectors of the "01" system (x-factor).
    XFactorL2,
    /// L²-orthonormal right vectors of the "10" system (y-factor).
    YFactorL2,
    /// Mode-`j` vectors of a 3-way plain-H¹ system.
    Mode(usize),
    /// Mode-`j` vectors of a 3-way factored-mixed system.
    ModeMixed(usize),
    Other,
}

/// A finite-dimensional subspace given by coefficient columns orthonormal
/// under a diagonal weight.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub columns: Mat,
    pub weight: Vec<f64>,
    pub label: BasisLabel,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.columns.cols()
    }

    /// Worst deviation of `ΨᵀWΨ` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self
            .columns
            .transpose()
            .matmul(&self.columns.scale_rows(&self.weight));
        g.sub(&Mat::identity(self.dim())).max_abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// First `r` singular vectors of the chosen side, carrying the system's
/// weight. Rejects `r` beyond the positive rank.
pub fn subspace_from_svd(s: &SingularSystem, side: Side, r: usize) -> Result<SubspaceBasis> {
    if r > s.rank() {
        return Err(Error::RankTooLarge {
            requested: r,
            available: s.rank(),
        });
    }
    let (columns, weight) = match side {
        Side::Left => (s.left.column_block(r), s.row_weight.clone()),
        Side::Right => (s.right.column_block(r), s.col_weight.clone()),
    };
    let label = match (s.variant, side) {
        (SvdVariant::H1L2, Side::Left) => BasisLabel::XFactorH1,
        (SvdVariant::L2H1, Side::Right) => BasisLabel::YFactorH1,
        (SvdVariant::L2H1, Side::Left) => BasisLabel::XFactorL2,
        (SvdVariant::H1L2, Side::Right) => BasisLabel::YFactorL2,
        (SvdVariant::ModeH1(j), Side::Left) => BasisLabel::Mode(j),
        (SvdVariant::ModeMixJ(j), Side::Left) => BasisLabel::ModeMixed(j),
        _ => BasisLabel::Other,
    };
    Ok(SubspaceBasis {
        columns,
        weight,
        label,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionSide {
    Rows,
    Cols,
}

/// Apply the weighted-orthogonal projection onto `span(basis)` to the rows
/// or columns of the coefficient array: `C ↦ Ψ·ΨᵀW·C` (rows) or
/// `C ↦ C·WΨ·Ψᵀ` (columns). Idempotent; the empty basis maps to zero.
pub fn project_onesided(
    c: &Coeffs2D,
    basis: &SubspaceBasis,
    side: ProjectionSide,
) -> Result<Coeffs2D> {
    let size = c.size();
    if basis.columns.rows() != size || basis.weight.len() != size {
        return Err(Error::DimensionMismatch(format!(
            "basis of length {} against coefficient array of size {size}",
            basis.columns.rows()
        )));
    }
    let psi = &basis.columns;
    let out = match side {
        ProjectionSide::Rows => {
            // Ψ · (Ψᵀ · (W·C))
            let wc = c.matrix().scale_rows(&basis.weight);
            psi.matmul(&psi.transpose().matmul(&wc))
        }
        ProjectionSide::Cols => {
            // ((C·W) · Ψ) · Ψᵀ
            let cw = c.matrix().scale_cols(&basis.weight);
            cw.matmul(psi).matmul(&psi.transpose())
        }
    };
    Coeffs2D::new(c.max_frequency(), out)
}

/// `(P_r ⊗ Q_r)C`: the row projection followed by the column projection.
/// The two one-sided projections commute in finite dimensions.
pub fn tensor_project(c: &Coeffs2D, bx: &SubspaceBasis, by: &SubspaceBasis) -> Result<Coeffs2D> {
    let rows = project_onesided(c, bx, ProjectionSide::Rows)?;
    project_onesided(&rows, by, ProjectionSide::Cols)
}

/// Best rank-`r` approximation in L². For `r ≥ rank(C)` the input is
/// returned unchanged.
pub fn truncate_l2(c: &Coeffs2D, r: usize) -> Result<Coeffs2D> {
    let s = weighted_svd(c, SvdVariant::L2L2)?;
    truncate_from_system(c, &s, r)
}

pub(crate) fn truncate_from_system(
    c: &Coeffs2D,
    s: &SingularSystem,
    r: usize,
) -> Result<Coeffs2D> {
    if r >= s.rank() {
        return Ok(c.clone());
    }
    Coeffs2D::new(c.max_frequency(), s.truncated_matrix(r))
}

/// Tail-sum error estimator `e(r) = (Σ_{k>r} (σ_k^{10})² + (σ_k^{01})²)^{1/2}`.
pub fn error_estimator(s10: &SingularSystem, s01: &SingularSystem, r: usize) -> Result<f64> {
    if s10.variant != SvdVariant::H1L2 {
        return Err(Error::VariantMismatch {
            expected: "10".into(),
            got: s10.variant.label(),
        });
    }
    if s01.variant != SvdVariant::L2H1 {
        return Err(Error::VariantMismatch {
            expected: "01".into(),
            got: s01.variant.label(),
        });
    }
    Ok((s10.tail_sq(r) + s01.tail_sq(r)).sqrt())
}

/// Result of the pooled H¹-orthogonal projection.
#[derive(Clone, Debug)]
pub struct OptimalProjection {
    pub coeffs: Coeffs2D,
    /// Set when the pooled candidates were linearly dependent (per-side Gram
    /// condition estimate above 1e12), so the span was reduced before
    /// solving.
    pub dependent_candidates: bool,
}

/// H¹(Ω)-orthogonal projection of `C` onto `span{ b_i(x)·c_j(y) }` over all
/// pairs of candidate columns.
///
/// Each candidate pool is first reduced to an L²-orthonormal basis of its
/// span; the normal equations then factor as a Kronecker sum
/// `(I+Dx)⊗I + I⊗Dy` of 1-D derivative Grams, which is solved exactly
/// through their eigendecompositions. The projection only depends on the
/// spans, so the reduction is lossless.
pub fn optimal_h1_projection(
    c: &Coeffs2D,
    x_candidates: &Mat,
    y_candidates: &Mat,
) -> Result<OptimalProjection> {
    let size = c.size();
    if x_candidates.rows() != size || y_candidates.rows() != size {
        return Err(Error::DimensionMismatch(format!(
            "candidate columns of length {}/{} against coefficient array of size {size}",
            x_candidates.rows(),
            y_candidates.rows()
        )));
    }
    if x_candidates.cols() == 0 || y_candidates.cols() == 0 {
        return Ok(OptimalProjection {
            coeffs: Coeffs2D::zeros(c.max_frequency()),
            dependent_candidates: false,
        });
    }

    let (xq, x_dependent) = reduce_pool(x_candidates)?;
    let (yq, y_dependent) = reduce_pool(y_candidates)?;
    let px = xq.cols();
    let py = yq.cols();

    // Full span on both sides: the projection reproduces C exactly.
    if px == size && py == size {
        return Ok(OptimalProjection {
            coeffs: c.clone(),
            dependent_candidates: x_dependent || y_dependent,
        });
    }

    let deriv: Vec<f64> = (0..size)
        .map(|i| {
            let f = TrigBasis1D::frequency(i) as f64;
            f * f
        })
        .collect();
    let dx = xq.transpose().matmul(&xq.scale_rows(&deriv));
    let dy = yq.transpose().matmul(&yq.scale_rows(&deriv));
    let ex = sym_eigen(&dx)?;
    let ey = sym_eigen(&dy)?;

    // Right-hand side in the reduced bases: B = Xᵀ·(Wfull ∘ C)·Y.
    let wc = c.map(|fi, fj, v| (1.0 + (fi * fi + fj * fj) as f64) * v);
    let b = xq.transpose().matmul(&wc.matrix().matmul(&yq));

    // Solve ((I+Dx)⊗I + I⊗Dy) z = b via the eigenbases: the transformed
    // system is diagonal with entries 1 + λx_i + λy_j ≥ 1.
    let bt = ex.vectors.transpose().matmul(&b.matmul(&ey.vectors));
    let zt = Mat::from_fn(px, py, |i, j| {
        bt.get(i, j) / (1.0 + ex.values[i] + ey.values[j])
    });
    let z = ex.vectors.matmul(&zt.matmul(&ey.vectors.transpose()));

    let coeffs = Coeffs2D::new(c.max_frequency(), xq.matmul(&z.matmul(&yq.transpose())))?;
    Ok(OptimalProjection {
        coeffs,
        dependent_candidates: x_dependent || y_dependent,
    })
}

/// L²-orthonormal basis of the pool's span and whether the pool was
/// rank-deficient (condition estimate of its Gram above 1e12).
fn reduce_pool(pool: &Mat) -> Result<(Mat, bool)> {
    let svd = jacobi_svd(pool)?;
    let dropped = svd.sigma.len() < pool.cols();
    let cond_sq = if svd.sigma.is_empty() {
        f64::INFINITY
    } else {
        let s0 = svd.sigma[0];
        let sl = *svd.sigma.last().unwrap();
        (s0 / sl).powi(2)
    };
    Ok((svd.u, dropped || cond_sq > 1e12))
}

/// Per-rank errors of one approximation method.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    L2Svd,
    TensorProject,
    OptimalH1,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::L2Svd => "l2svd",
            Method::TensorProject => "tensorproj",
            Method::OptimalH1 => "optimal",
        }
    }
}

/// One row of an error report: all errors of one method at one rank.
#[derive(Clone, Debug)]
pub struct ErrorRow {
    pub rank: usize,
    pub method: Method,
    pub l2: f64,
    pub h1: f64,
    /// Error in the `H¹⊗L²` crossnorm.
    pub e10: f64,
    /// Error in the `L²⊗H¹` crossnorm.
    pub e01: f64,
    pub estimator: f64,
}

#[derive(Clone, Debug, Default)]
pub struct ErrorReport {
    pub rows: Vec<ErrorRow>,
}

impl ErrorReport {
    pub fn rows_for(&self, method: Method) -> impl Iterator<Item = &ErrorRow> {
        self.rows.iter().filter(move |r| r.method == method)
    }
}

fn error_row(
    c: &Coeffs2D,
    approx: &Coeffs2D,
    rank: usize,
    method: Method,
    estimator: f64,
) -> Result<ErrorRow> {
    let diff = c.sub(approx)?;
    Ok(ErrorRow {
        rank,
        method,
        l2: diff.norm(SobolevWeight::L2)?,
        h1: diff.norm(SobolevWeight::FullH1)?,
        e10: diff.norm(SobolevWeight::PartialH1(0))?,
        e01: diff.norm(SobolevWeight::PartialH1(1))?,
        estimator,
    })
}

/// Errors of the rank-`r` L² truncation, the tensor projection through the
/// "10"/"01" bases, and the pooled H¹-optimal projection, for every rank
/// `0..=r_max`, together with the estimator `e(r)`.
pub fn errors_vs_rank(c: &Coeffs2D, r_max: usize) -> Result<ErrorReport> {
    let s00 = weighted_svd(c, SvdVariant::L2L2)?;
    let s10 = weighted_svd(c, SvdVariant::H1L2)?;
    let s01 = weighted_svd(c, SvdVariant::L2H1)?;
    errors_vs_rank_with(c, &s00, &s10, &s01, r_max)
}

/// [`errors_vs_rank`] on precomputed singular systems.
pub fn errors_vs_rank_with(
    c: &Coeffs2D,
    s00: &SingularSystem,
    s10: &SingularSystem,
    s01: &SingularSystem,
    r_max: usize,
) -> Result<ErrorReport> {
    if r_max > c.size() {
        return Err(Error::RankTooLarge {
            requested: r_max,
            available: c.size(),
        });
    }
    let mut report = ErrorReport::default();
    for r in 0..=r_max {
        let est = error_estimator(s10, s01, r)?;

        let trunc = truncate_from_system(c, s00, r)?;
        report.rows.push(error_row(c, &trunc, r, Method::L2Svd, est)?);

        let bx = subspace_from_svd(s10, Side::Left, r.min(s10.rank()))?;
        let by = subspace_from_svd(s01, Side::Right, r.min(s01.rank()))?;
        let proj = tensor_project(c, &bx, &by)?;
        report
            .rows
            .push(error_row(c, &proj, r, Method::TensorProject, est)?);

        let x_pool = s00
            .left
            .column_block(r.min(s00.rank()))
            .hcat(&s10.left.column_block(r.min(s10.rank())))
            .hcat(&s01.left.column_block(r.min(s01.rank())));
        let y_pool = s00
            .right
            .column_block(r.min(s00.rank()))
            .hcat(&s01.right.column_block(r.min(s01.rank())))
            .hcat(&s10.right.column_block(r.min(s10.rank())));
        let opt = optimal_h1_projection(c, &x_pool, &y_pool)?;
        report
            .rows
            .push(error_row(c, &opt.coeffs, r, Method::OptimalH1, est)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::analyze2;
    use std::f64::consts::PI;

    fn cos_cos(n: usize) -> Coeffs2D {
        let mut c = Coeffs2D::zeros(n);
        c.set(1, 1, PI);
        c
    }

    fn r06(n: usize) -> Coeffs2D {
        analyze2(|x, y| (x * x + y * y).powf(0.3), n, 8).unwrap()
    }

    #[test]
    fn truncate_l2_trivial_cases() {
        let c = cos_cos(3);
        let t1 = truncate_l2(&c, 1).unwrap();
        assert_eq!(t1.sub(&c).unwrap().matrix().max_abs(), 0.0);

        let t0 = truncate_l2(&c, 0).unwrap();
        assert_eq!(t0.matrix().max_abs(), 0.0);
        assert!(
            (c.sub(&t0).unwrap().norm(SobolevWeight::L2).unwrap()
                - c.norm(SobolevWeight::L2).unwrap())
            .abs()
                < 1e-12
        );
    }

    #[test]
    fn truncate_l2_error_equals_tail() {
        let c = r06(8);
        let s00 = weighted_svd(&c, SvdVariant::L2L2).unwrap();
        for r in [1, 3, 5] {
            let t = truncate_l2(&c, r).unwrap();
            let err = c.sub(&t).unwrap().norm(SobolevWeight::L2).unwrap();
            let tail = s00.tail_sq(r).sqrt();
            assert!((err - tail).abs() < 1e-10 * (1.0 + tail), "r={r}");
        }
    }

    #[test]
    fn subspace_extraction() {
        let c = cos_cos(3);
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let b = subspace_from_svd(&s10, Side::Left, 1).unwrap();
        assert_eq!(b.label, BasisLabel::XFactorH1);
        assert_eq!(b.dim(), 1);
        // coefficients of cos x / √(2π)
        assert!((b.columns.get(1, 0) - 1.0 / 2.0_f64.sqrt()).abs() < 1e-12);
        assert!(b.orthonormality_defect() < 1e-12);

        let empty = subspace_from_svd(&s10, Side::Left, 0).unwrap();
        assert_eq!(empty.dim(), 0);

        assert!(matches!(
            subspace_from_svd(&s10, Side::Left, 2),
            Err(Error::RankTooLarge { .. })
        ));
    }

    #[test]
    fn subspace_gram_on_rough_function() {
        let c = r06(6);
        let s00 = weighted_svd(&c, SvdVariant::L2L2).unwrap();
        let b = subspace_from_svd(&s00, Side::Left, 2).unwrap();
        assert!(b.orthonormality_defect() < 1e-10);
    }

    #[test]
    fn onesided_projection_identity_zero_and_rank_one() {
        let c = r06(5);
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();

        let full = subspace_from_svd(&s10, Side::Left, s10.rank()).unwrap();
        let p = project_onesided(&c, &full, ProjectionSide::Rows).unwrap();
        assert!(p.sub(&c).unwrap().matrix().max_abs() < 1e-10);

        let empty = subspace_from_svd(&s10, Side::Left, 0).unwrap();
        let z = project_onesided(&c, &empty, ProjectionSide::Rows).unwrap();
        assert_eq!(z.matrix().max_abs(), 0.0);

        let cc = cos_cos(4);
        let s10cc = weighted_svd(&cc, SvdVariant::H1L2).unwrap();
        let b1 = subspace_from_svd(&s10cc, Side::Left, 1).unwrap();
        let pcc = project_onesided(&cc, &b1, ProjectionSide::Rows).unwrap();
        assert!(pcc.sub(&cc).unwrap().matrix().max_abs() < 1e-12);
    }

    #[test]
    fn onesided_projection_is_idempotent_and_optimal() {
        let c = r06(6);
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let b = subspace_from_svd(&s10, Side::Left, 3).unwrap();
        let p1 = project_onesided(&c, &b, ProjectionSide::Rows).unwrap();
        let p2 = project_onesided(&p1, &b, ProjectionSide::Rows).unwrap();
        assert!(p2.sub(&p1).unwrap().matrix().max_abs() < 1e-12);

        // optimality in its own norm: error² equals the tail sum
        let err = c
            .sub(&p1)
            .unwrap()
            .norm(SobolevWeight::PartialH1(0))
            .unwrap()
            .powi(2);
        let tail = s10.tail_sq(3);
        assert!((err - tail).abs() < 1e-10 * (1.0 + tail));

        // Pythagoras in the projection's own norm
        let total = c.norm(SobolevWeight::PartialH1(0)).unwrap().powi(2);
        let kept = p1.norm(SobolevWeight::PartialH1(0)).unwrap().powi(2);
        assert!((total - (kept + err)).abs() < 1e-10 * total);
    }

    #[test]
    fn tensor_projection_commutes() {
        let c = r06(6);
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let s01 = weighted_svd(&c, SvdVariant::L2H1).unwrap();
        let bx = subspace_from_svd(&s10, Side::Left, 4).unwrap();
        let by = subspace_from_svd(&s01, Side::Right, 4).unwrap();

        let rows_first = tensor_project(&c, &bx, &by).unwrap();
        let cols_first = project_onesided(
            &project_onesided(&c, &by, ProjectionSide::Cols).unwrap(),
            &bx,
            ProjectionSide::Rows,
        )
        .unwrap();
        assert!(rows_first.sub(&cols_first).unwrap().matrix().max_abs() < 1e-12);

        // idempotent
        let twice = tensor_project(&rows_first, &bx, &by).unwrap();
        assert!(twice.sub(&rows_first).unwrap().matrix().max_abs() < 1e-12);

        // full bases on both sides give the identity
        let bxf = subspace_from_svd(&s10, Side::Left, s10.rank()).unwrap();
        let byf = subspace_from_svd(&s01, Side::Right, s01.rank()).unwrap();
        let id = tensor_project(&c, &bxf, &byf).unwrap();
        assert!(id.sub(&c).unwrap().matrix().max_abs() < 1e-10);
    }

    #[test]
    fn estimator_values_and_identity() {
        let c = cos_cos(3);
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let s01 = weighted_svd(&c, SvdVariant::L2H1).unwrap();
        assert_eq!(error_estimator(&s10, &s01, 1).unwrap(), 0.0);
        assert!((error_estimator(&s10, &s01, 0).unwrap() - 2.0 * PI).abs() < 1e-10);

        // e(r)² = ‖C − (P_r⊗id)C‖²₁₀ + ‖C − (id⊗Q_r)C‖²₀₁ (tail identity)
        let c = r06(6);
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let s01 = weighted_svd(&c, SvdVariant::L2H1).unwrap();
        for r in [0, 2, 5] {
            let bx = subspace_from_svd(&s10, Side::Left, r).unwrap();
            let by = subspace_from_svd(&s01, Side::Right, r).unwrap();
            let pr = project_onesided(&c, &bx, ProjectionSide::Rows).unwrap();
            let qc = project_onesided(&c, &by, ProjectionSide::Cols).unwrap();
            let lhs = error_estimator(&s10, &s01, r).unwrap().powi(2);
            let rhs = c
                .sub(&pr)
                .unwrap()
                .norm(SobolevWeight::PartialH1(0))
                .unwrap()
                .powi(2)
                + c.sub(&qc)
                    .unwrap()
                    .norm(SobolevWeight::PartialH1(1))
                    .unwrap()
                    .powi(2);
            assert!((lhs - rhs).abs() < 1e-10 * (1.0 + rhs), "r={r}");
        }
    }

    #[test]
    fn estimator_nonincreasing() {
        let c = r06(6);
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let s01 = weighted_svd(&c, SvdVariant::L2H1).unwrap();
        let mut prev = f64::INFINITY;
        for r in 0..=c.size() {
            let e = error_estimator(&s10, &s01, r).unwrap();
            assert!(e <= prev + 1e-14);
            prev = e;
        }
        assert_eq!(prev, 0.0);
    }

    #[test]
    fn optimal_projection_rank_one_and_exactness() {
        let c = cos_cos(3);
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let s01 = weighted_svd(&c, SvdVariant::L2H1).unwrap();
        let x = s10.left.column_block(1);
        let y = s01.right.column_block(1);
        let opt = optimal_h1_projection(&c, &x, &y).unwrap();
        assert!(opt.coeffs.sub(&c).unwrap().matrix().max_abs() < 1e-10);
        assert!(!opt.dependent_candidates);
    }

    #[test]
    fn optimal_projection_beats_l2_truncation() {
        let c = r06(8);
        let s00 = weighted_svd(&c, SvdVariant::L2L2).unwrap();
        let s10 = weighted_svd(&c, SvdVariant::H1L2).unwrap();
        let s01 = weighted_svd(&c, SvdVariant::L2H1).unwrap();
        let r = 3;
        let x_pool = s00
            .left
            .column_block(r)
            .hcat(&s10.left.column_block(r))
            .hcat(&s01.left.column_block(r));
        let y_pool = s00
            .right
            .column_block(r)
            .hcat(&s01.right.column_block(r))
            .hcat(&s10.right.column_block(r));
        let opt = optimal_h1_projection(&c, &x_pool, &y_pool).unwrap();
        let h1_opt = c
            .sub(&opt.coeffs)
            .unwrap()
            .norm(SobolevWeight::FullH1)
            .unwrap();
        let trunc = truncate_l2(&c, r).unwrap();
        let h1_trunc = c.sub(&trunc).unwrap().norm(SobolevWeight::FullH1).unwrap();
        assert!(h1_opt <= h1_trunc * (1.0 + 1e-10), "{h1_opt} vs {h1_trunc}");
    }

    #[test]
    fn optimal_projection_flags_dependent_pool() {
        let c = r06(5);
        let s00 = weighted_svd(&c, SvdVariant::L2L2).unwrap();
        // duplicate the same columns: clearly dependent
        let x = s00.left.column_block(2).hcat(&s00.left.column_block(2));
        let y = s00.right.column_block(2);
        let opt = optimal_h1_projection(&c, &x, &y).unwrap();
        assert!(opt.dependent_candidates);
    }

    #[test]
    fn report_rank_one_input() {
        let c = cos_cos(3);
        let report = errors_vs_rank(&c, 3).unwrap();
        for row in &report.rows {
            if row.rank >= 1 {
                assert!(row.h1 < 1e-10, "{:?} r={} h1={}", row.method, row.rank, row.h1);
                assert!(row.l2 < 1e-10);
            }
        }
    }

    #[test]
    fn report_monotone_l2_and_full_rank_zero() {
        let c = r06(5);
        let report = errors_vs_rank(&c, c.size()).unwrap();
        let l2: Vec<f64> = report.rows_for(Method::L2Svd).map(|r| r.l2).collect();
        for w in l2.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        for row in &report.rows {
            if row.rank == c.size() {
                assert!(row.h1 < 1e-10);
            }
        }
    }
}
