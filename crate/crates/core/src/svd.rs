//! Singular value decompositions of coefficient arrays under pairs of
//! diagonal Sobolev weights.
//!
//! The SVD of `diag(√w_row)·C·diag(√w_col)` is computed and de-scaled so
//! that the left/right coefficient columns are orthonormal in the weighted
//! inner products. Per-mode systems of 3-way arrays and the sorted union of
//! two spectra (the direct-sum operator view) build on the same primitive.

use crate::fourier::{weight_vector, Coeffs2D, Coeffs3D, FactorWeight, TrigBasis1D};
use crate::linalg::{fix_sign, jacobi_svd, Mat};
use crate::{Error, Result};

/// Which pair of diagonal weights the left/right singular vectors are
/// orthonormal under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SvdVariant {
    /// Plain L² SVD ("00").
    L2L2,
    /// H¹ rows, L² columns ("10").
    H1L2,
    /// L² rows, H¹ columns ("01").
    L2H1,
    /// H¹ rows and H¹ columns ("11", the mixed-smoothness SVD).
    MixMix,
    /// Mode-`j` matricization of a 3-way array: H¹ rows, L² on the
    /// complement pair.
    ModeH1(usize),
    /// Mode-`j` matricization of a 3-way array: H¹ rows, full H¹ on the
    /// complement pair (the factored mixed weight).
    ModeMixJ(usize),
}

impl SvdVariant {
    pub fn label(&self) -> String {
        match self {
            SvdVariant::L2L2 => "00".into(),
            SvdVariant::H1L2 => "10".into(),
            SvdVariant::L2H1 => "01".into(),
            SvdVariant::MixMix => "11".into(),
            SvdVariant::ModeH1(j) => format!("10-mode{}", j + 1),
            SvdVariant::ModeMixJ(j) => format!("11-mode{}", j + 1),
        }
    }
}

/// A weighted singular system: nonincreasing positive `sigma` with
/// coefficient columns orthonormal under the declared diagonal weights.
/// Values below 1e-12·σ₁ are treated as zero and not stored.
#[derive(Clone, Debug)]
pub struct SingularSystem {
    pub variant: SvdVariant,
    pub sigma: Vec<f64>,
    /// Coefficient columns of the left singular functions; `leftᵀ·diag(row_weight)·left = I`.
    pub left: Mat,
    /// Coefficient columns of the right singular functions; `rightᵀ·diag(col_weight)·right = I`.
    pub right: Mat,
    pub row_weight: Vec<f64>,
    pub col_weight: Vec<f64>,
}

impl SingularSystem {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    /// `Σ_{k>r} σ_k²`, accumulated smallest-first for floating-point accuracy.
    pub fn tail_sq(&self, r: usize) -> f64 {
        if r >= self.sigma.len() {
            return 0.0;
        }
        self.sigma[r..].iter().rev().map(|s| s * s).sum()
    }

    /// Rank-`r` reconstruction `Σ_{k≤r} σ_k·left_k·right_kᵀ`.
    pub fn truncated_matrix(&self, r: usize) -> Mat {
        let rows = self.left.rows();
        let cols = self.right.rows();
        let r = r.min(self.rank());
        let mut out = Mat::zeros(rows, cols);
        for k in 0..r {
            let s = self.sigma[k];
            for i in 0..rows {
                let li = s * self.left.get(i, k);
                if li == 0.0 {
                    continue;
                }
                for j in 0..cols {
                    out.set(i, j, out.get(i, j) + li * self.right.get(j, k));
                }
            }
        }
        out
    }

    /// Worst deviation of `leftᵀ·W·left` and `rightᵀ·W·right` from identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (cols, w) in [(&self.left, &self.row_weight), (&self.right, &self.col_weight)] {
            let g = cols.transpose().matmul(&cols.scale_rows(w));
            let k = cols.cols();
            worst = worst.max(g.sub(&Mat::identity(k)).max_abs());
        }
        worst
    }
}

pub(crate) fn weighted_matrix_svd(
    a: &Mat,
    row_weight: &[f64],
    col_weight: &[f64],
    variant: SvdVariant,
) -> Result<SingularSystem> {
    let rs: Vec<f64> = row_weight.iter().map(|w| w.sqrt()).collect();
    let cs: Vec<f64> = col_weight.iter().map(|w| w.sqrt()).collect();
    let scaled = a.scale_rows(&rs).scale_cols(&cs);
    let svd = jacobi_svd(&scaled)?;

    let rinv: Vec<f64> = rs.iter().map(|w| 1.0 / w).collect();
    let cinv: Vec<f64> = cs.iter().map(|w| 1.0 / w).collect();
    let mut left = svd.u.scale_rows(&rinv);
    let mut right = svd.v.scale_rows(&cinv);
    for k in 0..svd.sigma.len() {
        let mut lc = left.col(k);
        let mut rc = right.col(k);
        fix_sign(&mut lc, &mut rc);
        for i in 0..left.rows() {
            left.set(i, k, lc[i]);
        }
        for j in 0..right.rows() {
            right.set(j, k, rc[j]);
        }
    }
    Ok(SingularSystem {
        variant,
        sigma: svd.sigma,
        left,
        right,
        row_weight: row_weight.to_vec(),
        col_weight: col_weight.to_vec(),
    })
}

/// SVD of a 2-D coefficient array under the weight pair selected by
/// `variant`. For `L2L2` this is the plain SVD of the array.
pub fn weighted_svd(c: &Coeffs2D, variant: SvdVariant) -> Result<SingularSystem> {
    let n = c.max_frequency();
    let ones = weight_vector(n, FactorWeight::L2);
    let h1 = weight_vector(n, FactorWeight::H1);
    let (rw, cw) = match variant {
        SvdVariant::L2L2 => (ones.clone(), ones),
        SvdVariant::H1L2 => (h1, ones),
        SvdVariant::L2H1 => (ones, h1),
        SvdVariant::MixMix => (h1.clone(), h1),
        SvdVariant::ModeH1(_) | SvdVariant::ModeMixJ(_) => {
            return Err(Error::InvalidParameter(
                "mode variants apply to 3-way arrays; use hosvd3".into(),
            ))
        }
    };
    weighted_matrix_svd(c.matrix(), &rw, &cw, variant)
}

/// Which column weight the per-mode systems of a 3-way array carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HosvdFamily {
    /// Mode systems of the operator L²(complement) → H¹(mode): plain L²
    /// weight on the complement pair.
    PlainH1,
    /// Factored mixed weight: H¹ on the mode and full H¹ on the complement
    /// pair, so the product is `(1+k_j²)(1+Σ_{i≠j}k_i²)`.
    MixJ,
}

/// Mode-`mode` matricization: rows indexed by the mode, columns by the
/// remaining two indices in increasing mode order.
pub fn unfold3(t: &Coeffs3D, mode: usize) -> Mat {
    assert!(mode < 3);
    let s = t.size();
    match mode {
        0 => Mat::from_fn(s, s * s, |i, c| t.get(i, c / s, c % s)),
        1 => Mat::from_fn(s, s * s, |j, c| t.get(c / s, j, c % s)),
        _ => Mat::from_fn(s, s * s, |k, c| t.get(c / s, c % s, k)),
    }
}

/// Inverse of [`unfold3`].
pub fn refold3(m: &Mat, mode: usize, n: usize) -> Result<Coeffs3D> {
    let s = 2 * n + 1;
    if m.rows() != s || m.cols() != s * s {
        return Err(Error::DimensionMismatch(format!(
            "cannot refold {}×{} as mode-{mode} matricization for n={n}",
            m.rows(),
            m.cols()
        )));
    }
    let mut t = Coeffs3D::zeros(n);
    for r in 0..s {
        for c in 0..(s * s) {
            let (a, b) = (c / s, c % s);
            let v = m.get(r, c);
            match mode {
                0 => t.set(r, a, b, v),
                1 => t.set(a, r, b, v),
                _ => t.set(a, b, r, v),
            }
        }
    }
    Ok(t)
}

fn complement_weight(n: usize, family: HosvdFamily) -> Vec<f64> {
    let s = 2 * n + 1;
    (0..s * s)
        .map(|c| {
            let fa = TrigBasis1D::frequency(c / s);
            let fb = TrigBasis1D::frequency(c % s);
            match family {
                HosvdFamily::PlainH1 => 1.0,
                HosvdFamily::MixJ => 1.0 + (fa * fa + fb * fb) as f64,
            }
        })
        .collect()
}

/// Per-mode singular systems of a 3-way coefficient array. Left columns are
/// `(1+k_j²)`-orthonormal in every family.
pub fn hosvd3(t: &Coeffs3D, family: HosvdFamily) -> Result<[SingularSystem; 3]> {
    let n = t.max_frequency();
    let h1 = weight_vector(n, FactorWeight::H1);
    let cw = complement_weight(n, family);
    let mut out = Vec::with_capacity(3);
    for mode in 0..3 {
        let a = unfold3(t, mode);
        let variant = match family {
            HosvdFamily::PlainH1 => SvdVariant::ModeH1(mode),
            HosvdFamily::MixJ => SvdVariant::ModeMixJ(mode),
        };
        out.push(weighted_matrix_svd(&a, &h1, &cw, variant)?);
    }
    let arr: [SingularSystem; 3] = out.try_into().expect("three mode systems");
    Ok(arr)
}

/// Source tag of a merged singular value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MergedSource {
    /// From the H¹-rows system ("10").
    S10,
    /// From the H¹-columns system ("01").
    S01,
}

impl MergedSource {
    pub fn label(&self) -> &'static str {
        match self {
            MergedSource::S10 => "10",
            MergedSource::S01 => "01",
        }
    }
}

/// Sorted multiset union of two spectra with per-entry provenance: the
/// spectrum of the pair `(u, u)` viewed in the direct-sum operator space.
#[derive(Clone, Debug)]
pub struct MergedSpectrum {
    pub values: Vec<f64>,
    pub provenance: Vec<(MergedSource, usize)>,
}

/// Merge the "10" and "01" spectra, sorted nonincreasing. Ties are broken
/// by source ("10" first), then by source index.
pub fn merged_spectrum(s10: &SingularSystem, s01: &SingularSystem) -> Result<MergedSpectrum> {
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
    let mut entries: Vec<(f64, MergedSource, usize)> = s10
        .sigma
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, MergedSource::S10, i))
        .chain(
            s01.sigma
                .iter()
                .enumerate()
                .map(|(i, &s)| (s, MergedSource::S01, i)),
        )
        .collect();
    entries.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap()
            .then_with(|| {
                let rank = |s: MergedSource| match s {
                    MergedSource::S10 => 0,
                    MergedSource::S01 => 1,
                };
                rank(a.1).cmp(&rank(b.1))
            })
            .then(a.2.cmp(&b.2))
    });
    Ok(MergedSpectrum {
        values: entries.iter().map(|e| e.0).collect(),
        provenance: entries.iter().map(|e| (e.1, e.2)).collect(),
    })
}
