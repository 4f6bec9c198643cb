//! Low-rank approximation of periodic functions of two and three variables
//! under Sobolev (H¹-type) norms.
//!
//! Functions on `[-π, π]^d` are discretized in a real orthonormal
//! trigonometric basis ([`fourier`]), so that every Sobolev norm of interest
//! is a diagonally weighted ℓ² norm of the coefficient array. On top of that
//! the crate provides
//!
//! * [`svd`] — singular value decompositions of the coefficient array under
//!   any pair of diagonal weights (plain L², one-sided H¹, mixed), per-mode
//!   systems of 3-way arrays, and the merged direct-sum spectrum;
//! * [`projections`] — weighted-orthogonal projections onto singular-vector
//!   subspaces, rank truncations, the pooled H¹-optimal projection, and the
//!   tail-sum error estimator;
//! * [`bounds`] — numerical verification of the two-sided error bounds and
//!   spectral identities relating the decompositions;
//! * [`expsum`] — exponential-sum separable approximation of the inverse
//!   square-root scaling, making the H¹ weight separable across variables;
//! * [`poisson`] — a spectral Galerkin solver for the Poisson problem on the
//!   torus with rank truncation driven by the error estimator;
//! * [`pathology`] — closed-form demonstrations that H¹-orthogonal
//!   projections need not be bounded in weaker norms.
//!
//! # Example
//!
//! ```
//! use sobosvd::fourier::{analyze2, SobolevWeight};
//! use sobosvd::projections::error_estimator;
//! use sobosvd::svd::{weighted_svd, SvdVariant};
//!
//! let c = analyze2(|x, y| (x.cos() * y.cos()).exp(), 8, 4)?;
//! let s10 = weighted_svd(&c, SvdVariant::H1L2)?;
//! let s01 = weighted_svd(&c, SvdVariant::L2H1)?;
//! // tail-sum estimate of the H¹ error of a rank-3 truncation
//! let e3 = error_estimator(&s10, &s01, 3)?;
//! assert!(e3 > 0.0 && e3 < c.norm(SobolevWeight::FullH1)?);
//! # Ok::<(), sobosvd::Error>(())
//! ```

pub mod bounds;
pub mod expsum;
pub mod fourier;
pub mod linalg;
pub mod pathology;
pub mod poisson;
pub mod projections;
pub mod svd;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("non-finite sample value {value} at {coords:?}")]
    NonFiniteSample { coords: Vec<f64>, value: f64 },

    #[error("SVD did not converge: off-diagonal residual {residual:.3e} after {sweeps} sweeps")]
    SvdNoConvergence { residual: f64, sweeps: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("incompatible weight: {0}")]
    IncompatibleWeight(String),

    #[error("variant mismatch: expected {expected}, got {got}")]
    VariantMismatch { expected: String, got: String },

    #[error("rank {requested} exceeds available rank {available}")]
    RankTooLarge { requested: usize, available: usize },

    #[error(
        "exponential-sum target {target:.3e} unreachable within {cap} terms; best achieved {best:.3e}"
    )]
    ExpSumTargetUnreachable { target: f64, cap: usize, best: f64 },

    #[error("exponential-sum validity interval [1, {t_max:.6e}] too small for argument {needed:.6e}")]
    ExpSumIntervalTooSmall { t_max: f64, needed: f64 },

    #[error("right-hand side has nonzero mean coefficient {0:.3e}")]
    NonZeroMean(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
