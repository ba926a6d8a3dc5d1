use thiserror::Error;

use crate::wavevector::Wavevector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("symbol is not orthogonal to the gradient: x·P(x) keeps the monomial {residual}")]
    NotOrthogonal { residual: String },

    #[error("zero denominator in symbol coefficient")]
    ZeroDenominator,

    #[error("symbol degree {degree} exceeds cap {cap}")]
    DegreeTooHigh { degree: u32, cap: u32 },

    #[error("resolution {n} too low: need more than {required} points per axis")]
    ResolutionTooLow { n: usize, required: usize },

    #[error("coefficients are not Hermitian-symmetric at wavevector {0}")]
    NotHermitian(Wavevector),

    #[error("wavevector {0} exceeds the wavenumber cap")]
    WavenumberTooLarge(Wavevector),

    #[error("non-finite coefficient at wavevector {0}")]
    NonFinite(Wavevector),

    #[error("coefficient at {k} lies off the shell |k|² = {lambda_sq}")]
    OffShell { k: Wavevector, lambda_sq: u32 },

    #[error("Dirichlet mode indices must all be positive, got {0:?}")]
    ZeroDirichletIndex([u32; 3]),

    #[error("eigenfunction check failed: {0}")]
    EigenMismatch(String),

    #[error("invalid pipeline profile: {0}")]
    InvalidProfile(String),

    #[error("slab width {width} is not π divided by a positive integer; no torus realization")]
    SlabIncommensurate { width: f64 },

    #[error("invalid radial profile: {0}")]
    InvalidRadialProfile(String),

    #[error("(u·∇)u is not a gradient: curl residual {norm:e} above {tolerance:e}")]
    NonGradient { norm: f64, tolerance: f64 },

    #[error("the {0} family has no spectral representation")]
    NotSpectral(&'static str),

    #[error("solutions coincide: distance {distance:e} below threshold {threshold:e}")]
    SameSolution { distance: f64, threshold: f64 },

    #[error("solutions are not comparable: {0}")]
    Incomparable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
