//! Transfer functions in the Wiener algebra, finite compressions of the
//! unilateral and bilateral shift operators, and the invertibility analysis
//! that separates `f(T)` from `f(B)`, tied to moving-average process
//! simulation and AR(∞) reconstruction.
//!
//! The numerics are generic over the real scalar type (`f32` or `f64`); the
//! `*64` / `*32` aliases below name the concrete instantiations.
//!
//! Modules:
//! - [`wiener`]: coefficient-sequence algebra, evaluation on the circle, norms.
//! - [`operators`]: `f(T)` as a lower-triangular Toeplitz compression, `f(B)`
//!   as a circulant, operator norms and Szegő-kernel Rayleigh quotients.
//! - [`invertibility`]: root classification, causal and anticausal
//!   inversion, and the `f(B)` versus `f(T)` inverse-norm comparison.
//! - [`process`]: seeded MA simulation, innovation reconstruction, filter
//!   convergence, ergodic means and Wold coefficient recovery.

pub mod error;
pub mod invertibility;
pub mod linalg;
pub mod operators;
pub mod process;
pub mod scalar;
pub mod wiener;

pub use error::{Error, Result};
pub use invertibility::{
    asymmetry_report, classify_roots, invert_anticausal, invert_causal, AsymmetryRow,
    InversionResult, InversionSide, RootClassification, Verdict, DEFAULT_ROOT_TOL,
};
pub use operators::{
    build_bilateral, build_toeplitz, build_unilateral, isometry_sweep, operator_norm,
    rayleigh_quotient, IsometryRow, OperatorKind, SzegoVector, TruncatedOperator,
};
pub use process::{
    divergence_demo, ergodic_mean_check, l1_filter_convergence, reconstruct_innovations, simulate,
    wold_estimate, ErgodicRow, FilterRow, ProcessSample, ReconstructionReport, WoldEstimate,
};
pub use scalar::{Entry, Scalar};
pub use wiener::{CoeffFile, SeriesInverse, WienerElement};

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type Complex32 = Complex<f32>;

pub type WienerElement64 = WienerElement<f64>;
pub type WienerElement32 = WienerElement<f32>;
pub type TruncatedOperator64 = TruncatedOperator<f64>;
pub type TruncatedOperator32 = TruncatedOperator<f32>;
pub type SzegoVector64 = SzegoVector<f64>;
pub type SzegoVector32 = SzegoVector<f32>;
pub type RootClassification64 = RootClassification<f64>;
pub type InversionResult64 = InversionResult<f64>;
pub type InversionResult32 = InversionResult<f32>;
pub type ProcessSample64 = ProcessSample<f64>;
pub type ProcessSample32 = ProcessSample<f32>;
pub type ReconstructionReport64 = ReconstructionReport<f64>;
pub type Matrix64 = linalg::DenseMatrix<Complex64>;
