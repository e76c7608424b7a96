//! Discrete Fourier-Bohr analysis of functions on the Fibonacci model set.
//!
//! Functions that are locally determined by the Fibonacci tiling lift to
//! functions on a two-torus. This crate computes their Fourier-Bohr
//! coefficients exactly, by Riemann-type integrals over a finite range, and by
//! a discrete transform on `N²` data points obtained by projecting a
//! refinement of the torus onto a bounded piece of the line.
//!
//! The crate is `no_std` with `alloc`; the `std` feature (on by default) only
//! adds `std::error::Error` support.

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod cutproject;
pub mod discretize;
pub mod error;
pub mod fibonacci;
pub mod fourier;
pub mod ztau;

pub use cutproject::{
    enumerate_model_set, frequency_representatives, torus_coords, Frequency, FrequencySet,
    ModelPoint, ModelSetSlice, Tile, Window,
};
pub use discretize::{
    data_points, error_estimate, path_decomposition, refinement_reps, DataPoint, DataPointSet,
    ErrorEstimate, PathDecomposition, PathMode, PathSegment, RefinementReps,
};
pub use error::{Error, Result};
pub use fibonacci::{
    point_sets_close, substitution_points, torus_lift, FibonacciFunction, FunctionKind,
    LinearPiece, LocalFunction, TorusFunction,
};
pub use fourier::{
    build_approximant, coeff_exact, coeff_integral, coeff_sum, cos_baseline, sup_error,
    Approximant, ApproximantKind, Coefficient, CosineApproximant, RealFunction, Source,
};
pub use ztau::{trace_pairing, EmbeddedPair, QTau, Rational, SchemeConstants, ZTau, FIBONACCI};
