//! Floating-point engine: kernel assembly, operator norms, frequency-variable kernels and
//! Fourier-multiplier suprema.

mod amplitude;
mod freq;
mod grid;
mod kernel;
mod multiplier;
mod norm;
mod par;
pub mod quad;

pub use amplitude::{beta, beta0, AmplitudeSpec, AxisProfile, Cutoff, Profile};
pub use freq::{freq_kernel, FreqOptions, FreqValue};
pub use grid::{required_counts, sup_partials, Axis, AxisDeficit, GridSpec, ResolutionRule, MIN_GRID_POINTS};
pub use kernel::{
    assemble_kernel, AssembleOptions, DenseMatrix, KernelMatrix, KernelMethod, LinearOperator, StoragePolicy,
    DEFAULT_DENSE_CAP,
};
pub use multiplier::{multiplier_sup, multiplier_value, sphere_point, MultiplierModel, MultiplierSup, SupSearch};
pub use norm::{
    dense_svd_norm, krylov_norm, operator_norm, operator_norm_with, power_iteration, NormEstimate, NormMethod, NormOptions,
    DEFAULT_SEED, SVD_SIDE_LIMIT,
};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("grid under-resolved: {0}")]
    Resolution(String),
    #[error("phase kind {0} has no scalar kernel here")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("power iteration did not converge in {iterations} iterations (last estimate {last}, relative change {change:e})")]
    NoConvergence {
        iterations: usize,
        last: f64,
        change: f64,
        vector: Vec<Complex64>,
    },
    #[error("quadrature did not converge: depth {depth} on [{}, {}], estimate {estimate}, error {error:e}", interval.0, interval.1)]
    Quadrature {
        depth: u32,
        interval: (f64, f64),
        estimate: f64,
        error: f64,
    },
}
