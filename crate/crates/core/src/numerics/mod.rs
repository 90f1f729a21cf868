//! Independent numerical oracles: adaptive path quadrature, the five-point
//! Laplacian, the Fourier-series disk Neumann solver, and the verification
//! suite that ties them to the exact operators.

mod fd;
mod fourier;
mod quadrature;
pub mod verify;

pub use fd::fd_laplacian;
pub use fourier::{fourier_neumann_oracle, TrigPolynomial, MEAN_TOLERANCE};
pub use quadrature::{adaptive_simpson, integrate_path, integrate_path_param, QuadratureConfig};

pub use verify::{run_verification_suite, run_verification_suite_with, CheckId, CheckRecord, OperatorSet, VerificationReport, DEFAULT_SEED};
