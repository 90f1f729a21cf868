//! Exact Dirichlet→Neumann and Robin→Neumann operators for harmonic
//! functions near circular and algebraic arcs, together with the reflection
//! formulas they produce for nonhomogeneous Dirichlet, Neumann and Robin data.
//!
//! Harmonic functions are handled in complexified form
//! `u(z, ζ) = u₁(z) + u₂(ζ)`, with each part a finite log-Laurent sum, so that
//! every `∫ (·)/τ dτ` in the operators is computed in closed form. Numerical
//! quadrature, finite differences and a Fourier-series solver are provided as
//! independent cross-checks.
//!
//! The symbolic layer is generic over [`Scalar`] (f32, f64 or exact
//! rationals); evaluation is generic over [`RealScalar`]. The aliases below
//! fix the scalar to `f64`.
//!
//! ```
//! use harmonia::operators::neumann_from_dirichlet_pair;
//! use harmonia::{LogLaurent, Normalization, Pair, Ray};
//!
//! // u = ln r has harmonic partner ½(ln²r − θ²)
//! let half = LogLaurent::log_power(0.5, 1);
//! let u = Pair::new(half.clone(), half);
//! let v = neumann_from_dirichlet_pair(&u, &Normalization::default())?;
//! let (r, theta) = (0.7_f64, 0.4_f64);
//! let value = v.eval_pair(&Ray::new(r, theta).bipoint())?;
//! assert!((value.re - 0.5 * (r.ln().powi(2) - theta * theta)).abs() < 1e-12);
//! # Ok::<(), harmonia::Error>(())
//! ```

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod harmonic;
pub mod numerics;
pub mod operators;
pub mod reflection;
pub mod scalar;
pub mod wire;

pub use error::{Error, Result};
pub use scalar::{RealScalar, Scalar};

pub type Complex64 = num_complex::Complex<f64>;
pub type LogLaurent = algebra::LogLaurentExpr<f64>;
pub type Bivariate = algebra::BivariateLaurentExpr<f64>;
pub type Pair = harmonic::HarmonicPair<f64>;
pub type Robin = harmonic::RobinParams<f64>;
pub type Point = geometry::BiPoint<f64>;
pub type Ray = geometry::RayPoint<f64>;
pub type Map = geometry::SchwarzMap<f64>;
pub type Path = geometry::PathSpec<f64>;
pub type Normalization = operators::BasePointNormalization<f64>;
pub type Reflection = reflection::ReflectionResult<f64>;


/// Exact rational coefficients for the symbolic layer.
pub type RationalLogLaurent = algebra::LogLaurentExpr<num_rational::Rational64>;
