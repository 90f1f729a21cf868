//! Scalar abstractions.
//!
//! The symbolic part of the crate (term merging, differentiation, the
//! `∫ e(τ)/τ dτ` primitive, circle restriction, the Robin recursion) only
//! needs field arithmetic, so it is written against [`Scalar`] and works over
//! exact rationals as well as floats. Anything that evaluates logarithms,
//! trigonometric factors or quadrature needs [`RealScalar`].

use std::fmt::{Debug, Display, LowerExp};
use std::ops::Neg;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{Float, FloatConst, Num, Signed, Zero};

/// Field-like coefficient type for exact expression manipulation.
pub trait Scalar:
    Num + Clone + Debug + PartialEq + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(n: i64) -> Self;

    /// Coefficients for which this holds are dropped by normalization.
    fn is_negligible(&self) -> bool;

    /// Nearest `f64`, for diagnostics and threshold tests.
    fn approx_f64(&self) -> f64;
}

/// Real floating-point scalar (f32 or f64).
pub trait RealScalar: Scalar + Float + FloatConst + Display + LowerExp + Default {
    /// Converts an `f64` literal. Precision loss is accepted for `f32`.
    fn lit(x: f64) -> Self;

    fn as_f64(self) -> f64;
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-15
    }

    fn approx_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_i64(n: i64) -> Self {
        n as f32
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 5e-7
    }

    fn approx_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for Rational64 {
    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn approx_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl RealScalar for f64 {
    fn lit(x: f64) -> Self {
        x
    }

    fn as_f64(self) -> f64 {
        self
    }
}

impl RealScalar for f32 {
    fn lit(x: f64) -> Self {
        x as f32
    }

    fn as_f64(self) -> f64 {
        self as f64
    }
}

/// True when both parts of `c` are negligible.
pub fn complex_negligible<T: Scalar>(c: &Complex<T>) -> bool {
    c.re.is_negligible() && c.im.is_negligible()
}

/// Conjugate for any [`Scalar`] (num-complex requires `Neg` + `Clone` only).
pub fn conj<T: Scalar>(c: &Complex<T>) -> Complex<T> {
    Complex::new(c.re.clone(), -c.im.clone())
}

/// `|re| + |im|`, a cheap magnitude usable over exact scalars.
pub fn l1_norm<T: Scalar + Signed>(c: &Complex<T>) -> T {
    c.re.abs() + c.im.abs()
}

/// Builds a complex value from `f64` parts.
pub fn cplx<T: RealScalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Purely real complex value.
pub fn real<T: Scalar>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// `i` as a complex value.
pub fn imag_unit<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// Finite check for a complex float.
pub fn is_finite<T: RealScalar>(c: &Complex<T>) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

/// Binomial coefficient as a scalar.
pub fn binomial<T: Scalar>(n: u32, k: u32) -> T {
    let mut acc: i64 = 1;
    for j in 0..k as i64 {
        acc = acc * (n as i64 - j) / (j + 1);
    }
    T::from_i64(acc)
}
