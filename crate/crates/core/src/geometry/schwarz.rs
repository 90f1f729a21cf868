use std::fmt::Debug;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::BiPoint;
use crate::error::{Error, Result};
use crate::scalar::{is_finite, RealScalar};

/// Tolerance for matching `i/√S′` against the outward normal.
const SIGN_TOLERANCE: f64 = 1e-8;

/// A real-analytic curve described through its Schwarz function.
///
/// Built-in lines and circles implement this; other algebraic curves can be
/// plugged in by implementing the five required methods, provided the caller
/// keeps paths inside a region where `S` and `S̃` are single-valued.
pub trait SchwarzCurve<T: RealScalar>: Debug + Send + Sync {
    /// `S(z)`, with `S(z) = conj(z)` on the curve.
    fn schwarz(&self, z: Complex<T>) -> Result<Complex<T>>;

    /// `S̃(ζ)`, the inverse of `S`.
    fn inverse_schwarz(&self, zeta: Complex<T>) -> Result<Complex<T>>;

    /// `S′(z)`.
    fn schwarz_derivative(&self, z: Complex<T>) -> Result<Complex<T>>;

    /// Nearest point of the curve.
    fn project(&self, z: Complex<T>) -> Result<Complex<T>>;

    /// Outward unit normal at a point of the curve.
    fn outward_normal(&self, z: Complex<T>) -> Result<Complex<T>>;

    /// Branch of `√S′` at a curve point, with the sign chosen so that
    /// `i/√S′(z)` is the outward unit normal.
    fn sqrt_derivative_on_curve(&self, z: Complex<T>) -> Result<Complex<T>> {
        let s = self.schwarz_derivative(z)?.sqrt();
        let n = self.outward_normal(z)?;
        let i = Complex::<T>::i();
        let tol = T::lit(SIGN_TOLERANCE);
        if (i / s - n).norm() <= tol {
            Ok(s)
        } else if (i / (-s) - n).norm() <= tol {
            Ok(-s)
        } else {
            Err(Error::SignValidation(format!("{z}")))
        }
    }
}

/// Built-in Schwarz maps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(serialize = "T: Serialize + Clone + Default"))]
#[serde(bound(deserialize = "T: Deserialize<'de> + Default"))]
pub enum SchwarzMap<T> {
    /// `|z| = 1`, `S(z) = 1/z`.
    UnitCircle,
    /// `|z − c| = r`, `S(z) = conj(c) + r²/(z − c)`.
    Circle {
        #[serde(with = "crate::wire::complex")]
        center: Complex<T>,
        radius: T,
    },
    /// Line through `point` with direction angle `angle`,
    /// `S(z) = conj(p) + (z − p)e^{−2iα}`. Outward is the left-hand normal.
    Line {
        #[serde(with = "crate::wire::complex")]
        point: Complex<T>,
        angle: T,
    },
}

impl<T: RealScalar> SchwarzMap<T> {
    pub fn circle(center: Complex<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!("circle radius {radius} must be > 0")));
        }
        Ok(Self::Circle { center, radius })
    }

    pub fn line(point: Complex<T>, angle: T) -> Self {
        Self::Line { point, angle }
    }

    pub fn real_axis() -> Self {
        Self::line(Complex::zero(), T::zero())
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Circle { center, radius } => Self::circle(center, radius).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Point of the curve at parameter `t` (angle for circles, arclength for lines).
    pub fn point_at(&self, t: T) -> Complex<T> {
        match *self {
            Self::UnitCircle => Complex::from_polar(T::one(), t),
            Self::Circle { center, radius } => center + Complex::from_polar(radius, t),
            Self::Line { point, angle } => point + Complex::from_polar(t, angle),
        }
    }

    /// Distance from `z` to the curve.
    pub fn distance(&self, z: Complex<T>) -> T {
        match *self {
            Self::UnitCircle => (z.norm() - T::one()).abs(),
            Self::Circle { center, radius } => ((z - center).norm() - radius).abs(),
            Self::Line { point, angle } => {
                ((z - point) * Complex::from_polar(T::one(), -angle)).im.abs()
            }
        }
    }
}

fn pole<T: RealScalar>(z: Complex<T>) -> Error {
    Error::Pole(format!("{z}"))
}

fn finite_or_pole<T: RealScalar>(v: Complex<T>, at: Complex<T>) -> Result<Complex<T>> {
    if is_finite(&v) {
        Ok(v)
    } else {
        Err(pole(at))
    }
}

impl<T: RealScalar> SchwarzCurve<T> for SchwarzMap<T> {
    fn schwarz(&self, z: Complex<T>) -> Result<Complex<T>> {
        match *self {
            Self::UnitCircle => {
                if z.is_zero() {
                    return Err(pole(z));
                }
                finite_or_pole(z.inv(), z)
            }
            Self::Circle { center, radius } => {
                let d = z - center;
                if d.is_zero() {
                    return Err(pole(z));
                }
                finite_or_pole(center.conj() + Complex::from(radius * radius) / d, z)
            }
            Self::Line { point, angle } => {
                Ok(point.conj() + (z - point) * Complex::from_polar(T::one(), -(angle + angle)))
            }
        }
    }

    fn inverse_schwarz(&self, zeta: Complex<T>) -> Result<Complex<T>> {
        match *self {
            Self::UnitCircle => {
                if zeta.is_zero() {
                    return Err(pole(zeta));
                }
                finite_or_pole(zeta.inv(), zeta)
            }
            Self::Circle { center, radius } => {
                let d = zeta - center.conj();
                if d.is_zero() {
                    return Err(pole(zeta));
                }
                finite_or_pole(center + Complex::from(radius * radius) / d, zeta)
            }
            Self::Line { point, angle } => {
                Ok(point + (zeta - point.conj()) * Complex::from_polar(T::one(), angle + angle))
            }
        }
    }

    fn schwarz_derivative(&self, z: Complex<T>) -> Result<Complex<T>> {
        match *self {
            Self::UnitCircle => {
                if z.is_zero() {
                    return Err(pole(z));
                }
                finite_or_pole(-(z * z).inv(), z)
            }
            Self::Circle { center, radius } => {
                let d = z - center;
                if d.is_zero() {
                    return Err(pole(z));
                }
                finite_or_pole(-Complex::from(radius * radius) / (d * d), z)
            }
            Self::Line { angle, .. } => Ok(Complex::from_polar(T::one(), -(angle + angle))),
        }
    }

    fn project(&self, z: Complex<T>) -> Result<Complex<T>> {
        match *self {
            Self::UnitCircle => {
                if z.is_zero() {
                    return Err(Error::Domain("projection of the circle centre".into()));
                }
                Ok(z / z.norm())
            }
            Self::Circle { center, radius } => {
                let d = z - center;
                if d.is_zero() {
                    return Err(Error::Domain("projection of the circle centre".into()));
                }
                Ok(center + d * (radius / d.norm()))
            }
            Self::Line { point, angle } => {
                let dir = Complex::from_polar(T::one(), angle);
                let t = ((z - point) * dir.conj()).re;
                Ok(point + dir * t)
            }
        }
    }

    fn outward_normal(&self, z: Complex<T>) -> Result<Complex<T>> {
        match *self {
            Self::UnitCircle => {
                if z.is_zero() {
                    return Err(Error::Domain("normal at the circle centre".into()));
                }
                Ok(z / z.norm())
            }
            Self::Circle { center, .. } => {
                let d = z - center;
                if d.is_zero() {
                    return Err(Error::Domain("normal at the circle centre".into()));
                }
                Ok(d / d.norm())
            }
            Self::Line { angle, .. } => Ok(Complex::<T>::i() * Complex::from_polar(T::one(), angle)),
        }
    }
}

/// `S(z)`.
pub fn schwarz_value<T: RealScalar, C: SchwarzCurve<T> + ?Sized>(
    map: &C,
    z: Complex<T>,
) -> Result<Complex<T>> {
    map.schwarz(z)
}

/// `S̃(ζ)`.
pub fn inverse_schwarz_value<T: RealScalar, C: SchwarzCurve<T> + ?Sized>(
    map: &C,
    zeta: Complex<T>,
) -> Result<Complex<T>> {
    map.inverse_schwarz(zeta)
}

/// `(z, ζ) ↦ (S̃(ζ), S(z))`, the corner opposite `(z, ζ)` in Study's rectangle.
pub fn reflect_bipoint<T: RealScalar, C: SchwarzCurve<T> + ?Sized>(
    map: &C,
    p: &BiPoint<T>,
) -> Result<BiPoint<T>> {
    Ok(BiPoint {
        z: map.inverse_schwarz(p.zeta)?,
        zeta: map.schwarz(p.z)?,
    })
}

/// Anti-conformal reflection `R(z) = conj(S(z))` in the real plane.
pub fn anti_conformal_reflect<T: RealScalar, C: SchwarzCurve<T> + ?Sized>(
    map: &C,
    x: T,
    y: T,
) -> Result<(T, T)> {
    let w = map.schwarz(Complex::new(x, y))?.conj();
    Ok((w.re, w.im))
}
