use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::RealScalar;

/// A point `(z, ζ)` of `C²`. The real plane is the slice `ζ = conj(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize + Clone + Default"))]
#[serde(bound(deserialize = "T: Deserialize<'de> + Default"))]
pub struct BiPoint<T> {
    #[serde(with = "crate::wire::complex")]
    pub z: Complex<T>,
    #[serde(with = "crate::wire::complex")]
    pub zeta: Complex<T>,
}

impl<T: RealScalar> BiPoint<T> {
    pub fn new(z: Complex<T>, zeta: Complex<T>) -> Self {
        Self { z, zeta }
    }

    /// `(x + iy, x − iy)`.
    pub fn real_slice(x: T, y: T) -> Self {
        let z = Complex::new(x, y);
        Self { z, zeta: z.conj() }
    }

    pub fn is_real_slice(&self, tol: T) -> bool {
        (self.zeta - self.z.conj()).norm() <= tol
    }

    pub fn distance(&self, other: &Self) -> T {
        (self.z - other.z).norm().max((self.zeta - other.zeta).norm())
    }
}

/// Real-slice point `(r e^{iθ}, r e^{−iθ})` that remembers its ray angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayPoint<T> {
    pub r: T,
    pub theta: T,
}

impl<T: RealScalar> RayPoint<T> {
    pub fn new(r: T, theta: T) -> Self {
        Self { r, theta }
    }

    pub fn bipoint(&self) -> BiPoint<T> {
        let z = Complex::from_polar(self.r, self.theta);
        BiPoint { z, zeta: z.conj() }
    }

    /// Inversion in the unit circle along the same ray.
    pub fn inverted(&self) -> Self {
        Self {
            r: self.r.recip(),
            theta: self.theta,
        }
    }

    pub fn xy(&self) -> (T, T) {
        (self.r * self.theta.cos(), self.r * self.theta.sin())
    }
}
