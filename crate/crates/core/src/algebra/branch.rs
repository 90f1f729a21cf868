use std::f64::consts::{PI, TAU};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::RealScalar;

/// Angular margin around the cut that reflection and operator evaluations refuse to enter.
pub const DEFAULT_CUT_MARGIN: f64 = 1e-6;

/// Points closer than this to the cut ray are treated as lying on it by `eval`.
const ON_CUT_TOLERANCE: f64 = 1e-12;

/// Direction of the branch cut of `log`, in radians.
///
/// The argument is taken in `(angle − 2π, angle]`, so the default `π` is the
/// principal branch with the cut along the negative real axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchCut {
    angle: f64,
}

impl Default for BranchCut {
    fn default() -> Self {
        Self { angle: PI }
    }
}

impl BranchCut {
    pub fn new(angle: f64) -> Self {
        Self { angle }
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Cut of the conjugate branch: if `log` is continuous off the ray at
    /// angle `α`, then `conj(log(conj ζ))` is continuous off the ray at `−α`,
    /// with arguments in `[−α, 2π − α)`.
    pub fn conjugate(&self) -> Self {
        Self { angle: TAU - self.angle }
    }

    /// Maps an angle into the argument window of this branch.
    pub fn normalize<T: RealScalar>(&self, theta: T) -> T {
        let alpha = T::lit(self.angle);
        let tau = T::TAU();
        let mut t = theta;
        if t > alpha || t <= alpha - tau {
            let shifts = ((alpha - t) / tau).floor();
            t = t + shifts * tau;
            if t > alpha {
                t = t - tau;
            } else if t <= alpha - tau {
                t = t + tau;
            }
        }
        t
    }

    /// Angular distance from direction `theta` to the cut ray.
    pub fn distance<T: RealScalar>(&self, theta: T) -> T {
        let t = self.normalize(theta);
        let alpha = T::lit(self.angle);
        (alpha - t).min(t - (alpha - T::TAU()))
    }

    /// Errors when `theta` is within `margin` of the cut.
    pub fn check_margin<T: RealScalar>(&self, theta: T, margin: f64) -> Result<()> {
        if self.distance(theta) < T::lit(margin) {
            return Err(Error::CutProximity {
                angle: theta.as_f64(),
                cut: self.angle,
                margin,
            });
        }
        Ok(())
    }

    /// `log z` on this branch.
    pub fn log<T: RealScalar>(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.re.is_zero() && z.im.is_zero() {
            return Err(Error::Domain("log evaluated at z = 0".into()));
        }
        let arg = z.im.atan2(z.re);
        if self.distance(arg) < T::lit(ON_CUT_TOLERANCE) {
            return Err(Error::Domain(format!(
                "log evaluated on the branch cut (arg {arg}, cut {})",
                self.angle
            )));
        }
        Ok(Complex::new(z.norm().ln(), self.normalize(arg)))
    }
}
