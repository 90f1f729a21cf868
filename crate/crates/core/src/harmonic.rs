//! Complexified harmonic functions `u(z, ζ) = u₁(z) + u₂(ζ)`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{BranchCut, LogLaurentExpr};
use crate::error::{Error, Result};
use crate::geometry::{BiPoint, RayPoint, SchwarzCurve};
use crate::scalar::{real, RealScalar, Scalar};

/// Imaginary residue tolerated by [`HarmonicPair::eval_real`].
pub const REALITY_TOLERANCE: f64 = 1e-11;

/// A harmonic function on `C²` written as `u₁(z) + u₂(ζ)`; `∂²u/∂z∂ζ = 0`
/// holds by construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
#[serde(bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct HarmonicPair<T> {
    pub part_z: LogLaurentExpr<T>,
    pub part_zeta: LogLaurentExpr<T>,
}

/// Coefficients of the Robin condition `a·w + b·∂w/∂n = φ_w`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobinParams<T> {
    pub a: T,
    pub b: T,
}

impl<T: RealScalar> RobinParams<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        let p = Self { a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.b.is_zero() || !self.b.is_finite() || !self.a.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Robin coefficients need finite a and b != 0 (got a={}, b={})",
                self.a, self.b
            )));
        }
        Ok(())
    }
}

impl<T: Scalar> HarmonicPair<T> {
    pub fn new(part_z: LogLaurentExpr<T>, part_zeta: LogLaurentExpr<T>) -> Self {
        Self { part_z, part_zeta }
    }

    pub fn zero() -> Self {
        Self::new(LogLaurentExpr::zero(), LogLaurentExpr::zero())
    }

    /// `Re f` on the real slice: `(f(z) + conj(f)(ζ))/2`, conjugate-symmetric.
    pub fn from_real_part(f: &LogLaurentExpr<T>) -> Self {
        let half = real(T::one() / T::from_i64(2));
        let p1 = f.scale(&half);
        let p2 = p1.conjugated();
        Self::new(p1, p2)
    }

    /// Equal halves of a constant, `u ≡ c`.
    pub fn constant(c: T) -> Self {
        let half = real(c / T::from_i64(2));
        Self::new(
            LogLaurentExpr::constant(half.clone()),
            LogLaurentExpr::constant(half),
        )
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        Self::new(self.part_z.scale(s), self.part_zeta.scale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.part_z + &other.part_z,
            &self.part_zeta + &other.part_zeta,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            &self.part_z - &other.part_z,
            &self.part_zeta - &other.part_zeta,
        )
    }

    /// Adds `c/2` to each part.
    pub fn add_constant(&self, c: Complex<T>) -> Self {
        let half = c / real(T::from_i64(2));
        let mut out = self.clone();
        out.part_z.add_term(half.clone(), 0, 0);
        out.part_zeta.add_term(half, 0, 0);
        out
    }

    /// Sets the branch cut of `part_z` to `cut` and of `part_zeta` to its conjugate.
    pub fn with_cut(mut self, cut: BranchCut) -> Self {
        self.part_z = self.part_z.with_cut(cut);
        self.part_zeta = self.part_zeta.with_cut(cut.conjugate());
        self
    }

    pub fn cut(&self) -> BranchCut {
        self.part_z.cut()
    }
}

impl<T: RealScalar> HarmonicPair<T> {
    /// `u₁(z) + u₂(ζ)`.
    pub fn eval_pair(&self, p: &BiPoint<T>) -> Result<Complex<T>> {
        Ok(self.part_z.eval(p.z)? + self.part_zeta.eval(p.zeta)?)
    }

    /// Real value at `(x, y)`: the pair evaluated on the real slice.
    pub fn eval_real(&self, x: T, y: T) -> Result<T> {
        let v = self.eval_pair(&BiPoint::real_slice(x, y))?;
        let tol = T::lit(REALITY_TOLERANCE) * v.re.abs().max(T::one());
        if v.im.abs() > tol {
            return Err(Error::NonSymmetric { imag: v.im.as_f64() });
        }
        Ok(v.re)
    }

    /// `∂u/∂r = u₁′(z)e^{iθ} + u₂′(ζ)e^{−iθ}` at `(re^{iθ}, re^{−iθ})`.
    pub fn radial_derivative(&self, p: &RayPoint<T>) -> Result<Complex<T>> {
        let q = p.bipoint();
        let e = Complex::from_polar(T::one(), p.theta);
        Ok(self.part_z.differentiate().eval(q.z)? * e
            + self.part_zeta.differentiate().eval(q.zeta)? * e.conj())
    }

    /// Outward normal derivative on the curve,
    /// `(i/√S′(z))·(u₁′(z) − u₂′(ζ)·S′(z))` with `ζ = S(z)`.
    pub fn normal_derivative_schwarz<C: SchwarzCurve<T> + ?Sized>(
        &self,
        map: &C,
        z: Complex<T>,
    ) -> Result<Complex<T>> {
        let zeta = map.schwarz(z)?;
        let sp = map.schwarz_derivative(z)?;
        let root = map.sqrt_derivative_on_curve(z)?;
        let d1 = self.part_z.differentiate().eval(z)?;
        let d2 = self.part_zeta.differentiate().eval(zeta)?;
        Ok(Complex::<T>::i() / root * (d1 - d2 * sp))
    }

    /// `a·w + b·∂w/∂r` at `(e^{iθ}, e^{−iθ})`.
    pub fn robin_trace_circle(&self, params: &RobinParams<T>, theta: T) -> Result<Complex<T>> {
        let p = RayPoint::new(T::one(), theta);
        Ok(self.eval_pair(&p.bipoint())? * params.a + self.radial_derivative(&p)? * params.b)
    }

    /// Largest `|Im u|` over the sample points of the real slice.
    pub fn max_imaginary_residue(&self, points: &[(T, T)]) -> Result<T> {
        let mut worst = T::zero();
        for &(x, y) in points {
            worst = worst.max(self.eval_pair(&BiPoint::real_slice(x, y))?.im.abs());
        }
        Ok(worst)
    }

    pub fn is_conjugate_symmetric(&self, points: &[(T, T)]) -> Result<bool> {
        Ok(self.max_imaginary_residue(points)? <= T::lit(REALITY_TOLERANCE))
    }
}

/// Anything that can be evaluated at a point of `C²`.
pub trait Field<T: RealScalar> {
    fn value(&self, p: &BiPoint<T>) -> Result<Complex<T>>;
}

impl<T: RealScalar> Field<T> for HarmonicPair<T> {
    fn value(&self, p: &BiPoint<T>) -> Result<Complex<T>> {
        self.eval_pair(p)
    }
}
