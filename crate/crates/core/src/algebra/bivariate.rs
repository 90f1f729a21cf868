use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use super::LogLaurentExpr;
use crate::error::{Error, Result};
use crate::scalar::{complex_negligible, conj, is_finite, real, RealScalar, Scalar};

/// Finite sum `Σ c · z^kz · ζ^kzeta`, the holomorphic extension of boundary
/// data into `C²`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateLaurentExpr<T> {
    terms: BTreeMap<(i32, i32), Complex<T>>,
}

impl<T: Scalar> Default for BivariateLaurentExpr<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> BivariateLaurentExpr<T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Complex<T>, kz: i32, kzeta: i32) -> Self {
        let mut e = Self::zero();
        e.add_term(c, kz, kzeta);
        e
    }

    /// `z ζ − 1`, which vanishes on the complexified unit circle.
    pub fn unit_circle_defining() -> Self {
        let mut e = Self::monomial(real(T::one()), 1, 1);
        e.add_term(real(-T::one()), 0, 0);
        e
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Complex<T>, i32, i32)>,
    {
        let mut e = Self::zero();
        for (c, kz, kzeta) in terms {
            e.add_term(c, kz, kzeta);
        }
        e
    }

    /// `f(z) + g(ζ)` for log-free `f`, `g`.
    pub fn from_separated(f: &LogLaurentExpr<T>, g: &LogLaurentExpr<T>) -> Result<Self> {
        if f.has_log() || g.has_log() {
            return Err(Error::InvalidParameter(
                "bivariate Laurent data cannot carry logarithms".into(),
            ));
        }
        let mut e = Self::zero();
        for t in f.terms() {
            e.add_term(t.coeff, t.power, 0);
        }
        for t in g.terms() {
            e.add_term(t.coeff, 0, t.power);
        }
        Ok(e)
    }

    pub fn add_term(&mut self, c: Complex<T>, kz: i32, kzeta: i32) {
        let key = (kz, kzeta);
        let merged = match self.terms.remove(&key) {
            Some(prev) => prev + c,
            None => c,
        };
        if !complex_negligible(&merged) {
            self.terms.insert(key, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Complex<T>, i32, i32)> + '_ {
        self.terms.iter().map(|(&(a, b), c)| (c.clone(), a, b))
    }

    pub fn coeff(&self, kz: i32, kzeta: i32) -> Option<&Complex<T>> {
        self.terms.get(&(kz, kzeta))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Complex<T>) -> Self {
        Self::from_terms(self.terms().map(|(c, a, b)| (c * s.clone(), a, b)))
    }

    /// `conj(φ(conj ζ, conj z))`; data is real on the real slice iff it equals this.
    pub fn swapped_conjugate(&self) -> Self {
        Self::from_terms(self.terms().map(|(c, a, b)| (conj(&c), b, a)))
    }

    /// Restriction to the complexified unit circle, `ζ = S(z) = 1/z`:
    /// `c · z^k · ζ^m ↦ c · z^{k−m}`.
    pub fn restrict_to_circle(&self) -> LogLaurentExpr<T> {
        let mut out = LogLaurentExpr::zero();
        for (&(kz, kzeta), c) in &self.terms {
            out.add_term(c.clone(), kz - kzeta, 0);
        }
        out
    }
}

impl<T: RealScalar> BivariateLaurentExpr<T> {
    pub fn eval(&self, z: Complex<T>, zeta: Complex<T>) -> Result<Complex<T>> {
        let mut acc = Complex::zero();
        for (&(kz, kzeta), c) in &self.terms {
            if (kz < 0 && z.is_zero()) || (kzeta < 0 && zeta.is_zero()) {
                return Err(Error::Domain("bivariate term has a pole at the point".into()));
            }
            acc = acc + c * z.powi(kz) * zeta.powi(kzeta);
        }
        if !is_finite(&acc) {
            return Err(Error::Domain("non-finite bivariate value".into()));
        }
        Ok(acc)
    }
}

impl<T: Scalar> Add for &BivariateLaurentExpr<T> {
    type Output = BivariateLaurentExpr<T>;

    fn add(self, rhs: Self) -> BivariateLaurentExpr<T> {
        let mut out = self.clone();
        for (c, a, b) in rhs.terms() {
            out.add_term(c, a, b);
        }
        out
    }
}

impl<T: Scalar> Neg for &BivariateLaurentExpr<T> {
    type Output = BivariateLaurentExpr<T>;

    fn neg(self) -> BivariateLaurentExpr<T> {
        BivariateLaurentExpr::from_terms(self.terms().map(|(c, a, b)| (-c, a, b)))
    }
}

impl<T: Scalar> Sub for &BivariateLaurentExpr<T> {
    type Output = BivariateLaurentExpr<T>;

    fn sub(self, rhs: Self) -> BivariateLaurentExpr<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &BivariateLaurentExpr<T> {
    type Output = BivariateLaurentExpr<T>;

    fn mul(self, rhs: Self) -> BivariateLaurentExpr<T> {
        let mut out = BivariateLaurentExpr::zero();
        for (c1, a1, b1) in self.terms() {
            for (c2, a2, b2) in rhs.terms() {
                out.add_term(c1.clone() * c2, a1 + a2, b1 + b2);
            }
        }
        out
    }
}
