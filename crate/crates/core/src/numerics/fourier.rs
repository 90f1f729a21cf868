use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::BivariateLaurentExpr;
use crate::error::{Error, Result};
use crate::scalar::{real, RealScalar};

/// Largest constant Fourier coefficient accepted as "zero mean".
pub const MEAN_TOLERANCE: f64 = 1e-10;

/// Boundary data on the unit circle, `a₀ + Σ (aₙ cos nθ + bₙ sin nθ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomial<T> {
    pub cos: Vec<T>,
    pub sin: Vec<T>,
}

impl<T: RealScalar> TrigPolynomial<T> {
    /// Pads the shorter coefficient list with zeros; `sin[0]` is ignored.
    pub fn new(mut cos: Vec<T>, mut sin: Vec<T>) -> Self {
        let n = cos.len().max(sin.len()).max(1);
        cos.resize(n, T::zero());
        sin.resize(n, T::zero());
        sin[0] = T::zero();
        Self { cos, sin }
    }

    pub fn degree(&self) -> usize {
        self.cos.len() - 1
    }

    pub fn mean(&self) -> T {
        self.cos[0]
    }

    pub fn eval(&self, theta: T) -> T {
        self.dirichlet_extension(T::one(), theta)
    }

    /// The harmonic function in the disk with these boundary values,
    /// `Σ rⁿ(aₙ cos nθ + bₙ sin nθ)`.
    pub fn dirichlet_extension(&self, r: T, theta: T) -> T {
        let mut acc = self.cos[0];
        let mut rn = T::one();
        for n in 1..=self.degree() {
            rn = rn * r;
            let nt = theta * T::from_i64(n as i64);
            acc = acc + rn * (self.cos[n] * nt.cos() + self.sin[n] * nt.sin());
        }
        acc
    }

    /// Fourier coefficients of `φ(e^{iθ}, e^{−iθ})`. The data must be real
    /// on the circle.
    pub fn from_boundary_data(phi: &BivariateLaurentExpr<T>) -> Result<Self> {
        let mut modes: BTreeMap<i32, Complex<T>> = BTreeMap::new();
        let mut scale = T::zero();
        for (c, kz, kzeta) in phi.terms() {
            scale = scale.max(c.norm());
            let slot = modes.entry(kz - kzeta).or_insert_with(Complex::zero);
            *slot = *slot + c;
        }
        let degree = modes.keys().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0);
        let get = |k: i32| modes.get(&k).copied().unwrap_or_else(Complex::zero);
        let tol = T::lit(1e-12) * scale.max(T::one());
        let mut cos = vec![T::zero(); degree + 1];
        let mut sin = vec![T::zero(); degree + 1];
        let check = |v: Complex<T>| -> Result<T> {
            if v.im.abs() > tol {
                return Err(Error::InvalidParameter(format!(
                    "boundary data is not real on the circle (imaginary part {})",
                    v.im
                )));
            }
            Ok(v.re)
        };
        cos[0] = check(get(0))?;
        for n in 1..=degree as i32 {
            let (cp, cm) = (get(n), get(-n));
            cos[n as usize] = check(cp + cm)?;
            sin[n as usize] = check((cp - cm) * Complex::<T>::i())?;
        }
        Ok(Self::new(cos, sin))
    }

    /// `cos nθ = (zⁿ + ζⁿ)/2`, `sin nθ = (zⁿ − ζⁿ)/(2i)`.
    pub fn to_bivariate(&self) -> BivariateLaurentExpr<T> {
        let half = T::lit(0.5);
        let mut e = BivariateLaurentExpr::constant(real(self.cos[0]));
        for n in 1..=self.degree() {
            let k = n as i32;
            let a = Complex::new(self.cos[n] * half, T::zero());
            let b = Complex::new(T::zero(), -self.sin[n] * half);
            e.add_term(a + b, k, 0);
            e.add_term(a - b, 0, k);
        }
        e
    }
}

/// Disk Neumann solution with data `φ` and `v(0) = 0`:
/// `Σ_{n≥1} (rⁿ/n)(aₙ cos nθ + bₙ sin nθ)`.
pub fn fourier_neumann_oracle<T: RealScalar>(phi: &TrigPolynomial<T>, r: T, theta: T) -> Result<T> {
    if phi.mean().abs() > T::lit(MEAN_TOLERANCE) {
        return Err(Error::NonzeroMean {
            mean: phi.mean().as_f64(),
        });
    }
    let mut acc = T::zero();
    let mut rn = T::one();
    for n in 1..=phi.degree() {
        rn = rn * r;
        let nn = T::from_i64(n as i64);
        let nt = theta * nn;
        acc = acc + rn / nn * (phi.cos[n] * nt.cos() + phi.sin[n] * nt.sin());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cplx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn oracle_examples() {
        let cos2 = TrigPolynomial::<f64>::new(vec![0.0, 0.0, 1.0], vec![]);
        let cos1 = TrigPolynomial::<f64>::new(vec![0.0, 1.0], vec![]);
        for (r, t) in [(0.3, 0.4), (1.0, -2.0), (0.9, 3.0)] {
            let v = fourier_neumann_oracle(&cos2, r, t).unwrap();
            assert!((v - 0.5 * r * r * (2.0 * t).cos()).abs() < 1e-15);
            let v = fourier_neumann_oracle(&cos1, r, t).unwrap();
            assert!((v - r * t.cos()).abs() < 1e-15);
        }
        let zero = TrigPolynomial::<f64>::new(vec![0.0], vec![]);
        assert_eq!(fourier_neumann_oracle(&zero, 0.5, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn nonzero_mean_rejected() {
        let p = TrigPolynomial::<f64>::new(vec![0.2, 1.0], vec![]);
        assert!(matches!(
            fourier_neumann_oracle(&p, 0.5, 0.0),
            Err(Error::NonzeroMean { .. })
        ));
    }

    #[test]
    fn bivariate_round_trip() {
        let p = TrigPolynomial::<f64>::new(vec![0.0, 0.5, -1.0, 0.25], vec![0.0, 2.0, 0.0, -0.75]);
        let phi = p.to_bivariate();
        let back = TrigPolynomial::from_boundary_data(&phi).unwrap();
        for (a, b) in p.cos.iter().zip(&back.cos).chain(p.sin.iter().zip(&back.sin)) {
            assert!((a - b).abs() < 1e-15);
        }
        for t in [0.0, 1.3, -2.2] {
            let z = Complex::from_polar(1.0, t);
            let v = phi.eval(z, z.conj()).unwrap();
            assert!((v.re - p.eval(t)).abs() < 1e-14 && v.im.abs() < 1e-14);
        }
    }

    #[test]
    fn cos_two_theta_from_z_squared_plus_zeta_squared() {
        let phi = BivariateLaurentExpr::from_terms([(cplx(0.5, 0.0), 2, 0), (cplx(0.5, 0.0), 0, 2)]);
        let p = TrigPolynomial::<f64>::from_boundary_data(&phi).unwrap();
        assert_eq!(p.cos, vec![0.0, 0.0, 1.0]);
        // zζ − 1 has zero trace, so it contributes nothing.
        let with_kernel = &phi + &BivariateLaurentExpr::unit_circle_defining();
        let q = TrigPolynomial::<f64>::from_boundary_data(&with_kernel).unwrap();
        assert_eq!(q.cos, vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn non_real_data_rejected() {
        let phi = BivariateLaurentExpr::monomial(cplx(0.0, 1.0), 0, 0);
        assert!(TrigPolynomial::<f64>::from_boundary_data(&phi).is_err());
    }
}
