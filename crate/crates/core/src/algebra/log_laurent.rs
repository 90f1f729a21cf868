use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use super::branch::BranchCut;
use crate::error::Result;
use crate::scalar::{binomial, complex_negligible, conj, is_finite, real, RealScalar, Scalar};
use crate::Error;

/// One term `coeff · z^power · (log z)^logpow`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogLaurentTerm<T> {
    pub coeff: Complex<T>,
    pub power: i32,
    pub logpow: u32,
}

/// Finite sum of [`LogLaurentTerm`]s, at most one per `(power, logpow)`.
///
/// Terms are kept in a sorted map, so iteration order (and therefore
/// serialization) is deterministic. Coefficients that become negligible
/// after an update are removed.
#[derive(Clone, Debug, PartialEq)]
pub struct LogLaurentExpr<T> {
    terms: BTreeMap<(i32, u32), Complex<T>>,
    cut: BranchCut,
}

impl<T: Scalar> Default for LogLaurentExpr<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> LogLaurentExpr<T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
            cut: BranchCut::default(),
        }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Complex<T>, power: i32, logpow: u32) -> Self {
        let mut e = Self::zero();
        e.add_term(c, power, logpow);
        e
    }

    /// `(log z)^logpow` with a real coefficient.
    pub fn log_power(c: T, logpow: u32) -> Self {
        Self::monomial(real(c), 0, logpow)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = LogLaurentTerm<T>>,
    {
        let mut e = Self::zero();
        for t in terms {
            e.add_term(t.coeff, t.power, t.logpow);
        }
        e
    }

    pub fn with_cut(mut self, cut: BranchCut) -> Self {
        self.cut = cut;
        self
    }

    pub fn cut(&self) -> BranchCut {
        self.cut
    }

    /// Adds `c · z^power · (log z)^logpow`, merging with an existing term.
    pub fn add_term(&mut self, c: Complex<T>, power: i32, logpow: u32) {
        let key = (power, logpow);
        let merged = match self.terms.remove(&key) {
            Some(prev) => prev + c,
            None => c,
        };
        if !complex_negligible(&merged) {
            self.terms.insert(key, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = LogLaurentTerm<T>> + '_ {
        self.terms.iter().map(|(&(power, logpow), c)| LogLaurentTerm {
            coeff: c.clone(),
            power,
            logpow,
        })
    }

    pub fn coeff(&self, power: i32, logpow: u32) -> Option<&Complex<T>> {
        self.terms.get(&(power, logpow))
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

    pub fn has_log(&self) -> bool {
        self.terms.keys().any(|&(_, m)| m > 0)
    }

    pub fn max_logpow(&self) -> u32 {
        self.terms.keys().map(|&(_, m)| m).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Complex<T>) -> Self {
        self.map_terms(|k, m, a| vec![(a * c.clone(), k, m)])
    }

    /// Multiplies by `z^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        self.map_terms(|k, m, a| vec![(a, k + shift, m)])
    }

    /// Conjugates every coefficient and switches to the conjugate branch, so
    /// that `conjugated().eval(conj(z)) == conj(self.eval(z))`.
    pub fn conjugated(&self) -> Self {
        let mut e = self.map_terms(|k, m, a| vec![(conj(&a), k, m)]);
        e.cut = self.cut.conjugate();
        e
    }

    /// Termwise `d/dz`.
    pub fn differentiate(&self) -> Self {
        self.map_terms(|k, m, c| {
            let mut out = Vec::with_capacity(2);
            if k != 0 {
                out.push((c.clone() * real(T::from_i64(k as i64)), k - 1, m));
            }
            if m > 0 {
                out.push((c * real(T::from_i64(m as i64)), k - 1, m - 1));
            }
            out
        })
    }

    /// Exact primitive of `e(z)/z` with zero integration constant.
    ///
    /// For `k ≠ 0`, `∫ z^{k−1}(log z)^m dz = z^k(log z)^m/k − (m/k)∫ z^{k−1}(log z)^{m−1} dz`,
    /// unrolled into a finite alternating sum. For `k = 0` the primitive is
    /// `(log z)^{m+1}/(m+1)`.
    pub fn antiderivative_over_arg(&self) -> Self {
        self.map_terms(|k, m, c| {
            if k == 0 {
                return vec![(c * real(T::one() / T::from_i64(m as i64 + 1)), 0, m + 1)];
            }
            let kk = real(T::from_i64(k as i64));
            let mut out = Vec::with_capacity(m as usize + 1);
            let mut coef = c / kk.clone();
            for j in 0..=m {
                let lp = m - j;
                out.push((coef.clone(), k, lp));
                coef = -(coef * real(T::from_i64(lp as i64))) / kk.clone();
            }
            out
        })
    }

    /// Composition with `ρ ↦ 1/ρ` for expressions in a positive real
    /// variable: `ρ^k (log ρ)^m ↦ (−1)^m ρ^{−k} (log ρ)^m`.
    pub fn reciprocal_argument(&self) -> Self {
        self.map_terms(|k, m, c| {
            let c = if m % 2 == 1 { -c } else { c };
            vec![(c, -k, m)]
        })
    }

    fn map_terms<F>(&self, mut f: F) -> Self
    where
        F: FnMut(i32, u32, Complex<T>) -> Vec<(Complex<T>, i32, u32)>,
    {
        let mut out = Self::zero().with_cut(self.cut);
        for (&(k, m), c) in &self.terms {
            for (c2, k2, m2) in f(k, m, c.clone()) {
                out.add_term(c2, k2, m2);
            }
        }
        out
    }
}

impl<T: RealScalar> LogLaurentExpr<T> {
    /// `Σ c·z^k·(log z)^m` with `log` on this expression's branch.
    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.is_zero() && !self.is_zero() {
            return Err(Error::Domain("expression evaluated at z = 0".into()));
        }
        let log = if self.has_log() {
            Some(self.cut.log(z)?)
        } else {
            None
        };
        let mut acc = Complex::zero();
        for (&(k, m), c) in &self.terms {
            let mut t = c * z.powi(k);
            if m > 0 {
                if let Some(l) = log {
                    t = t * l.powu(m);
                }
            }
            acc = acc + t;
        }
        if !is_finite(&acc) {
            return Err(Error::Domain(format!("non-finite value at z = {z}")));
        }
        Ok(acc)
    }

    /// Substitutes `z = ρ·e^{iθ}` and expands `(log ρ + iθ)^m` binomially.
    ///
    /// `θ` is first mapped into this expression's argument window; if the
    /// expression carries logarithms, `θ` must stay `margin` away from the
    /// cut. The result is an expression in `ρ` on the principal branch.
    pub fn restrict_to_ray(&self, theta: T, margin: f64) -> Result<Self> {
        let theta = if self.has_log() {
            self.cut.check_margin(theta, margin)?;
            self.cut.normalize(theta)
        } else {
            theta
        };
        let mut out = Self::zero();
        let i_theta = Complex::new(T::zero(), theta);
        for (&(k, m), c) in &self.terms {
            let phase = Complex::from_polar(T::one(), theta * T::from_i64(k as i64));
            let base = c * phase;
            for j in 0..=m {
                let coef =
                    base * real(binomial::<T>(m, j)) * i_theta.powu(m - j);
                out.add_term(coef, k, j);
            }
        }
        Ok(out)
    }

    /// Largest coefficient magnitude, used to scale tolerances.
    pub fn coeff_scale(&self) -> T {
        self.terms
            .values()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| a.max(b))
    }
}

impl<T: Scalar> Add for &LogLaurentExpr<T> {
    type Output = LogLaurentExpr<T>;

    fn add(self, rhs: Self) -> LogLaurentExpr<T> {
        let mut out = self.clone();
        for (&(k, m), c) in &rhs.terms {
            out.add_term(c.clone(), k, m);
        }
        out
    }
}

impl<T: Scalar> Add for LogLaurentExpr<T> {
    type Output = LogLaurentExpr<T>;

    fn add(self, rhs: Self) -> LogLaurentExpr<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Neg for &LogLaurentExpr<T> {
    type Output = LogLaurentExpr<T>;

    fn neg(self) -> LogLaurentExpr<T> {
        self.map_terms(|k, m, c| vec![(-c, k, m)])
    }
}

impl<T: Scalar> Neg for LogLaurentExpr<T> {
    type Output = LogLaurentExpr<T>;

    fn neg(self) -> LogLaurentExpr<T> {
        -&self
    }
}

impl<T: Scalar> Sub for &LogLaurentExpr<T> {
    type Output = LogLaurentExpr<T>;

    fn sub(self, rhs: Self) -> LogLaurentExpr<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Sub for LogLaurentExpr<T> {
    type Output = LogLaurentExpr<T>;

    fn sub(self, rhs: Self) -> LogLaurentExpr<T> {
        &self - &rhs
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{E, PI};

    use num_rational::Rational64;

    use super::*;

    fn cplx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    type Expr = LogLaurentExpr<f64>;

    fn c(re: f64) -> Complex<f64> {
        cplx(re, 0.0)
    }

    #[test]
    fn eval_examples() {
        let half_sq = Expr::monomial(c(0.5), 2, 0);
        assert!((half_sq.eval(c(1.0)).unwrap() - c(0.5)).norm() < 1e-15);

        let half_log = Expr::log_power(0.5, 1);
        assert!((half_log.eval(c(E)).unwrap() - c(0.5)).norm() < 1e-15);

        // ¼(log i)² = ¼(iπ/2)² = −π²/16, cross-checked against std's complex ln.
        let quarter_log_sq = Expr::log_power(0.25, 2);
        let got = quarter_log_sq.eval(Complex::<f64>::i()).unwrap();
        let numeric = 0.25 * Complex::<f64>::i().ln().powu(2);
        assert!((got - c(-PI * PI / 16.0)).norm() < 1e-15);
        assert!((got - numeric).norm() < 1e-15);
    }

    #[test]
    fn eval_domain_errors() {
        let e = Expr::monomial(c(1.0), -1, 0);
        assert!(e.eval(c(0.0)).is_err());
        let l = Expr::log_power(1.0, 1);
        assert!(matches!(l.eval(c(-2.0)), Err(Error::Domain(_))));
        // No log terms: the negative real axis is fine.
        assert!(e.eval(c(-2.0)).is_ok());
    }

    #[test]
    fn differentiate_examples() {
        assert_eq!(
            Expr::log_power(0.5, 1).differentiate(),
            Expr::monomial(c(0.5), -1, 0)
        );
        assert_eq!(
            Expr::monomial(c(0.5), 2, 0).differentiate(),
            Expr::monomial(c(1.0), 1, 0)
        );
        assert_eq!(
            Expr::log_power(0.25, 2).differentiate(),
            Expr::monomial(c(0.5), -1, 1)
        );
    }

    #[test]
    fn antiderivative_examples() {
        let cst = Expr::constant(c(3.0));
        assert_eq!(cst.antiderivative_over_arg(), Expr::log_power(3.0, 1));
        assert_eq!(
            Expr::log_power(0.5, 1).antiderivative_over_arg(),
            Expr::log_power(0.25, 2)
        );
        assert_eq!(
            Expr::monomial(c(0.5), 2, 0).antiderivative_over_arg(),
            Expr::monomial(c(0.25), 2, 0)
        );
    }

    #[test]
    fn antiderivative_with_log_and_power() {
        // ∫ z log z dz = z² log z / 2 − z²/4
        let e = Expr::monomial(c(1.0), 2, 1);
        let a = e.antiderivative_over_arg();
        let expected = Expr::from_terms([
            LogLaurentTerm { coeff: c(0.5), power: 2, logpow: 1 },
            LogLaurentTerm { coeff: c(-0.25), power: 2, logpow: 0 },
        ]);
        assert_eq!(a, expected);
    }

    #[test]
    fn rational_round_trip_is_exact() {
        type Q = Rational64;
        let q = |n, d| Complex::new(Q::new(n, d), Q::new(0, 1));
        let e = LogLaurentExpr::<Q>::from_terms([
            LogLaurentTerm { coeff: q(3, 7), power: 3, logpow: 2 },
            LogLaurentTerm { coeff: q(-5, 2), power: -2, logpow: 1 },
            LogLaurentTerm { coeff: q(1, 3), power: 0, logpow: 2 },
        ]);
        let back = e.antiderivative_over_arg().differentiate();
        assert_eq!(back, e.shift(-1));
    }

    #[test]
    fn restrict_to_ray_examples() {
        let sq = Expr::monomial(c(0.5), 2, 0).restrict_to_ray(0.0, 1e-6).unwrap();
        assert_eq!(sq, Expr::monomial(c(0.5), 2, 0));

        let half_log = Expr::log_power(0.5, 1);
        let ray = half_log.restrict_to_ray(PI / 2.0, 1e-6).unwrap();
        let expected = &Expr::log_power(0.5, 1) + &Expr::constant(cplx(0.0, PI / 4.0));
        assert!((ray.eval(c(2.0)).unwrap() - expected.eval(c(2.0)).unwrap()).norm() < 1e-15);
        let direct = half_log.eval(Complex::from_polar(2.0, PI / 2.0)).unwrap();
        assert!((ray.eval(c(2.0)).unwrap() - direct).norm() < 1e-15);

        let theta = 0.7;
        let inv = Expr::monomial(c(1.0), -1, 0).restrict_to_ray(theta, 1e-6).unwrap();
        let want = Complex::from_polar(1.0, -theta);
        assert!((inv.coeff(-1, 0).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn restrict_to_ray_rejects_cut() {
        let l = Expr::log_power(1.0, 1);
        assert!(matches!(
            l.restrict_to_ray(PI - 1e-9, 1e-6),
            Err(Error::CutProximity { .. })
        ));
        // Angles outside the window are wrapped before expansion.
        let wrapped = l.restrict_to_ray(0.5 + 2.0 * PI, 1e-6).unwrap();
        assert!((wrapped.coeff(0, 0).unwrap() - cplx(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn reciprocal_argument_matches_direct_eval() {
        let e = Expr::from_terms([
            LogLaurentTerm { coeff: cplx(0.3, 0.1), power: 2, logpow: 1 },
            LogLaurentTerm { coeff: c(-1.2), power: -1, logpow: 2 },
            LogLaurentTerm { coeff: c(0.7), power: 0, logpow: 0 },
        ]);
        let r = e.reciprocal_argument();
        for rho in [0.4, 1.0, 2.5] {
            let lhs = r.eval(c(rho)).unwrap();
            let rhs = e.eval(c(1.0 / rho)).unwrap();
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn conjugated_evaluates_to_conjugate() {
        let e = Expr::from_terms([
            LogLaurentTerm { coeff: cplx(0.3, 0.9), power: 1, logpow: 2 },
            LogLaurentTerm { coeff: cplx(-1.0, 0.5), power: -2, logpow: 0 },
        ]);
        let z = Complex::new(0.4, -1.3);
        let lhs = e.conjugated().eval(z.conj()).unwrap();
        assert!((lhs - e.eval(z).unwrap().conj()).norm() < 1e-14);
    }

    #[test]
    fn merging_drops_cancelled_terms() {
        let e = Expr::monomial(c(1.0), 3, 1);
        let z = &e - &e;
        assert!(z.is_zero());
    }
}
