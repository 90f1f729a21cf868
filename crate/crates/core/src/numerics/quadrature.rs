use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PathSpec;
use crate::scalar::RealScalar;

/// Initial equal splits per panel before adaptive refinement starts.
const INITIAL_SPLITS: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_depth: 30,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, max_depth: u32) -> Result<Self> {
        let cfg = Self { abs_tol, max_depth };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::InvalidParameter("abs_tol must be > 0".into()));
        }
        if self.max_depth < 1 {
            return Err(Error::InvalidParameter("max_depth must be >= 1".into()));
        }
        Ok(())
    }
}

struct Simpson<T, F> {
    f: F,
    max_depth: u32,
    _scalar: std::marker::PhantomData<T>,
}

impl<T, F> Simpson<T, F>
where
    T: RealScalar,
    F: FnMut(T) -> Result<Complex<T>>,
{
    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: T,
        b: T,
        fa: Complex<T>,
        fm: Complex<T>,
        fb: Complex<T>,
        whole: Complex<T>,
        tol: T,
        depth: u32,
    ) -> Result<Complex<T>> {
        let two = T::lit(2.0);
        let m = (a + b) / two;
        let lm = (a + m) / two;
        let rm = (m + b) / two;
        let flm = (self.f)(lm)?;
        let frm = (self.f)(rm)?;
        let left = simpson_rule(a, m, fa, flm, fm);
        let right = simpson_rule(m, b, fm, frm, fb);
        let delta = left + right - whole;
        let fifteen = T::lit(15.0);
        if delta.norm() <= fifteen * tol {
            return Ok(left + right + delta / fifteen);
        }
        if depth >= self.max_depth {
            return Err(Error::NonConvergence {
                depth,
                a: a.as_f64(),
                b: b.as_f64(),
            });
        }
        let half = tol / two;
        Ok(self.refine(a, m, fa, flm, fm, left, half, depth + 1)?
            + self.refine(m, b, fm, frm, fb, right, half, depth + 1)?)
    }
}

fn simpson_rule<T: RealScalar>(
    a: T,
    b: T,
    fa: Complex<T>,
    fm: Complex<T>,
    fb: Complex<T>,
) -> Complex<T> {
    (fa + fm * T::lit(4.0) + fb) * ((b - a) / T::lit(6.0))
}

/// Adaptive Simpson quadrature of a complex-valued function on `[a, b]`.
///
/// The error of each panel is estimated by halving; panels split at the
/// midpoint until the estimate is below their share of `abs_tol`.
pub fn adaptive_simpson<T, F>(f: F, a: T, b: T, cfg: &QuadratureConfig) -> Result<Complex<T>>
where
    T: RealScalar,
    F: FnMut(T) -> Result<Complex<T>>,
{
    cfg.validate()?;
    let mut s = Simpson {
        f,
        max_depth: cfg.max_depth,
        _scalar: std::marker::PhantomData,
    };
    let n = INITIAL_SPLITS;
    let width = (b - a) / T::from_i64(n as i64);
    let tol = T::lit(cfg.abs_tol) / T::from_i64(n as i64);
    let mut total = Complex::zero();
    let mut lo = a;
    let mut f_lo = (s.f)(lo)?;
    for j in 1..=n {
        let hi = if j == n { b } else { a + width * T::from_i64(j as i64) };
        let mid = (lo + hi) / T::lit(2.0);
        let f_mid = (s.f)(mid)?;
        let f_hi = (s.f)(hi)?;
        let whole = simpson_rule(lo, hi, f_lo, f_mid, f_hi);
        total = total + s.refine(lo, hi, f_lo, f_mid, f_hi, whole, tol, 1)?;
        lo = hi;
        f_lo = f_hi;
    }
    Ok(total)
}

/// `∫_γ f(τ) dτ`, with `f` also receiving the path parameter `t`.
pub fn integrate_path_param<T, F>(
    mut f: F,
    path: &PathSpec<T>,
    cfg: &QuadratureConfig,
) -> Result<Complex<T>>
where
    T: RealScalar,
    F: FnMut(T, Complex<T>) -> Result<Complex<T>>,
{
    let panels = path.subdivision.max(1);
    let share = QuadratureConfig {
        abs_tol: cfg.abs_tol / panels as f64,
        ..*cfg
    };
    let mut total = Complex::zero();
    for p in 0..panels {
        let a = T::from_i64(p as i64) / T::from_i64(panels as i64);
        let b = T::from_i64(p as i64 + 1) / T::from_i64(panels as i64);
        total = total
            + adaptive_simpson(
                |t| Ok(f(t, path.point(t))? * path.tangent(t)),
                a,
                b,
                &share,
            )?;
    }
    Ok(total)
}

/// `∫_γ f(τ) dτ` along `path`.
pub fn integrate_path<T, F>(mut f: F, path: &PathSpec<T>, cfg: &QuadratureConfig) -> Result<Complex<T>>
where
    T: RealScalar,
    F: FnMut(Complex<T>) -> Result<Complex<T>>,
{
    integrate_path_param(|_, z| f(z), path, cfg)
}
