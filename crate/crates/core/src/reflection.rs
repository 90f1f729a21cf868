//! Reflection formulas: values at the Schwarz-reflected point from values on
//! one side plus a data-dependent correction.
//!
//! Every result reports `correction = value − u(p)`, so points on the curve
//! give a zero correction for all four formulas.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{BivariateLaurentExpr, LogLaurentExpr, DEFAULT_CUT_MARGIN};
use crate::error::{Error, Result};
use crate::geometry::{reflect_bipoint, sqrt_schwarz_derivative, BiPoint, PathSpec, SchwarzCurve};
use crate::harmonic::{Field, HarmonicPair, RobinParams};
use crate::numerics::{adaptive_simpson, integrate_path_param, QuadratureConfig};
use crate::scalar::{real, RealScalar};

/// Which reflection formula produced a [`ReflectionResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReflectionFormula {
    DirichletStudy,
    NeumannCircle,
    RobinCircle,
    NeumannSchwarz,
}

impl ReflectionFormula {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::DirichletStudy => "dirichlet_study",
            Self::NeumannCircle => "neumann_circle",
            Self::RobinCircle => "robin_circle",
            Self::NeumannSchwarz => "neumann_schwarz",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize + Clone + Default"))]
#[serde(bound(deserialize = "T: Deserialize<'de> + Default"))]
pub struct ReflectionResult<T> {
    pub formula: ReflectionFormula,
    pub point: BiPoint<T>,
    pub reflected: BiPoint<T>,
    #[serde(with = "crate::wire::complex")]
    pub value: Complex<T>,
    #[serde(with = "crate::wire::complex")]
    pub correction: Complex<T>,
}

/// Options shared by the circle reflections.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleReflectionOptions {
    /// Minimum angular distance of the ray from the log cut.
    pub cut_margin: f64,
    /// Re-integrate the data term numerically with this configuration and
    /// fail if it disagrees with the exact value.
    pub shadow: Option<QuadratureConfig>,
    pub shadow_tolerance: f64,
}

impl Default for CircleReflectionOptions {
    fn default() -> Self {
        Self {
            cut_margin: DEFAULT_CUT_MARGIN,
            shadow: None,
            shadow_tolerance: 1e-9,
        }
    }
}

impl CircleReflectionOptions {
    pub fn with_shadow(mut self, cfg: QuadratureConfig) -> Self {
        self.shadow = Some(cfg);
        self
    }
}

/// Study's rectangle: `u(S̃(ζ), S(z)) = φ(S̃(ζ), ζ) + φ(z, S(z)) − u(z, ζ)`.
///
/// Only `u(p)` is evaluated; `u` is never needed at the reflected point.
pub fn reflect_dirichlet_study<T, C>(
    u: &HarmonicPair<T>,
    phi: &BivariateLaurentExpr<T>,
    map: &C,
    p: &BiPoint<T>,
) -> Result<ReflectionResult<T>>
where
    T: RealScalar,
    C: SchwarzCurve<T> + ?Sized,
{
    reflect_dirichlet_value(u.eval_pair(p)?, phi, map, p)
}

/// [`reflect_dirichlet_study`] with `u(p)` supplied directly, so the formula
/// can be applied to its own output.
pub fn reflect_dirichlet_value<T, C>(
    u_at_p: Complex<T>,
    phi: &BivariateLaurentExpr<T>,
    map: &C,
    p: &BiPoint<T>,
) -> Result<ReflectionResult<T>>
where
    T: RealScalar,
    C: SchwarzCurve<T> + ?Sized,
{
    let reflected = reflect_bipoint(map, p)?;
    let data = phi.eval(reflected.z, p.zeta)? + phi.eval(p.z, reflected.zeta)?;
    let value = data - u_at_p;
    Ok(ReflectionResult {
        formula: ReflectionFormula::DirichletStudy,
        point: *p,
        reflected,
        value,
        correction: value - u_at_p,
    })
}

/// `(r, θ)` of a real-slice point.
fn ray_coordinates<T: RealScalar>(p: &BiPoint<T>) -> Result<(T, T)> {
    let scale = T::one() + p.z.norm();
    if !p.is_real_slice(T::lit(1e-12) * scale) {
        return Err(Error::Domain(
            "circle reflections need a real-slice point (z, conj z)".into(),
        ));
    }
    let r = p.z.norm();
    if r.is_zero() || !r.is_finite() {
        return Err(Error::Domain(format!("radius {r} is outside (0, ∞)")));
    }
    Ok((r, p.z.im.atan2(p.z.re)))
}

/// Inversion in the unit circle, `(z, ζ) ↦ (1/ζ, 1/z)`.
fn circle_image<T: RealScalar>(p: &BiPoint<T>) -> BiPoint<T> {
    BiPoint::new(p.zeta.inv(), p.z.inv())
}

fn between<T: RealScalar>(prim: &LogLaurentExpr<T>, lo: T, hi: T) -> Result<Complex<T>> {
    Ok(prim.eval(real(hi))? - prim.eval(real(lo))?)
}

/// `−∫_{1/r}^{r} φ(ρe^{iθ}, e^{−iθ}/ρ) dρ/ρ`, computed exactly.
pub fn neumann_circle_correction<T: RealScalar>(
    phi: &BivariateLaurentExpr<T>,
    r: T,
    theta: T,
    opts: &CircleReflectionOptions,
) -> Result<Complex<T>> {
    let on_ray = phi.restrict_to_circle().restrict_to_ray(theta, opts.cut_margin)?;
    let exact = between(&on_ray.antiderivative_over_arg(), r.recip(), r)?;
    if let Some(cfg) = &opts.shadow {
        let numeric = if r == T::one() {
            Complex::new(T::zero(), T::zero())
        } else {
            adaptive_simpson(|rho: T| Ok(on_ray.eval(real(rho))? / rho), r.recip(), r, cfg)?
        };
        let residual = (numeric - exact).norm();
        if residual > T::lit(opts.shadow_tolerance) {
            return Err(Error::ShadowMismatch {
                residual: residual.as_f64(),
            });
        }
    }
    // Subtract from zero so an empty integral reports +0 rather than −0.
    Ok(Complex::new(T::zero(), T::zero()) - exact)
}

/// Neumann reflection across the unit circle:
/// `v(1/ζ, 1/z) = v(z, ζ) − ∫_{1/r}^{r} φ(ρe^{iθ}, e^{−iθ}/ρ) dρ/ρ`.
pub fn reflect_neumann_circle<T: RealScalar>(
    v: &HarmonicPair<T>,
    phi: &BivariateLaurentExpr<T>,
    p: &BiPoint<T>,
    opts: &CircleReflectionOptions,
) -> Result<ReflectionResult<T>> {
    let (r, theta) = ray_coordinates(p)?;
    if v.part_z.has_log() || v.part_zeta.has_log() {
        v.cut().check_margin(theta, opts.cut_margin)?;
    }
    let correction = neumann_circle_correction(phi, r, theta, opts)?;
    Ok(ReflectionResult {
        formula: ReflectionFormula::NeumannCircle,
        point: *p,
        reflected: circle_image(p),
        value: v.eval_pair(p)? + correction,
        correction,
    })
}

/// Data term of the Robin reflection, `−(1/b)∫_{1/r}^{r} φ_w(ρe^{iθ}, e^{−iθ}/ρ) dρ/ρ`.
pub fn robin_data_term<T: RealScalar>(
    phi_w: &BivariateLaurentExpr<T>,
    params: &RobinParams<T>,
    r: T,
    theta: T,
    opts: &CircleReflectionOptions,
) -> Result<Complex<T>> {
    params.validate()?;
    Ok(neumann_circle_correction(phi_w, r, theta, opts)? / params.b)
}

/// Self-referential term `−(a/b)∫_r^1 [w(ρe^{iθ}) + w(e^{iθ}/ρ)] dρ/ρ`.
pub fn robin_self_term<T: RealScalar>(
    w: &HarmonicPair<T>,
    params: &RobinParams<T>,
    r: T,
    theta: T,
    opts: &CircleReflectionOptions,
) -> Result<Complex<T>> {
    params.validate()?;
    let along = &w.part_z.restrict_to_ray(theta, opts.cut_margin)?
        + &w.part_zeta.restrict_to_ray(-theta, opts.cut_margin)?;
    let both = &along + &along.reciprocal_argument();
    let integral = between(&both.antiderivative_over_arg(), r, T::one())?;
    Ok(Complex::new(T::zero(), T::zero()) - integral * (params.a / params.b))
}

/// Robin reflection across the unit circle:
/// `w(e^{iθ}/r) = w(re^{iθ}) − (a/b)∫_r^1 [w(ρe^{iθ}) + w(e^{iθ}/ρ)] dρ/ρ
///  − (1/b)∫_{1/r}^{r} φ_w(ρe^{iθ}, e^{−iθ}/ρ) dρ/ρ`.
pub fn reflect_robin_circle<T: RealScalar>(
    w: &HarmonicPair<T>,
    phi_w: &BivariateLaurentExpr<T>,
    params: &RobinParams<T>,
    p: &BiPoint<T>,
    opts: &CircleReflectionOptions,
) -> Result<ReflectionResult<T>> {
    let (r, theta) = ray_coordinates(p)?;
    let correction = robin_self_term(w, params, r, theta, opts)?
        + robin_data_term(phi_w, params, r, theta, opts)?;
    Ok(ReflectionResult {
        formula: ReflectionFormula::RobinCircle,
        point: *p,
        reflected: circle_image(p),
        value: w.eval_pair(p)? + correction,
        correction,
    })
}

/// Neumann reflection across a Schwarz arc:
/// `v(S̃(ζ), S(z)) = v(z, ζ) + i∫_{S̃(ζ)}^{z} φ(τ, S(τ))√S′(τ) dτ`,
/// integrated along the straight segment with `√S′` continued from the
/// outward-normal branch.
pub fn reflect_neumann_schwarz<T, C, F>(
    v: &F,
    phi: &BivariateLaurentExpr<T>,
    map: &C,
    p: &BiPoint<T>,
    cfg: &QuadratureConfig,
) -> Result<ReflectionResult<T>>
where
    T: RealScalar,
    C: SchwarzCurve<T> + ?Sized,
    F: Field<T> + ?Sized,
{
    let reflected = reflect_bipoint(map, p)?;
    let start = reflected.z;
    let tol = T::lit(1e-14) * (T::one() + p.z.norm());
    let correction = if phi.is_zero() || (start - p.z).norm() <= tol {
        Complex::new(T::zero(), T::zero())
    } else {
        let path = PathSpec::segment(start, p.z)?;
        let branch = sqrt_schwarz_derivative(map, &path)?;
        let integral = integrate_path_param(
            |t, tau| {
                let data = phi.eval(tau, map.schwarz(tau)?)?;
                Ok(data * branch.value(map, t, tau)?)
            },
            &path,
            cfg,
        )?;
        Complex::<T>::i() * integral
    };
    Ok(ReflectionResult {
        formula: ReflectionFormula::NeumannSchwarz,
        point: *p,
        reflected,
        value: v.value(p)? + correction,
        correction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LogLaurentTerm;
    use crate::geometry::{RayPoint, SchwarzMap};
    use crate::operators::{neumann_from_dirichlet_pair, neumann_from_dirichlet_schwarz, BasePointNormalization};

    type Pair = HarmonicPair<f64>;
    type Biv = BivariateLaurentExpr<f64>;
    type Expr = LogLaurentExpr<f64>;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    fn ray(r: f64, t: f64) -> BiPoint<f64> {
        RayPoint::new(r, t).bipoint()
    }

    fn samples() -> Vec<(f64, f64)> {
        (0..20)
            .map(|j| (0.3 + 0.13 * j as f64, -2.8 + 0.29 * j as f64))
            .collect()
    }

    fn opts() -> CircleReflectionOptions {
        CircleReflectionOptions::default()
    }

    #[test]
    fn dirichlet_odd_reflection_for_zero_data() {
        let u = Pair::from_real_part(&Expr::from_terms([
            LogLaurentTerm { coeff: Complex::new(0.4, -0.2), power: 2, logpow: 0 },
            LogLaurentTerm { coeff: c(1.0), power: -1, logpow: 0 },
        ]));
        let p = ray(0.7, 0.9);
        let res = reflect_dirichlet_study(&u, &Biv::zero(), &SchwarzMap::UnitCircle, &p).unwrap();
        assert!((res.value + u.eval_pair(&p).unwrap()).norm() < 1e-15);
        assert!((res.reflected.z - Complex::from_polar(1.0 / 0.7, 0.9)).norm() < 1e-14);
    }

    #[test]
    fn dirichlet_study_example() {
        let half = Expr::monomial(c(0.5), 2, 0);
        let u = Pair::new(half.clone(), half);
        let phi = Biv::from_terms([(c(0.5), 2, 0), (c(0.5), 0, 2)]);
        let p = BiPoint::new(c(2.0), c(2.0));
        let res = reflect_dirichlet_study(&u, &phi, &SchwarzMap::UnitCircle, &p).unwrap();
        assert!((res.value - c(0.25)).norm() < 1e-15);
        assert_eq!(res.reflected, BiPoint::new(c(0.5), c(0.5)));
        // Direct evaluation agrees since u has trace φ.
        assert!((u.eval_pair(&res.reflected).unwrap() - res.value).norm() < 1e-15);
    }

    #[test]
    fn dirichlet_involution_and_fixed_points() {
        let phi = Biv::from_terms([(c(0.3), 1, 0), (c(0.3), 0, 1), (Complex::new(0.1, 0.2), 2, -1)]);
        let m = SchwarzMap::circle(Complex::new(0.5, -0.2), 1.5).unwrap();
        let p = BiPoint::new(Complex::new(0.1, 0.4), Complex::new(0.3, -0.6));
        let u0 = Complex::new(0.7, 0.1);
        let once = reflect_dirichlet_value(u0, &phi, &m, &p).unwrap();
        let twice = reflect_dirichlet_value(once.value, &phi, &m, &once.reflected).unwrap();
        assert!((twice.value - u0).norm() < 1e-11);
        assert!(twice.reflected.distance(&p) < 1e-12);

        let u = Pair::from_real_part(&Expr::monomial(c(1.0), 1, 0));
        let trace = Biv::from_terms([(c(0.5), 1, 0), (c(0.5), 0, 1)]);
        let on = ray(1.0, 0.6);
        let res = reflect_dirichlet_study(&u, &trace, &SchwarzMap::UnitCircle, &on).unwrap();
        assert!((res.value - u.eval_pair(&on).unwrap()).norm() < 1e-15);
        assert!(res.correction.norm() < 1e-15);
    }

    #[test]
    fn neumann_constant_data() {
        let cst = 1.3;
        for (r, t) in samples() {
            let corr = neumann_circle_correction(&Biv::constant(c(cst)), r, t, &opts()).unwrap();
            assert!((corr - c(-2.0 * cst * r.ln())).norm() < 1e-12);
        }
    }

    #[test]
    fn neumann_quadratic_data() {
        let phi = &Biv::from_terms([(c(1.0), 2, 0), (c(1.0), 0, 2)])
            + &Biv::unit_circle_defining().scale(&c(2.0));
        for (r, t) in samples() {
            let corr = neumann_circle_correction(&phi, r, t, &opts()).unwrap();
            let want = (1.0 / (r * r) - r * r) * (2.0 * t).cos();
            assert!((corr - c(want)).norm() < 1e-12, "r={r} t={t}");
        }
    }

    #[test]
    fn neumann_on_circle_and_zero_data() {
        let v = Pair::from_real_part(&Expr::from_terms([
            LogLaurentTerm { coeff: c(0.5), power: 0, logpow: 2 },
            LogLaurentTerm { coeff: c(1.0), power: 3, logpow: 0 },
        ]));
        let phi = Biv::from_terms([(c(0.7), 1, 1), (c(0.2), 3, 0), (c(0.2), 0, 3)]);
        let on = reflect_neumann_circle(&v, &phi, &ray(1.0, 0.4), &opts()).unwrap();
        assert_eq!(on.correction, c(0.0));
        assert!((on.value - v.eval_pair(&ray(1.0, 0.4)).unwrap()).norm() < 1e-15);

        let off = reflect_neumann_circle(&v, &Biv::zero(), &ray(0.6, 0.4), &opts()).unwrap();
        assert!((off.value - v.eval_pair(&ray(0.6, 0.4)).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn neumann_pipeline_matches_direct_evaluation() {
        // u has trace φ, so v = DtN(u) has Neumann data φ and the formula must
        // reproduce v at the reflected point.
        let f = Expr::from_terms([
            LogLaurentTerm { coeff: Complex::new(0.3, 0.4), power: 2, logpow: 0 },
            LogLaurentTerm { coeff: Complex::new(-0.2, 0.1), power: -1, logpow: 0 },
            LogLaurentTerm { coeff: c(0.6), power: 0, logpow: 0 },
        ]);
        let u = Pair::from_real_part(&f);
        let v = neumann_from_dirichlet_pair(&u, &BasePointNormalization::default()).unwrap();
        let phi = Biv::from_separated(&u.part_z, &u.part_zeta).unwrap();
        for (r, t) in samples() {
            let p = ray(r, t);
            let res = reflect_neumann_circle(&v, &phi, &p, &opts()).unwrap();
            let direct = v.eval_pair(&res.reflected).unwrap();
            assert!((res.value - direct).norm() < 1e-10, "r={r} t={t}");
        }
    }

    #[test]
    fn shadow_quadrature_agrees() {
        let phi = Biv::from_terms([(c(0.5), 1, 0), (c(0.5), 0, 1), (c(0.1), 3, 1)]);
        let o = opts().with_shadow(QuadratureConfig::default());
        for (r, t) in [(0.5, 0.3), (1.7, -2.0)] {
            neumann_circle_correction(&phi, r, t, &o).unwrap();
        }
        let strict = CircleReflectionOptions {
            shadow: Some(QuadratureConfig::new(1e-2, 3).unwrap()),
            shadow_tolerance: 1e-15,
            ..opts()
        };
        assert!(matches!(
            neumann_circle_correction(&phi, 0.2, 0.3, &strict),
            Err(Error::ShadowMismatch { .. }) | Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn cut_proximity_rejected() {
        let v = Pair::from_real_part(&Expr::log_power(1.0, 1));
        let near = ray(0.8, std::f64::consts::PI - 1e-8);
        assert!(matches!(
            reflect_neumann_circle(&v, &Biv::zero(), &near, &opts()),
            Err(Error::CutProximity { .. })
        ));
        let off_slice = BiPoint::new(c(0.5), c(0.7));
        assert!(reflect_neumann_circle(&v, &Biv::zero(), &off_slice, &opts()).is_err());
    }

    #[test]
    fn robin_constant_data_term() {
        let params = RobinParams::new(0.7, 1.9).unwrap();
        let phi = Biv::constant(c(params.b));
        for (r, t) in samples() {
            let d = robin_data_term(&phi, &params, r, t, &opts()).unwrap();
            assert!((d - c(-2.0 * r.ln())).norm() < 1e-12);
        }
    }

    #[test]
    fn robin_quadratic_and_linear_data_terms() {
        for (a, b) in [(1.0, 1.0), (2.0, -0.5), (-0.3, 2.0)] {
            let params = RobinParams::new(a, b).unwrap();
            let k2 = (a + 2.0 * b) / 2.0;
            let quad = Biv::from_terms([(c(k2), 2, 0), (c(k2), 0, 2)]);
            let k1 = (a + b) / 2.0;
            let lin = Biv::from_terms([(c(k1), 1, 0), (c(k1), 0, 1)]);
            for (r, t) in samples() {
                let d = robin_data_term(&quad, &params, r, t, &opts()).unwrap();
                let want = -(a + 2.0 * b) / (2.0 * b) * (r * r - 1.0 / (r * r)) * (2.0 * t).cos();
                assert!((d - c(want)).norm() < 1e-12);
                let d = robin_data_term(&lin, &params, r, t, &opts()).unwrap();
                let want = -(a + b) / b * (r - 1.0 / r) * t.cos();
                assert!((d - c(want)).norm() < 1e-12);
            }
        }
    }

    /// `φ_w = (a·w₁ + b·z·w₁′) + (a·w₂ + b·ζ·w₂′)` for log-free `w`.
    fn robin_data(w: &Pair, params: &RobinParams<f64>) -> Biv {
        let part = |e: &Expr| &e.scale(&c(params.a)) + &e.differentiate().shift(1).scale(&c(params.b));
        Biv::from_separated(&part(&w.part_z), &part(&w.part_zeta)).unwrap()
    }

    #[test]
    fn robin_pipeline_matches_direct_evaluation() {
        let w = Pair::from_real_part(&Expr::from_terms([
            LogLaurentTerm { coeff: Complex::new(0.3, -0.5), power: 2, logpow: 0 },
            LogLaurentTerm { coeff: c(0.8), power: 1, logpow: 0 },
            LogLaurentTerm { coeff: Complex::new(0.1, 0.2), power: -2, logpow: 0 },
            LogLaurentTerm { coeff: c(0.4), power: 0, logpow: 0 },
        ]));
        for (a, b) in [(1.0, 1.0), (2.0, -1.0), (0.5, 3.0)] {
            let params = RobinParams::new(a, b).unwrap();
            let phi = robin_data(&w, &params);
            for (r, t) in samples() {
                let res = reflect_robin_circle(&w, &phi, &params, &ray(r, t), &opts()).unwrap();
                let direct = w.eval_pair(&res.reflected).unwrap();
                assert!((res.value - direct).norm() < 1e-10, "a={a} b={b} r={r} t={t}");
            }
        }
    }

    #[test]
    fn robin_on_circle_is_identity() {
        let w = Pair::from_real_part(&Expr::log_power(0.5, 1));
        let params = RobinParams::new(1.0, 1.0).unwrap();
        let p = ray(1.0, 0.3);
        let res = reflect_robin_circle(&w, &Biv::constant(c(1.0)), &params, &p, &opts()).unwrap();
        assert_eq!(res.correction, c(0.0));
        assert!((res.value - w.eval_pair(&p).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn robin_log_solution_pipeline() {
        // w = ln r has φ_w = a ln r + b, i.e. a·w + b on the circle: data b.
        let w = Pair::from_real_part(&Expr::log_power(1.0, 1));
        for (a, b) in [(1.0, 1.0), (2.0, -1.0)] {
            let params = RobinParams::new(a, b).unwrap();
            for (r, t) in [(0.6, 0.4), (1.4, -1.0)] {
                let res =
                    reflect_robin_circle(&w, &Biv::constant(c(b)), &params, &ray(r, t), &opts()).unwrap();
                let direct = w.eval_pair(&res.reflected).unwrap();
                assert!((res.value - direct).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn schwarz_reduces_to_circle() {
        let phi = &Biv::from_terms([(c(1.0), 2, 0), (c(1.0), 0, 2), (c(0.3), 0, 0)])
            + &Biv::unit_circle_defining().scale(&c(2.0));
        let v = Pair::from_real_part(&Expr::monomial(c(0.5), 2, 0));
        let cfg = QuadratureConfig::default();
        for j in 0..20 {
            let r = 0.6 + 0.35 * j as f64 / 19.0;
            let t = -2.5 + 5.0 * j as f64 / 19.0;
            let p = ray(r, t);
            let exact = reflect_neumann_circle(&v, &phi, &p, &opts()).unwrap();
            let num = reflect_neumann_schwarz(&v, &phi, &SchwarzMap::UnitCircle, &p, &cfg).unwrap();
            assert!((exact.value - num.value).norm() < 1e-9, "r={r} t={t}");
            assert!(exact.reflected.distance(&num.reflected) < 1e-14);
        }
    }

    #[test]
    fn schwarz_zero_data_and_fixed_point() {
        let v = Pair::from_real_part(&Expr::monomial(c(1.0), 1, 0));
        let m = SchwarzMap::circle(c(1.0), 2.0).unwrap();
        let cfg = QuadratureConfig::default();
        let p = BiPoint::real_slice(0.3, 0.4);
        let res = reflect_neumann_schwarz(&v, &Biv::zero(), &m, &p, &cfg).unwrap();
        assert_eq!(res.value, v.eval_pair(&p).unwrap());
        let on = BiPoint::real_slice(1.0, 2.0);
        let res = reflect_neumann_schwarz(&v, &Biv::constant(c(1.0)), &m, &on, &cfg).unwrap();
        assert!(res.correction.norm() < 1e-11);
    }

    #[test]
    fn schwarz_radius_two_constant_data() {
        // v = 2C ln r solves ∂v/∂n = C on |z| = 2 (normal derivative 2C/r).
        let cst = 0.9;
        let m = SchwarzMap::circle(c(0.0), 2.0).unwrap();
        let cfg = QuadratureConfig::default();
        let u = Pair::constant(cst);
        let norm = BasePointNormalization { z0: c(2.0), value_at_base: 0.0 };
        let field = neumann_from_dirichlet_schwarz(&u, m, &norm, &cfg).unwrap();
        for (r, t) in [(1.2, 0.3), (1.8, -1.1), (2.6, 2.0)] {
            let p = ray(r, t);
            let res = reflect_neumann_schwarz(&field, &Biv::constant(c(cst)), &m, &p, &cfg).unwrap();
            assert!((res.correction - c(-4.0 * cst * (r / 2.0).ln())).norm() < 1e-9);
            let direct = field.eval(&res.reflected).unwrap();
            assert!((res.value - direct).norm() < 1e-8);
        }
    }

    #[test]
    fn result_serializes_with_formula_tag() {
        let res = reflect_neumann_circle(&Pair::zero(), &Biv::constant(c(1.0)), &ray(1.0, 0.0), &opts())
            .unwrap();
        let json = serde_json::to_string(&res).unwrap();
        assert_eq!(
            json,
            r#"{"formula":"neumann_circle","point":{"z":{"re":1.0,"im":0.0},"zeta":{"re":1.0,"im":-0.0}},"reflected":{"z":{"re":1.0,"im":0.0},"zeta":{"re":1.0,"im":-0.0}},"value":{"re":0.0,"im":0.0},"correction":{"re":0.0,"im":0.0}}"#
        );
        let back: ReflectionResult<f64> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, res);
    }
}
