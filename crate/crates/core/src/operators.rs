//! Boundary-condition conversion operators on the unit circle and across
//! Schwarz arcs.
//!
//! All pair operators work on the exact representation and return a new
//! [`HarmonicPair`]; the additive constant is fixed by a
//! [`BasePointNormalization`].

use num_complex::Complex;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::algebra::{BivariateLaurentExpr, LogLaurentExpr};
use crate::error::{Error, Result};
use crate::geometry::{sqrt_inverse_derivative_branch, sqrt_schwarz_derivative, BiPoint, PathSpec, SchwarzCurve};
use crate::harmonic::{Field, HarmonicPair, RobinParams};
use crate::numerics::{adaptive_simpson, integrate_path_param, QuadratureConfig, TrigPolynomial, MEAN_TOLERANCE};
use crate::scalar::{real, RealScalar, Scalar};

/// Relative size of `a + b·k` below which a nonzero gap counts as near-resonant.
const RESONANCE_GAP: f64 = 1e-12;

/// Base point `z₀` on the curve and the value `v(z₀, ζ₀)` pinned there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize + Clone + Default"))]
#[serde(bound(deserialize = "T: Deserialize<'de> + Default"))]
pub struct BasePointNormalization<T> {
    #[serde(with = "crate::wire::complex")]
    pub z0: Complex<T>,
    pub value_at_base: T,
}

impl<T: RealScalar> Default for BasePointNormalization<T> {
    fn default() -> Self {
        Self {
            z0: Complex::new(T::one(), T::zero()),
            value_at_base: T::zero(),
        }
    }
}

impl<T: RealScalar> BasePointNormalization<T> {
    /// Base point on the unit circle at angle `theta0`.
    pub fn at_angle(theta0: T, value_at_base: T) -> Self {
        Self {
            z0: Complex::from_polar(T::one(), theta0),
            value_at_base,
        }
    }

    /// `(z₀, conj z₀)`.
    pub fn base_point(&self) -> BiPoint<T> {
        BiPoint::new(self.z0, self.z0.conj())
    }

    fn check_unit_circle(&self) -> Result<()> {
        if (self.z0.norm() - T::one()).abs() > T::lit(1e-12) {
            return Err(Error::InvalidParameter(format!(
                "base point {} is not on the unit circle",
                self.z0
            )));
        }
        Ok(())
    }

    /// Shifts `v` by a constant so that `v(z₀, ζ₀) = value_at_base`.
    fn pin(&self, v: HarmonicPair<T>) -> Result<HarmonicPair<T>> {
        let at_base = v.eval_pair(&self.base_point())?;
        Ok(v.add_constant(real(self.value_at_base) - at_base))
    }
}

/// Neumann partner of a Dirichlet solution on the unit circle:
/// `v = v(z₀,ζ₀) − ∫_z^{z₀} u₁(τ)/τ dτ − ∫_ζ^{ζ₀} u₂(ξ)/ξ dξ`.
///
/// Each part is the exact primitive of `u_j/τ`, shifted so that
/// `v(z₀, ζ₀)` has the requested value. On `|z| = 1`, `∂v/∂r = u`.
pub fn neumann_from_dirichlet_pair<T: RealScalar>(
    u: &HarmonicPair<T>,
    norm: &BasePointNormalization<T>,
) -> Result<HarmonicPair<T>> {
    norm.check_unit_circle()?;
    let v = HarmonicPair::new(
        u.part_z.antiderivative_over_arg(),
        u.part_zeta.antiderivative_over_arg(),
    );
    norm.pin(v)
}

/// Robin to Neumann:
/// `v = v(z₀,ζ₀) + (b/2)(w − w(z₀,ζ₀)) − (a/2)∫_z^{z₀} w₁/τ − (a/2)∫_ζ^{ζ₀} w₂/ξ`,
/// so that `∂v/∂n = φ_w/2` on the unit circle.
pub fn neumann_from_robin_pair<T: RealScalar>(
    w: &HarmonicPair<T>,
    params: &RobinParams<T>,
    norm: &BasePointNormalization<T>,
) -> Result<HarmonicPair<T>> {
    params.validate()?;
    norm.check_unit_circle()?;
    let half_a = real(params.a / T::lit(2.0));
    let half_b = real(params.b / T::lit(2.0));
    let part = |e: &LogLaurentExpr<T>| &e.scale(&half_b) + &e.antiderivative_over_arg().scale(&half_a);
    norm.pin(HarmonicPair::new(part(&w.part_z), part(&w.part_zeta)))
}

/// Dirichlet solution whose trace is half the Robin data of `w`:
/// `u = (a/2)w + (b r/2)∂w/∂r`, i.e. `u₁ = (a/2)w₁ + (b/2)z w₁′`.
pub fn dirichlet_from_robin_pair<T: Scalar>(
    w: &HarmonicPair<T>,
    params: &RobinParams<T>,
) -> HarmonicPair<T> {
    let two = T::from_i64(2);
    let half_a = real(params.a.clone() / two.clone());
    let half_b = real(params.b.clone() / two);
    let part = |e: &LogLaurentExpr<T>| {
        &e.scale(&half_a) + &e.differentiate().shift(1).scale(&half_b)
    };
    HarmonicPair::new(part(&w.part_z), part(&w.part_zeta))
}

/// Particular solution `h` of `a·h + b·z·h′ = z·f′ + g`, without the
/// homogeneous `z^{−a/b}` component.
///
/// A right-hand side term `c·z^k (log z)^m` is balanced by `c/(a+bk)·z^k (log z)^m`
/// when `a + bk ≠ 0`, which leaves a `(log z)^{m−1}` remainder that is
/// handled next. On resonance (`a + bk = 0`) the term is matched by
/// `c/(b(m+1))·z^k (log z)^{m+1}`.
pub fn solve_robin_analytic<T: Scalar + Signed>(
    f: &LogLaurentExpr<T>,
    g: &LogLaurentExpr<T>,
    params: &RobinParams<T>,
) -> Result<LogLaurentExpr<T>> {
    if params.b.is_zero() {
        return Err(Error::InvalidParameter("Robin coefficient b must be nonzero".into()));
    }
    let rhs = &f.differentiate().shift(1) + g;
    solve_robin_rhs(&rhs, params)
}

/// Solves `a·h + b·z·h′ = rhs` termwise.
pub fn solve_robin_rhs<T: Scalar + Signed>(
    rhs: &LogLaurentExpr<T>,
    params: &RobinParams<T>,
) -> Result<LogLaurentExpr<T>> {
    let (a, b) = (params.a.clone(), params.b.clone());
    let mut powers: Vec<i32> = rhs.terms().map(|t| t.power).collect();
    powers.dedup();
    let mut h = LogLaurentExpr::zero().with_cut(rhs.cut());
    for k in powers {
        let gap = a.clone() + b.clone() * T::from_i64(k as i64);
        let top = rhs.terms().filter(|t| t.power == k).map(|t| t.logpow).max().unwrap_or(0);
        // Remaining right-hand side at power k, indexed by log power.
        let mut rest: Vec<Complex<T>> = vec![Complex::new(T::zero(), T::zero()); top as usize + 1];
        for t in rhs.terms().filter(|t| t.power == k) {
            rest[t.logpow as usize] = t.coeff;
        }
        if gap.is_zero() {
            for (m, c) in rest.into_iter().enumerate() {
                let denom = b.clone() * T::from_i64(m as i64 + 1);
                h.add_term(c / real(denom), k, m as u32 + 1);
            }
            continue;
        }
        let scale = a.abs().approx_f64() + b.abs().approx_f64() * (k as f64).abs();
        if gap.abs().approx_f64() <= RESONANCE_GAP * scale {
            return Err(Error::UnsupportedResonance {
                power: k,
                logpow: top,
                gap: gap.approx_f64(),
            });
        }
        for m in (0..=top as usize).rev() {
            let hc = rest[m].clone() / real(gap.clone());
            if m > 0 {
                let carry = hc.clone() * real(b.clone() * T::from_i64(m as i64));
                rest[m - 1] = rest[m - 1].clone() - carry;
            }
            h.add_term(hc, k, m as u32);
        }
    }
    Ok(h)
}

/// `a·h + b·z·h′`, the left-hand side of the Robin ODE.
pub fn robin_operator<T: Scalar>(h: &LogLaurentExpr<T>, params: &RobinParams<T>) -> LogLaurentExpr<T> {
    &h.scale(&real(params.a.clone())) + &h.differentiate().shift(1).scale(&real(params.b.clone()))
}

/// Disk Neumann solution `V(z) = ∫₀¹ U(ρz)/ρ dρ`, `V(0) = 0`, where `U` is
/// the Dirichlet solution with data `φ` built from its Fourier series.
pub fn neumann_from_dirichlet_disk<T: RealScalar>(
    phi: &BivariateLaurentExpr<T>,
    z: Complex<T>,
    cfg: &QuadratureConfig,
) -> Result<T> {
    let mut trig = TrigPolynomial::from_boundary_data(phi)?;
    if trig.mean().abs() > T::lit(MEAN_TOLERANCE) {
        return Err(Error::NonzeroMean {
            mean: trig.mean().as_f64(),
        });
    }
    trig.cos[0] = T::zero();
    let r = z.norm();
    if r > T::one() + T::lit(1e-12) {
        return Err(Error::Domain(format!("|z| = {r} is outside the closed unit disk")));
    }
    if r.is_zero() {
        return Ok(T::zero());
    }
    let theta = z.im.atan2(z.re);
    // U(ρz)/ρ → r(a₁ cos θ + b₁ sin θ) as ρ → 0.
    let at_zero = if trig.degree() >= 1 {
        r * (trig.cos[1] * theta.cos() + trig.sin[1] * theta.sin())
    } else {
        T::zero()
    };
    let v = adaptive_simpson(
        |rho: T| {
            let val = if rho.is_zero() {
                at_zero
            } else {
                trig.dirichlet_extension(rho * r, theta) / rho
            };
            Ok(real(val))
        },
        T::zero(),
        T::one(),
        cfg,
    )?;
    Ok(v.re)
}

/// Neumann partner of a Dirichlet solution across a general Schwarz arc,
/// evaluated pointwise by path quadrature:
/// `v = v(z₀,ζ₀) + i∫_z^{z₀} u₁(τ)√S′(τ) dτ − i∫_ζ^{ζ₀} u₂(ξ)√S̃′(ξ) dξ`.
#[derive(Clone, Debug)]
pub struct SchwarzNeumannField<T, C> {
    u: HarmonicPair<T>,
    curve: C,
    z0: Complex<T>,
    zeta0: Complex<T>,
    value_at_base: T,
    cfg: QuadratureConfig,
}

/// Builds the field evaluator; `norm.z0` must lie on the curve.
pub fn neumann_from_dirichlet_schwarz<T, C>(
    u: &HarmonicPair<T>,
    curve: C,
    norm: &BasePointNormalization<T>,
    cfg: &QuadratureConfig,
) -> Result<SchwarzNeumannField<T, C>>
where
    T: RealScalar,
    C: SchwarzCurve<T>,
{
    cfg.validate()?;
    let on_curve = curve.project(norm.z0)?;
    if (on_curve - norm.z0).norm() > T::lit(1e-10) {
        return Err(Error::InvalidParameter(format!(
            "base point {} is not on the curve",
            norm.z0
        )));
    }
    let zeta0 = curve.schwarz(norm.z0)?;
    Ok(SchwarzNeumannField {
        u: u.clone(),
        curve,
        z0: norm.z0,
        zeta0,
        value_at_base: norm.value_at_base,
        cfg: *cfg,
    })
}

impl<T: RealScalar, C: SchwarzCurve<T>> SchwarzNeumannField<T, C> {
    pub fn base_point(&self) -> BiPoint<T> {
        BiPoint::new(self.z0, self.zeta0)
    }

    /// `v(p)` along straight segments `p.z → z₀` and `p.zeta → ζ₀`.
    pub fn eval(&self, p: &BiPoint<T>) -> Result<Complex<T>> {
        let path_z = (p.z != self.z0).then(|| PathSpec::segment(p.z, self.z0)).transpose()?;
        let path_zeta = (p.zeta != self.zeta0)
            .then(|| PathSpec::segment(p.zeta, self.zeta0))
            .transpose()?;
        self.eval_paths(path_z.as_ref(), path_zeta.as_ref())
    }

    /// `v` at `(path_z.start, path_zeta.start)`; the paths must end at `z₀`
    /// and `ζ₀` respectively.
    pub fn eval_with_paths(&self, path_z: &PathSpec<T>, path_zeta: &PathSpec<T>) -> Result<Complex<T>> {
        let tol = T::lit(1e-12) * (T::one() + self.z0.norm() + self.zeta0.norm());
        if (path_z.end() - self.z0).norm() > tol || (path_zeta.end() - self.zeta0).norm() > tol {
            return Err(Error::InvalidParameter(
                "integration paths must end at the base point".into(),
            ));
        }
        self.eval_paths(Some(path_z), Some(path_zeta))
    }

    fn eval_paths(&self, path_z: Option<&PathSpec<T>>, path_zeta: Option<&PathSpec<T>>) -> Result<Complex<T>> {
        let i = Complex::<T>::i();
        let mut v = real(self.value_at_base);
        if let Some(path) = path_z {
            if !self.u.part_z.is_zero() {
                path.check_clear_of(&self.u.part_z)?;
                let branch = sqrt_schwarz_derivative(&self.curve, path)?;
                let integral = integrate_path_param(
                    |t, tau| Ok(self.u.part_z.eval(tau)? * branch.value(&self.curve, t, tau)?),
                    path,
                    &self.cfg,
                )?;
                v = v + i * integral;
            }
        }
        if let Some(path) = path_zeta {
            if !self.u.part_zeta.is_zero() {
                path.check_clear_of(&self.u.part_zeta)?;
                let branch = sqrt_inverse_derivative_branch(&self.curve, path)?;
                let integral = integrate_path_param(
                    |t, xi| {
                        let tau = self.curve.inverse_schwarz(xi)?;
                        let root = branch.value(&self.curve, t, tau)?;
                        Ok(self.u.part_zeta.eval(xi)? / root)
                    },
                    path,
                    &self.cfg,
                )?;
                v = v - i * integral;
            }
        }
        Ok(v)
    }
}

impl<T: RealScalar, C: SchwarzCurve<T>> Field<T> for SchwarzNeumannField<T, C> {
    fn value(&self, p: &BiPoint<T>) -> Result<Complex<T>> {
        self.eval(p)
    }
}
