use num_complex::Complex;

use super::{PathSpec, SchwarzCurve};
use crate::error::{Error, Result};
use crate::scalar::{is_finite, RealScalar};

/// Samples per path panel used to track the branch of `√S′`.
const SAMPLES_PER_PANEL: usize = 64;

/// `|S′|` below this (relative to the reference value) counts as a branch point.
const BRANCH_POINT_RATIO: f64 = 1e-10;

/// A branch of `√S′` continued along a parameterized curve `γ(t)`, `t ∈ [0, 1]`.
///
/// The branch is anchored at the projection of `γ(0)` on the carrier curve,
/// where its sign is fixed by requiring `i/√S′` to be the outward normal,
/// and then followed by nearest-sign continuation.
#[derive(Clone, Debug)]
pub struct SqrtBranch<T> {
    samples: Vec<Complex<T>>,
}

impl<T: RealScalar> SqrtBranch<T> {
    pub fn along<C, G>(curve: &C, gamma: G, panels: u32) -> Result<Self>
    where
        C: SchwarzCurve<T> + ?Sized,
        G: Fn(T) -> Complex<T>,
    {
        let start = gamma(T::zero());
        let anchor = curve.project(start)?;
        let mut prev = curve.sqrt_derivative_on_curve(anchor)?;
        let floor = prev.norm() * prev.norm() * T::lit(BRANCH_POINT_RATIO);

        let step = |z: Complex<T>, prev: Complex<T>| -> Result<Complex<T>> {
            let d = curve.schwarz_derivative(z)?;
            if !is_finite(&d) || d.norm() <= floor {
                return Err(Error::BranchPointOnPath(format!("{z}")));
            }
            let s = d.sqrt();
            Ok(if (s - prev).norm() <= (s + prev).norm() { s } else { -s })
        };

        let n = SAMPLES_PER_PANEL * panels.max(1) as usize;
        // Lead-in from the anchor to the start of the path.
        for j in 1..=n {
            let t = T::from_i64(j as i64) / T::from_i64(n as i64);
            prev = step(anchor + (start - anchor) * t, prev)?;
        }
        let mut samples = Vec::with_capacity(n + 1);
        samples.push(prev);
        for j in 1..=n {
            let t = T::from_i64(j as i64) / T::from_i64(n as i64);
            prev = step(gamma(t), prev)?;
            samples.push(prev);
        }
        Ok(Self { samples })
    }

    /// `√S′(z)` for `z = γ(t)` on the tracked branch.
    pub fn value<C>(&self, curve: &C, t: T, z: Complex<T>) -> Result<Complex<T>>
    where
        C: SchwarzCurve<T> + ?Sized,
    {
        let n = self.samples.len() - 1;
        let idx = (t.max(T::zero()).min(T::one()) * T::from_i64(n as i64))
            .round()
            .to_usize()
            .unwrap_or(0)
            .min(n);
        let reference = self.samples[idx];
        let s = curve.schwarz_derivative(z)?.sqrt();
        Ok(if (s - reference).norm() <= (s + reference).norm() {
            s
        } else {
            -s
        })
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }
}

/// Continuous branch of `√S′` along `path`.
pub fn sqrt_schwarz_derivative<T, C>(curve: &C, path: &PathSpec<T>) -> Result<SqrtBranch<T>>
where
    T: RealScalar,
    C: SchwarzCurve<T> + ?Sized,
{
    SqrtBranch::along(curve, |t| path.point(t), path.subdivision)
}

/// `√S̃′(ξ) = 1/√S′(S̃(ξ))` along the image `S̃(γ(t))` of a `ζ`-path.
pub fn sqrt_inverse_derivative_branch<T, C>(
    curve: &C,
    path: &PathSpec<T>,
) -> Result<SqrtBranch<T>>
where
    T: RealScalar,
    C: SchwarzCurve<T> + ?Sized,
{
    // Reject poles of S̃ on the path up front.
    for j in 0..=8 {
        let t = T::from_i64(j) / T::from_i64(8);
        curve.inverse_schwarz(path.point(t))?;
    }
    SqrtBranch::along(
        curve,
        |t| {
            curve
                .inverse_schwarz(path.point(t))
                .unwrap_or_else(|_| Complex::new(T::infinity(), T::zero()))
        },
        path.subdivision,
    )
}
