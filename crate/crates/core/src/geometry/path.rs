use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::LogLaurentExpr;
use crate::error::{Error, Result};
use crate::scalar::RealScalar;

/// Geometry of an integration contour, parameterized over `t ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(serialize = "T: Serialize + Clone + Default"))]
#[serde(bound(deserialize = "T: Deserialize<'de> + Default"))]
pub enum PathKind<T> {
    Segment {
        #[serde(with = "crate::wire::complex")]
        start: Complex<T>,
        #[serde(with = "crate::wire::complex")]
        end: Complex<T>,
    },
    /// `ρ e^{iθ}` for `ρ` running from `r_from` to `r_to`.
    RadialRay { theta: T, r_from: T, r_to: T },
}

/// An integration path with a subdivision hint (number of equal panels).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Serialize + Clone + Default"))]
#[serde(bound(deserialize = "T: Deserialize<'de> + Default"))]
pub struct PathSpec<T> {
    #[serde(flatten)]
    pub kind: PathKind<T>,
    #[serde(default = "default_subdivision")]
    pub subdivision: u32,
}

fn default_subdivision() -> u32 {
    1
}

impl<T: RealScalar> PathSpec<T> {
    pub fn segment(start: Complex<T>, end: Complex<T>) -> Result<Self> {
        Self {
            kind: PathKind::Segment { start, end },
            subdivision: 1,
        }
        .validated()
    }

    pub fn radial(theta: T, r_from: T, r_to: T) -> Result<Self> {
        Self {
            kind: PathKind::RadialRay { theta, r_from, r_to },
            subdivision: 1,
        }
        .validated()
    }

    pub fn with_subdivision(mut self, n: u32) -> Self {
        self.subdivision = n.max(1);
        self
    }

    /// Checks distinct endpoints and positive radii.
    pub fn validated(self) -> Result<Self> {
        if self.subdivision == 0 {
            return Err(Error::InvalidParameter("subdivision must be positive".into()));
        }
        match self.kind {
            PathKind::Segment { start, end } => {
                if start == end {
                    return Err(Error::InvalidParameter("segment endpoints coincide".into()));
                }
            }
            PathKind::RadialRay { r_from, r_to, .. } => {
                if !(r_from > T::zero() && r_to > T::zero()) {
                    return Err(Error::InvalidParameter("radial path radii must be > 0".into()));
                }
                if r_from == r_to {
                    return Err(Error::InvalidParameter("radial path endpoints coincide".into()));
                }
            }
        }
        Ok(self)
    }

    /// Checks that an expression can be carried along the path: no passage
    /// through 0 when it has poles or logarithms, and no crossing of its
    /// branch cut when it has logarithms.
    pub fn check_clear_of(&self, expr: &LogLaurentExpr<T>) -> Result<()> {
        let singular_at_zero = expr.has_log() || expr.terms().any(|t| t.power < 0);
        if !singular_at_zero {
            return Ok(());
        }
        if let PathKind::Segment { start, end } = self.kind {
            let d = end - start;
            let t = (-(start.conj() * d).re / d.norm_sqr()).max(T::zero()).min(T::one());
            if (start + d * t).norm() <= T::epsilon() * (start.norm() + end.norm()) {
                return Err(Error::Domain("integration path passes through 0".into()));
            }
        }
        if !expr.has_log() {
            return Ok(());
        }
        let cut = expr.cut();
        let n = 256;
        let mut prev: Option<T> = None;
        for j in 0..=n {
            let z = self.point(T::from_i64(j) / T::from_i64(n));
            let arg = cut.normalize(z.im.atan2(z.re));
            if cut.distance(arg) < T::lit(1e-12) {
                return Err(Error::CutProximity {
                    angle: arg.as_f64(),
                    cut: cut.angle(),
                    margin: 1e-12,
                });
            }
            if let Some(p) = prev {
                if (arg - p).abs() > T::PI() {
                    return Err(Error::Domain("integration path crosses the branch cut".into()));
                }
            }
            prev = Some(arg);
        }
        Ok(())
    }

    pub fn point(&self, t: T) -> Complex<T> {
        match self.kind {
            PathKind::Segment { start, end } => start + (end - start) * t,
            PathKind::RadialRay { theta, r_from, r_to } => {
                Complex::from_polar(r_from + (r_to - r_from) * t, theta)
            }
        }
    }

    /// `dγ/dt`.
    pub fn tangent(&self, _t: T) -> Complex<T> {
        match self.kind {
            PathKind::Segment { start, end } => end - start,
            PathKind::RadialRay { theta, r_from, r_to } => {
                Complex::from_polar(r_to - r_from, theta)
            }
        }
    }

    pub fn start(&self) -> Complex<T> {
        self.point(T::zero())
    }

    pub fn end(&self) -> Complex<T> {
        self.point(T::one())
    }
}
