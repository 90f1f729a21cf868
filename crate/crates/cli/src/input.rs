use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use anyhow::Result;
use harmonia::algebra::BranchCut;
use harmonia::{Pair, Ray};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const CUT_ANGLE_VAR: &str = "HARMONIA_CUT_ANGLE";

/// Input the user got wrong: unreadable file, bad JSON, bad grid. Exit code 2.
#[derive(Debug)]
pub struct Malformed(pub String);

impl fmt::Display for Malformed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Malformed {}

pub fn malformed(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Malformed(msg.into()))
}

/// Parses `--input`: inline JSON if it starts with `{` or `[`, a file path otherwise.
pub fn load_json<T: DeserializeOwned>(input: &str) -> Result<T> {
    let trimmed = input.trim_start();
    let (text, origin) = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        (input.to_owned(), "inline input".to_owned())
    } else {
        let text = std::fs::read_to_string(Path::new(input))
            .map_err(|e| malformed(format!("cannot read {input}: {e}")))?;
        (text, input.to_owned())
    };
    parse_json(&text, &origin)
}

pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| malformed(format!("{origin}: {e}")))
}

/// Branch cut from `HARMONIA_CUT_ANGLE`, if set.
pub fn cut_override() -> Result<Option<BranchCut>> {
    match std::env::var(CUT_ANGLE_VAR) {
        Ok(s) => {
            let angle = parse_angle(&s)
                .ok_or_else(|| malformed(format!("{CUT_ANGLE_VAR}={s:?} is not an angle")))?;
            Ok(Some(BranchCut::new(angle)))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(malformed(format!("{CUT_ANGLE_VAR}: {e}"))),
    }
}

pub fn apply_cut(pair: Pair, cut: Option<BranchCut>) -> Pair {
    match cut {
        Some(c) => pair.with_cut(c),
        None => pair,
    }
}

/// A number, optionally followed by `pi` (`-pi`, `0.5pi`, `2pi`).
pub fn parse_angle(s: &str) -> Option<f64> {
    let s = s.trim();
    let v = match s.strip_suffix("pi") {
        Some("") => PI,
        Some("-") => -PI,
        Some(k) => k.parse::<f64>().ok()? * PI,
        None => s.parse().ok()?,
    };
    v.is_finite().then_some(v)
}

/// Polar sampling grid, inclusive at both ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub theta_min: f64,
    pub theta_max: f64,
    pub n_theta: usize,
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        if self.n_r == 0 || self.n_theta == 0 {
            return Err(malformed("grid is empty"));
        }
        if self.n_r < 2 || self.n_theta < 2 {
            return Err(malformed("grid needs at least 2 samples in r and in theta"));
        }
        let all = [self.r_min, self.r_max, self.theta_min, self.theta_max];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(malformed("grid bounds must be finite"));
        }
        if self.r_min <= 0.0 {
            return Err(malformed(format!("r_min = {} must be positive", self.r_min)));
        }
        if self.r_max < self.r_min || self.theta_max < self.theta_min {
            return Err(malformed("grid bounds are reversed"));
        }
        Ok(())
    }

    /// Points in row-major order: `θ` varies fastest.
    pub fn points(&self) -> Vec<Ray> {
        let step = |lo: f64, hi: f64, n: usize, i: usize| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        };
        let mut out = Vec::with_capacity(self.n_r * self.n_theta);
        for i in 0..self.n_r {
            let r = step(self.r_min, self.r_max, self.n_r, i);
            for j in 0..self.n_theta {
                out.push(Ray::new(r, step(self.theta_min, self.theta_max, self.n_theta, j)));
            }
        }
        out
    }
}

impl FromStr for Grid {
    type Err = String;

    /// `rmin:rmax:nr:tmin:tmax:nt`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 6 {
            return Err(format!("expected rmin:rmax:nr:tmin:tmax:nt, got {s:?}"));
        }
        let num = |i: usize| {
            parts[i]
                .trim()
                .parse::<f64>()
                .map_err(|_| format!("{:?} is not a number", parts[i]))
        };
        let count = |i: usize| {
            parts[i]
                .trim()
                .parse::<usize>()
                .map_err(|_| format!("{:?} is not a sample count", parts[i]))
        };
        let angle = |i: usize| parse_angle(parts[i]).ok_or_else(|| format!("{:?} is not an angle", parts[i]));
        Ok(Grid {
            r_min: num(0)?,
            r_max: num(1)?,
            n_r: count(2)?,
            theta_min: angle(3)?,
            theta_max: angle(4)?,
            n_theta: count(5)?,
        })
    }
}
