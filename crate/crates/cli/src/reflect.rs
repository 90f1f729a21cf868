use anyhow::{Context, Result};
use clap::ValueEnum;
use harmonia::algebra::BranchCut;
use harmonia::numerics::QuadratureConfig;
use harmonia::reflection::{
    reflect_dirichlet_study, reflect_neumann_circle, reflect_neumann_schwarz, reflect_robin_circle,
    CircleReflectionOptions,
};
use harmonia::{Bivariate, Complex64, Map, Pair, Point, Ray, Reflection, Robin};
use serde::{Deserialize, Serialize};

use crate::input::{apply_cut, malformed, parse_angle};
use crate::output::{csv_string, json_string};
use crate::Format;

pub const DEFAULT_CHECK_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaArg {
    Dirichlet,
    Neumann,
    Robin,
    Schwarz,
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Polar { r: f64, theta: f64 },
    Cartesian { x: f64, y: f64 },
    Complexified(Point),
}

impl PointSpec {
    pub fn bipoint(&self) -> Point {
        match *self {
            Self::Polar { r, theta } => Ray::new(r, theta).bipoint(),
            Self::Cartesian { x, y } => Point::real_slice(x, y),
            Self::Complexified(p) => p,
        }
    }

    /// `r:theta`, with `theta` accepting `pi` multiples.
    pub fn parse_polar(s: &str) -> Result<Self> {
        let bad = || malformed(format!("--point expects r:theta, got {s:?}"));
        let (r, t) = s.split_once(':').ok_or_else(bad)?;
        let r: f64 = r.trim().parse().map_err(|_| bad())?;
        let theta = parse_angle(t).ok_or_else(bad)?;
        Ok(Self::Polar { r, theta })
    }
}

fn unit_circle() -> Map {
    Map::UnitCircle
}

#[derive(Clone, Debug, Deserialize)]
pub struct ReflectSpec {
    #[serde(default)]
    pub formula: Option<FormulaArg>,
    pub solution: Pair,
    #[serde(default)]
    pub data: Bivariate,
    #[serde(default)]
    pub robin: Option<Robin>,
    #[serde(default = "unit_circle")]
    pub map: Map,
    #[serde(default)]
    pub point: Option<PointSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DirectCheck {
    #[serde(with = "harmonia::wire::complex")]
    pub direct: Complex64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReflectOutput {
    #[serde(flatten)]
    pub result: Reflection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<DirectCheck>,
}

pub struct Request {
    pub formula: Option<FormulaArg>,
    pub point: Option<PointSpec>,
    pub check: bool,
    pub tolerance: Option<f64>,
    pub cut: Option<BranchCut>,
}

pub fn run(spec: &ReflectSpec, req: &Request) -> Result<ReflectOutput> {
    let formula = req
        .formula
        .or(spec.formula)
        .ok_or_else(|| malformed("no reflection formula: pass --formula or set \"formula\" in the input"))?;
    let p = req
        .point
        .or(spec.point)
        .ok_or_else(|| malformed("no point: pass --point or set \"point\" in the input"))?
        .bipoint();
    spec.map.validate().map_err(|e| malformed(e.to_string()))?;
    let u = apply_cut(spec.solution.clone(), req.cut);
    let circle = CircleReflectionOptions::default();
    let result = match formula {
        FormulaArg::Dirichlet => reflect_dirichlet_study(&u, &spec.data, &spec.map, &p),
        FormulaArg::Neumann => reflect_neumann_circle(&u, &spec.data, &p, &circle),
        FormulaArg::Robin => {
            let params = spec
                .robin
                .ok_or_else(|| malformed("--formula robin needs \"robin\": {\"a\": .., \"b\": ..}"))?;
            params.validate().map_err(|e| malformed(e.to_string()))?;
            reflect_robin_circle(&u, &spec.data, &params, &p, &circle)
        }
        FormulaArg::Schwarz => {
            reflect_neumann_schwarz(&u, &spec.data, &spec.map, &p, &QuadratureConfig::default())
        }
    }
    .context("reflection failed")?;
    let check = if req.check {
        let direct = u
            .eval_pair(&result.reflected)
            .context("evaluating the solution at the reflected point")?;
        let residual = (result.value - direct).norm();
        let tolerance = req.tolerance.unwrap_or(DEFAULT_CHECK_TOLERANCE);
        Some(DirectCheck {
            direct,
            residual,
            tolerance,
            pass: residual <= tolerance,
        })
    } else {
        None
    };
    Ok(ReflectOutput { result, check })
}

#[derive(Serialize)]
struct CsvRow {
    formula: &'static str,
    z_re: f64,
    z_im: f64,
    zeta_re: f64,
    zeta_im: f64,
    reflected_z_re: f64,
    reflected_z_im: f64,
    reflected_zeta_re: f64,
    reflected_zeta_im: f64,
    value_re: f64,
    value_im: f64,
    correction_re: f64,
    correction_im: f64,
    direct_re: Option<f64>,
    direct_im: Option<f64>,
    residual: Option<f64>,
}

pub fn render(out: &ReflectOutput, format: Format) -> Result<String> {
    let r = &out.result;
    match format {
        Format::Json => json_string(out),
        Format::Csv => csv_string([CsvRow {
            formula: r.formula.tag(),
            z_re: r.point.z.re,
            z_im: r.point.z.im,
            zeta_re: r.point.zeta.re,
            zeta_im: r.point.zeta.im,
            reflected_z_re: r.reflected.z.re,
            reflected_z_im: r.reflected.z.im,
            reflected_zeta_re: r.reflected.zeta.re,
            reflected_zeta_im: r.reflected.zeta.im,
            value_re: r.value.re,
            value_im: r.value.im,
            correction_re: r.correction.re,
            correction_im: r.correction.im,
            direct_re: out.check.map(|c| c.direct.re),
            direct_im: out.check.map(|c| c.direct.im),
            residual: out.check.map(|c| c.residual),
        }]),
        Format::Table => Err(malformed("reflect supports --format json or csv")),
    }
}
