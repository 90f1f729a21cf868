use anyhow::Result;
use harmonia::algebra::{BranchCut, DEFAULT_CUT_MARGIN};
use harmonia::geometry::reflect_bipoint;
use harmonia::harmonic::Field;
use harmonia::numerics::QuadratureConfig;
use harmonia::operators::{
    dirichlet_from_robin_pair, neumann_from_dirichlet_disk, neumann_from_dirichlet_pair,
    neumann_from_dirichlet_schwarz, neumann_from_robin_pair,
};
use harmonia::reflection::{
    reflect_dirichlet_study, reflect_neumann_circle, reflect_robin_circle, CircleReflectionOptions,
};
use harmonia::{Bivariate, Complex64, Map, Normalization, Pair, Ray, Robin};
use serde::{Deserialize, Serialize};

use crate::input::{apply_cut, malformed, Grid};
use crate::output::{csv_string, json_string};
use crate::Format;

/// Values whose imaginary part exceeds this (relative) are reported as null.
const REALITY_TOLERANCE: f64 = 1e-9;

fn unit_circle() -> Map {
    Map::UnitCircle
}

/// What to sample. Continuations are evaluated at the grid point from the
/// solution's values at the grid point's mirror image.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Pair {
        pair: Pair,
    },
    DirichletToNeumann {
        pair: Pair,
        #[serde(default)]
        base: Normalization,
    },
    RobinToNeumann {
        pair: Pair,
        robin: Robin,
        #[serde(default)]
        base: Normalization,
    },
    RobinToDirichlet {
        pair: Pair,
        robin: Robin,
    },
    DiskNeumann {
        data: Bivariate,
    },
    SchwarzNeumann {
        pair: Pair,
        #[serde(default = "unit_circle")]
        map: Map,
        #[serde(default)]
        base: Normalization,
    },
    DirichletContinuation {
        solution: Pair,
        data: Bivariate,
        #[serde(default = "unit_circle")]
        map: Map,
    },
    NeumannContinuation {
        solution: Pair,
        data: Bivariate,
    },
    RobinContinuation {
        solution: Pair,
        data: Bivariate,
        robin: Robin,
    },
}

impl FieldSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Pair { .. } => "pair",
            Self::DirichletToNeumann { .. } => "dirichlet_to_neumann",
            Self::RobinToNeumann { .. } => "robin_to_neumann",
            Self::RobinToDirichlet { .. } => "robin_to_dirichlet",
            Self::DiskNeumann { .. } => "disk_neumann",
            Self::SchwarzNeumann { .. } => "schwarz_neumann",
            Self::DirichletContinuation { .. } => "dirichlet_continuation",
            Self::NeumannContinuation { .. } => "neumann_continuation",
            Self::RobinContinuation { .. } => "robin_continuation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldRow {
    pub r: f64,
    pub theta: f64,
    pub x: f64,
    pub y: f64,
    pub value: Option<f64>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldTable {
    pub kind: &'static str,
    pub grid: Grid,
    pub rows: Vec<FieldRow>,
}

type Sampler = Box<dyn Fn(&Ray) -> harmonia::Result<Complex64>>;

fn log_cut(p: &Pair) -> Option<BranchCut> {
    (p.part_z.has_log() || p.part_zeta.has_log()).then(|| p.cut())
}

/// Builds the evaluator, plus the cut to keep rows away from if the field has logarithms.
fn sampler(spec: &FieldSpec, cut: Option<BranchCut>) -> harmonia::Result<(Sampler, Option<BranchCut>)> {
    let quad = QuadratureConfig::default();
    let circle = CircleReflectionOptions::default();
    Ok(match spec {
        FieldSpec::Pair { pair } => {
            let u = apply_cut(pair.clone(), cut);
            let guard = log_cut(&u);
            (Box::new(move |p| u.eval_pair(&p.bipoint())), guard)
        }
        FieldSpec::DirichletToNeumann { pair, base } => {
            let v = neumann_from_dirichlet_pair(&apply_cut(pair.clone(), cut), base)?;
            let guard = log_cut(&v);
            (Box::new(move |p| v.eval_pair(&p.bipoint())), guard)
        }
        FieldSpec::RobinToNeumann { pair, robin, base } => {
            let v = neumann_from_robin_pair(&apply_cut(pair.clone(), cut), robin, base)?;
            let guard = log_cut(&v);
            (Box::new(move |p| v.eval_pair(&p.bipoint())), guard)
        }
        FieldSpec::RobinToDirichlet { pair, robin } => {
            robin.validate()?;
            let u = dirichlet_from_robin_pair(&apply_cut(pair.clone(), cut), robin);
            let guard = log_cut(&u);
            (Box::new(move |p| u.eval_pair(&p.bipoint())), guard)
        }
        FieldSpec::DiskNeumann { data } => {
            let phi = data.clone();
            let f = move |p: &Ray| {
                let v = neumann_from_dirichlet_disk(&phi, p.bipoint().z, &quad)?;
                Ok(Complex64::new(v, 0.0))
            };
            (Box::new(f), None)
        }
        FieldSpec::SchwarzNeumann { pair, map, base } => {
            map.validate()?;
            let u = apply_cut(pair.clone(), cut);
            let guard = log_cut(&u);
            let v = neumann_from_dirichlet_schwarz(&u, *map, base, &quad)?;
            (Box::new(move |p| v.value(&p.bipoint())), guard)
        }
        FieldSpec::DirichletContinuation { solution, data, map } => {
            map.validate()?;
            let (u, phi, map) = (apply_cut(solution.clone(), cut), data.clone(), *map);
            let guard = log_cut(&u);
            let f = move |q: &Ray| {
                let p = reflect_bipoint(&map, &q.bipoint())?;
                Ok(reflect_dirichlet_study(&u, &phi, &map, &p)?.value)
            };
            (Box::new(f), guard)
        }
        FieldSpec::NeumannContinuation { solution, data } => {
            let (v, phi) = (apply_cut(solution.clone(), cut), data.clone());
            let guard = log_cut(&v);
            let f = move |q: &Ray| Ok(reflect_neumann_circle(&v, &phi, &q.inverted().bipoint(), &circle)?.value);
            (Box::new(f), guard)
        }
        FieldSpec::RobinContinuation { solution, data, robin } => {
            robin.validate()?;
            let (w, phi, params) = (apply_cut(solution.clone(), cut), data.clone(), *robin);
            let guard = log_cut(&w);
            let f = move |q: &Ray| {
                Ok(reflect_robin_circle(&w, &phi, &params, &q.inverted().bipoint(), &circle)?.value)
            };
            (Box::new(f), guard)
        }
    })
}

fn row(p: &Ray, f: &Sampler, guard: Option<BranchCut>) -> FieldRow {
    let (x, y) = p.xy();
    let value = guard
        .map_or(Ok(()), |c| c.check_margin(p.theta, DEFAULT_CUT_MARGIN))
        .and_then(|()| f(p));
    let (value, reason) = match value {
        Ok(v) if !v.re.is_finite() || !v.im.is_finite() => (None, Some("non-finite value".to_owned())),
        Ok(v) if v.im.abs() > REALITY_TOLERANCE * v.re.abs().max(1.0) => {
            (None, Some(format!("value has imaginary part {:e}", v.im)))
        }
        Ok(v) => (Some(v.re), None),
        Err(e) => (None, Some(e.to_string())),
    };
    FieldRow {
        r: p.r,
        theta: p.theta,
        x,
        y,
        value,
        reason,
    }
}

pub fn run(spec: &FieldSpec, grid: &Grid, cut: Option<BranchCut>) -> Result<FieldTable> {
    grid.validate()?;
    let (f, guard) = sampler(spec, cut).map_err(|e| malformed(format!("{}: {e}", spec.tag())))?;
    let rows = grid.points().iter().map(|p| row(p, &f, guard)).collect();
    Ok(FieldTable {
        kind: spec.tag(),
        grid: *grid,
        rows,
    })
}

pub fn render(table: &FieldTable, format: Format) -> Result<String> {
    match format {
        Format::Json => json_string(table),
        Format::Csv => csv_string(&table.rows),
        Format::Table => Err(malformed("field supports --format json or csv")),
    }
}
