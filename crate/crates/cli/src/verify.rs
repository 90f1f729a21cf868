use std::fmt::Write as _;

use anyhow::Result;
use harmonia::algebra::BranchCut;
use harmonia::numerics::{run_verification_suite, CheckId, CheckRecord};
use serde::Serialize;

use crate::examples::{self, ExampleRow, ExampleSet};
use crate::input::malformed;
use crate::output::{csv_string, json_string};
use crate::Format;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
    pub examples: Vec<ExampleRow>,
    pub discrepancies: Vec<ExampleRow>,
}

/// Parses a comma-separated list of check names; empty means all checks.
pub fn parse_selection(names: Option<&str>) -> Result<Vec<CheckId>> {
    let Some(names) = names else {
        return Ok(CheckId::ALL.to_vec());
    };
    names
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| CheckId::from_name(s).ok_or_else(|| malformed(format!("unknown check {s:?}"))))
        .collect()
}

pub fn run(
    selection: &[CheckId],
    seed: u64,
    set: &ExampleSet,
    tol_override: Option<f64>,
    cut: Option<BranchCut>,
) -> Result<VerifyReport> {
    let mut checks = run_verification_suite(selection, seed).checks;
    if let Some(tol) = tol_override {
        for c in &mut checks {
            c.tolerance = tol;
            c.pass = c.error.is_none() && c.max_residual <= tol;
        }
    }
    let golden = examples::run(set, tol_override, cut)?;
    let pass = golden.pass && checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        seed,
        pass,
        checks,
        examples: golden.examples,
        discrepancies: golden.discrepancies,
    })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    kind: &'static str,
    name: &'a str,
    category: &'a str,
    instances: usize,
    max_residual: Option<f64>,
    tolerance: f64,
    pass: bool,
    error: &'a str,
}

pub fn render(report: &VerifyReport, format: Format) -> Result<String> {
    let finite = |x: f64| x.is_finite().then_some(x);
    match format {
        Format::Json => json_string(report),
        Format::Csv => {
            let checks = report.checks.iter().map(|c| CsvRow {
                kind: "check",
                name: &c.name,
                category: &c.category,
                instances: c.instances,
                max_residual: finite(c.max_residual),
                tolerance: c.tolerance,
                pass: c.pass,
                error: c.error.as_deref().unwrap_or(""),
            });
            let golden = report
                .examples
                .iter()
                .map(|r| ("example", r))
                .chain(report.discrepancies.iter().map(|r| ("discrepancy", r)))
                .map(|(kind, r)| CsvRow {
                    kind,
                    name: &r.name,
                    category: r.operation,
                    instances: r.points,
                    max_residual: r.max_residual,
                    tolerance: r.tolerance,
                    pass: r.pass,
                    error: r.error.as_deref().unwrap_or(""),
                });
            csv_string(checks.chain(golden))
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "seed {}", report.seed);
            let _ = writeln!(
                s,
                "{:<30} {:<11} {:>9} {:>12} {:>10}  status",
                "check", "category", "instances", "residual", "tolerance"
            );
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{:<30} {:<11} {:>9} {:>12.3e} {:>10.1e}  {}",
                    c.name,
                    c.category,
                    c.instances,
                    c.max_residual,
                    c.tolerance,
                    if c.pass { "PASS" } else { "FAIL" }
                );
                if let Some(e) = &c.error {
                    let _ = writeln!(s, "    error {e}");
                }
            }
            for r in report.examples.iter().chain(&report.discrepancies) {
                let res = r.max_residual.map_or("-".into(), |x| format!("{x:.3e}"));
                let _ = writeln!(
                    s,
                    "{:<30} {:<11} {:>9} {:>12} {:>10.1e}  {}",
                    r.name, "example", r.points, res, r.tolerance, r.status
                );
            }
            let _ = writeln!(s, "overall {}", if report.pass { "PASS" } else { "FAIL" });
            Ok(s)
        }
    }
}
