//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use harmonia::algebra::LogLaurentTerm;
use harmonia::numerics::{
    fourier_neumann_oracle, run_verification_suite, CheckId, QuadratureConfig, TrigPolynomial, DEFAULT_SEED,
};
use harmonia::operators::{
    dirichlet_from_robin_pair, neumann_from_dirichlet_disk, neumann_from_dirichlet_pair,
    neumann_from_dirichlet_schwarz, neumann_from_robin_pair,
};
use harmonia::reflection::{
    reflect_neumann_circle, reflect_neumann_schwarz, robin_data_term, CircleReflectionOptions,
};
use harmonia::{Bivariate, Complex64, Error, LogLaurent, Map, Normalization, Pair, Ray, Robin};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

struct Outcome {
    pass: bool,
    detail: String,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `Σ coeff·(log z)^m z^k + same in ζ`, real-coefficient symmetric pair.
fn symmetric(terms: &[(f64, i32, u32)]) -> Pair {
    let e = LogLaurent::from_terms(terms.iter().map(|&(re, power, logpow)| LogLaurentTerm {
        coeff: c(re),
        power,
        logpow,
    }));
    Pair::new(e.clone(), e)
}

fn bivariate(terms: &[(f64, i32, i32)]) -> Bivariate {
    Bivariate::from_terms(terms.iter().map(|&(re, kz, kzeta)| (c(re), kz, kzeta)))
}

fn grid(r: (f64, f64, usize), t: (f64, f64, usize)) -> Vec<(f64, f64)> {
    let lin = |(lo, hi, n): (f64, f64, usize), i: usize| lo + (hi - lo) * i as f64 / (n - 1) as f64;
    let mut out = Vec::new();
    for i in 0..r.2 {
        for j in 0..t.2 {
            out.push((lin(r, i), lin(t, j)));
        }
    }
    out
}

fn dtn_grid() -> Vec<(f64, f64)> {
    grid((0.6, 1.4, 10), (-2.0, 2.0, 10))
}

fn reflection_points() -> Vec<(f64, f64)> {
    grid((0.55, 1.45, 4), (-2.0, 2.0, 5))
}

/// Max over the grid of `|(v(p) − v(1,0)) − (f(p) − f(1,0))|`.
fn residual_mod_constant(v: &Pair, f: impl Fn(f64, f64) -> f64, pts: &[(f64, f64)]) -> f64 {
    let at = |r: f64, t: f64| v.eval_pair(&Ray::new(r, t).bipoint()).unwrap();
    let (v0, f0) = (at(1.0, 0.0), f(1.0, 0.0));
    pts.iter()
        .map(|&(r, t)| (at(r, t) - v0 - c(f(r, t) - f0)).norm())
        .fold(0.0, f64::max)
}

fn max_residual(pts: &[(f64, f64)], f: impl Fn(f64, f64) -> f64) -> f64 {
    pts.iter().map(|&(r, t)| f(r, t)).fold(0.0, f64::max)
}

type Radial = Box<dyn Fn(f64, f64) -> f64>;

fn criterion_1() -> Outcome {
    let cases: [(&str, Pair, Radial); 4] = [
        ("u = C", symmetric(&[(0.75, 0, 0)]), Box::new(|r: f64, _| 1.5 * r.ln())),
        (
            "u = ln r",
            symmetric(&[(0.5, 0, 1)]),
            Box::new(|r: f64, t: f64| 0.25 * (r.ln().powi(2) - t * t)),
        ),
        (
            "u = x^2 - y^2",
            symmetric(&[(0.5, 2, 0)]),
            Box::new(|r: f64, t: f64| 0.5 * r * r * (2.0 * t).cos()),
        ),
        ("u = x", symmetric(&[(0.5, 1, 0)]), Box::new(|r: f64, t: f64| r * t.cos())),
    ];
    let pts = dtn_grid();
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, u, f) in &cases {
        let v = neumann_from_dirichlet_pair(u, &Normalization::default()).unwrap();
        let res = residual_mod_constant(&v, f, &pts);
        pass &= res < 1e-10;
        parts.push(format!("{name}: {res:.2e}"));
    }
    Outcome {
        pass,
        detail: format!("golden DtN fields, max residual {}", parts.join(", ")),
    }
}

fn criterion_2() -> Outcome {
    let opts = CircleReflectionOptions::default();
    let pts = reflection_points();
    let cst = 1.5;
    let v1 = symmetric(&[(0.5 * cst, 0, 1)]);
    let phi1 = bivariate(&[(cst, 0, 0)]);
    let v2 = symmetric(&[(0.5, 2, 0)]);
    let phi2 = bivariate(&[(1.0, 2, 0), (1.0, 0, 2), (2.0, 1, 1), (-2.0, 0, 0)]);
    let res1 = max_residual(&pts, |r, t| {
        let out = reflect_neumann_circle(&v1, &phi1, &Ray::new(r, t).bipoint(), &opts).unwrap();
        (out.correction - c(-2.0 * cst * r.ln())).norm()
    });
    let res2 = max_residual(&pts, |r, t| {
        let out = reflect_neumann_circle(&v2, &phi2, &Ray::new(r, t).bipoint(), &opts).unwrap();
        (out.correction - c((r.powi(-2) - r * r) * (2.0 * t).cos())).norm()
    });
    Outcome {
        pass: res1 < 1e-12 && res2 < 1e-12,
        detail: format!("Neumann reflection corrections, residual {res1:.2e} (constant), {res2:.2e} (4x^2 - 2)"),
    }
}

fn criterion_3() -> Outcome {
    let w = symmetric(&[(0.5, 0, 1)]);
    let pts = dtn_grid();
    let mut pass = true;
    let mut parts = Vec::new();
    for (a, b) in [(1.0, 1.0), (2.0, -1.0), (0.5, 3.0)] {
        let v = neumann_from_robin_pair(&w, &Robin { a, b }, &Normalization::default()).unwrap();
        let res = residual_mod_constant(
            &v,
            |r, t| 0.5 * b * r.ln() + 0.25 * a * (r.ln().powi(2) - t * t),
            &pts,
        );
        pass &= res < 1e-10;
        parts.push(format!("({a}, {b}): {res:.2e}"));
    }
    Outcome {
        pass,
        detail: format!("Robin-to-Neumann of w = ln r, residual {}", parts.join(", ")),
    }
}

fn criterion_4() -> Outcome {
    let mut shadow = CircleReflectionOptions::default().with_shadow(QuadratureConfig::default());
    shadow.shadow_tolerance = 1e-9;
    let pts = reflection_points();
    let mut pass = true;
    let (mut r1, mut r2, mut r3, mut quoted) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (a, b) in [(1.0, 2.0), (-0.5, 1.5), (3.0, -1.0)] {
        let params = Robin { a, b };
        let data = |phi: &Bivariate, r: f64, t: f64| robin_data_term(phi, &params, r, t, &shadow).unwrap();
        let phi1 = bivariate(&[(b, 0, 0)]);
        let s = a + 2.0 * b;
        let phi2 = bivariate(&[(0.5 * s, 2, 0), (0.5 * s, 0, 2), (s, 1, 1), (-s, 0, 0)]);
        let phi3 = bivariate(&[(0.5 * (a + b), 1, 0), (0.5 * (a + b), 0, 1)]);
        r1 = r1.max(max_residual(&pts, |r, t| (data(&phi1, r, t) - c(-2.0 * r.ln())).norm()));
        r2 = r2.max(max_residual(&pts, |r, t| {
            let want = -(s / (2.0 * b)) * (r * r - r.powi(-2)) * (2.0 * t).cos();
            (data(&phi2, r, t) - c(want)).norm()
        }));
        r3 = r3.max(max_residual(&pts, |r, t| {
            let want = -((a + b) / b) * (r - 1.0 / r) * t.cos();
            (data(&phi3, r, t) - c(want)).norm()
        }));
        quoted = quoted.max(max_residual(&pts, |r, t| {
            let printed = -((a + b) / (2.0 * b)) * (r - 1.0 / r) * t.cos();
            (data(&phi3, r, t) - c(printed)).norm()
        }));
    }
    pass &= r1 < 1e-12 && r2 < 1e-12 && r3 < 1e-12;
    println!(
        "     DISCREPANCY: (a+b) cos theta data against the quoted -(a+b)/(2b) coefficient, residual {quoted:.2e} (recorded, not judged)"
    );
    Outcome {
        pass,
        detail: format!(
            "Robin data-term corrections, residual {r1:.2e} (b), {r2:.2e} ((a+2b)(2x^2-1)), {r3:.2e} ((a+b) cos theta, derived, shadow-checked)"
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let cfg = QuadratureConfig::new(1e-12, 40).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let degree = rng.gen_range(1..=6);
        let mut cos: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sin: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
        cos[0] = 0.0;
        let trig = TrigPolynomial::new(cos, sin);
        let r = rng.gen_range(0.0f64..1.0).sqrt();
        let t = rng.gen_range(-PI..PI);
        let z = Ray::new(r, t).bipoint().z;
        let disk = neumann_from_dirichlet_disk(&trig.to_bivariate(), z, &cfg).unwrap();
        let oracle = fourier_neumann_oracle(&trig, r, t).unwrap();
        worst = worst.max((disk - oracle).abs());
    }
    let with_mean = bivariate(&[(0.3, 0, 0), (0.5, 1, 0), (0.5, 0, 1)]);
    let rejected = matches!(
        neumann_from_dirichlet_disk(&with_mean, c(0.5), &cfg),
        Err(Error::NonzeroMean { .. })
    );
    Outcome {
        pass: worst < 1e-8 && rejected,
        detail: format!(
            "disk operator vs Fourier oracle at 50 points, max difference {worst:.2e}; nonzero mean rejected: {rejected}"
        ),
    }
}

fn random_pair(rng: &mut ChaCha8Rng, max_log: u32) -> Pair {
    let n = rng.gen_range(1..=5);
    let e = LogLaurent::from_terms((0..n).map(|_| LogLaurentTerm {
        coeff: Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        power: rng.gen_range(-3..=3),
        logpow: rng.gen_range(0..=max_log),
    }));
    Pair::from_real_part(&e)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED + 6);
    let norm = Normalization::default();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let w = random_pair(&mut rng, 1);
        let params = Robin {
            a: rng.gen_range(-2.0..2.0),
            b: rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
        };
        let chained = neumann_from_dirichlet_pair(&dirichlet_from_robin_pair(&w, &params), &norm).unwrap();
        let direct = neumann_from_robin_pair(&w, &params, &norm).unwrap();
        let diffs: Vec<Complex64> = (0..25)
            .map(|_| {
                let p = Ray::new(rng.gen_range(0.5..1.5), rng.gen_range(-2.5..2.5)).bipoint();
                chained.eval_pair(&p).unwrap() - direct.eval_pair(&p).unwrap()
            })
            .collect();
        let mean = diffs.iter().sum::<Complex64>() / 25.0;
        let var = diffs.iter().map(|d| (d - mean).norm_sqr()).sum::<f64>() / 25.0;
        worst = worst.max(var);
    }
    Outcome {
        pass: worst < 1e-18,
        detail: format!("DtN after DtR vs RtN over 20 Robin pairs, max variance of difference {worst:.2e}"),
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED + 7);
    let cfg = QuadratureConfig::default();
    let norm = Normalization::default();
    let opts = CircleReflectionOptions::default();
    let u = random_pair(&mut rng, 0);
    let v = neumann_from_dirichlet_pair(&u, &norm).unwrap();
    let field = neumann_from_dirichlet_schwarz(&u, Map::UnitCircle, &norm, &cfg).unwrap();
    let phi = Bivariate::from_separated(&u.part_z, &u.part_zeta).unwrap();
    let (mut op, mut refl) = (0.0f64, 0.0f64);
    for (r, t) in grid((0.6, 0.95, 4), (-2.0, 2.0, 5)) {
        let p = Ray::new(r, t).bipoint();
        op = op.max((field.eval(&p).unwrap() - v.eval_pair(&p).unwrap()).norm());
        let exact = reflect_neumann_circle(&v, &phi, &p, &opts).unwrap();
        let path = reflect_neumann_schwarz(&v, &phi, &Map::UnitCircle, &p, &cfg).unwrap();
        refl = refl.max((exact.value - path.value).norm());
    }
    Outcome {
        pass: op < 1e-9 && refl < 1e-9,
        detail: format!("Schwarz forms on the unit circle at 20 points, operator {op:.2e}, reflection {refl:.2e}"),
    }
}

fn criterion_8() -> Outcome {
    let checks = [
        CheckId::Harmonicity,
        CheckId::HarmonicityPreserved,
        CheckId::DtnBoundaryRecovery,
        CheckId::RtnBoundaryRecovery,
        CheckId::ExtensionIndependence,
        CheckId::ReflectionFixedPoints,
        CheckId::AntiderivativeRoundTrip,
    ];
    let report = run_verification_suite(&checks, DEFAULT_SEED);
    let pass = report.pass && report.checks.iter().all(|c| c.instances >= 50);
    let parts: Vec<String> = report
        .checks
        .iter()
        .map(|c| format!("{} {:.2e}/{}", c.name, c.max_residual, c.instances))
        .collect();
    Outcome {
        pass,
        detail: format!("property suites (residual/instances, seed {DEFAULT_SEED}): {}", parts.join(", ")),
    }
}

fn harmonia(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_harmonia"))
        .args(args)
        .env_remove("HARMONIA_CUT_ANGLE")
        .output()
        .expect("running harmonia");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_9() -> Outcome {
    let (code_ex, examples) = harmonia(&["examples", "--format", "json"]);
    let parsed: Value = serde_json::from_slice(&examples).unwrap();
    let rows = parsed["examples"].as_array().map_or(0, |a| a.len());
    let (code_v, verify) = harmonia(&["verify", "--seed", "2718"]);
    let report: Value = serde_json::from_slice(&verify).unwrap();
    let failures = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .chain(report["examples"].as_array().unwrap())
        .filter(|c| c["pass"] != Value::Bool(true))
        .count();
    let same = harmonia(&["verify", "--seed", "2718"]).1 == verify
        && harmonia(&["examples", "--format", "json"]).1 == examples;
    Outcome {
        pass: code_ex == 0 && rows == 9 && code_v == 0 && failures == 0 && same,
        detail: format!(
            "examples exit {code_ex} with {rows} rows; verify exit {code_v} with {failures} failures; byte-identical reruns: {same}"
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!(
                "panicked: {}",
                e.downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| e.downcast_ref::<&str>().copied())
                    .unwrap_or("?")
            ),
        });
        println!("{} criterion {n}: {}", if outcome.pass { "PASS" } else { "FAIL" }, outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
