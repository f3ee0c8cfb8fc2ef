//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use hypbisect::cevian::{bisector_foot_from_b, bisector_foot_from_c, bisector_lengths};
use hypbisect::disk::{disk_angle, disk_distance, embed_triangle, DiskPoint};
use hypbisect::sampling::AngleSampler;
use hypbisect::steiner_lehmus::{check_monotonicity, proof_trace, scan_random, solve_equal_bisector_angle, ScanReport};
use hypbisect::triangle::{
    law_of_sines_residual, solve_from_angles, solve_from_asa, solve_from_sss, ToleranceConfig, Triangle,
    TriangleAngles, TriangleSides,
};
use rayon::prelude::*;

const SEED: u64 = 20_160_314;
const ENSEMBLE: usize = 100_000;
const ROOT_PAIRS: usize = 1_000;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ensemble(seed: u64) -> Vec<Triangle> {
    let tol = ToleranceConfig::scan();
    let mut sampler = AngleSampler::new(seed, tol.eps_angle);
    (0..ENSEMBLE)
        .map(|_| {
            let [a, b, c] = sampler.next_angles();
            solve_from_angles(&TriangleAngles::new(a, b, c).unwrap(), &tol).expect("sampled triangle solves")
        })
        .collect()
}

fn relative(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs())
}

fn identity_suite(report: &ScanReport, elapsed: Duration) -> Outcome {
    let ok = report.samples == ENSEMBLE
        && report.solve_failures == 0
        && report.max_law_of_sines_residual < 1e-9
        && report.max_sub_triangle_residual < 1e-9
        && elapsed < Duration::from_secs(10);
    check(
        ok,
        format!(
            "{} samples, law of sines max {:.3e}, sub-triangles max {:.3e} (< 1e-9), {:.2?} (< 10 s)",
            report.samples, report.max_law_of_sines_residual, report.max_sub_triangle_residual, elapsed
        ),
    )
}

fn unconditional(report: &ScanReport) -> Outcome {
    check(
        report.max_unconditional_residual < 1e-10,
        format!("max foot-identity residual {:.3e} (< 1e-10)", report.max_unconditional_residual),
    )
}

fn monotonicity(report: &ScanReport) -> Outcome {
    // random sampling almost never lands in the tie band, so probe it directly
    let tol = ToleranceConfig::default();
    let mut sampler = AngleSampler::new(SEED ^ 0x71e, 0.0);
    let mut tie_probes = 0;
    let mut tie_failures = 0;
    let mut worst: f64 = 0.0;
    while tie_probes < 1000 {
        let a = 1e-3 + sampler.uniform() * 3.0;
        let b = 1e-3 + sampler.uniform() * 1.5;
        let c = b + (2.0 * sampler.uniform() - 1.0) * 0.99e-9;
        let Ok(angles) = TriangleAngles::new(a, b, c) else { continue };
        let Ok(t) = solve_from_angles(&angles, &tol) else { continue };
        tie_probes += 1;
        let m = check_monotonicity(&t, &tol);
        let d = bisector_lengths(&t);
        worst = worst.max(m.gap.abs() / d.bisector_b.max(d.bisector_c));
        tie_failures += usize::from(!(m.in_tie_band && m.passed));
    }
    check(
        report.monotonicity_failures == 0 && tie_failures == 0,
        format!(
            "{} failures over {} samples ({} in the tie band); {tie_failures} failures over {tie_probes} tie-band probes, max |tB - tC| / max(tB, tC) {worst:.3e} (< 1e-7)",
            report.monotonicity_failures, report.samples, report.tie_band_samples
        ),
    )
}

fn equal_bisector_roots() -> Outcome {
    let tol = ToleranceConfig::default();
    let mut sampler = AngleSampler::new(SEED ^ 0x5eed, 0.0);
    let margin = 1e-3;
    let mut pairs = Vec::with_capacity(ROOT_PAIRS);
    while pairs.len() < ROOT_PAIRS {
        let a = margin + sampler.uniform() * (PI - 2.0 * margin);
        let b = margin + sampler.uniform() * (PI - 2.0 * margin);
        if a + 2.0 * b < PI - margin {
            pairs.push((a, b));
        }
    }
    let start = Instant::now();
    let results: Vec<_> = pairs
        .par_iter()
        .map(|&(a, b)| solve_equal_bisector_angle(a, b, &tol).map(|r| (b, r)))
        .collect();
    let elapsed = start.elapsed();
    let mut worst: f64 = 0.0;
    let mut bad = 0;
    for r in &results {
        match r {
            Ok((b, root)) => {
                let err = (root.angle_c - b).abs();
                worst = worst.max(err);
                if !(err < 1e-10) || root.sign_changes != 1 {
                    bad += 1;
                }
            }
            Err(_) => bad += 1,
        }
    }
    check(
        bad == 0 && elapsed < Duration::from_secs(30),
        format!("{ROOT_PAIRS} pairs, {bad} failures, max |C - B| {worst:.3e} (< 1e-10), {elapsed:.2?} (< 30 s)"),
    )
}

fn proof_steps(triangles: &[Triangle]) -> Outcome {
    let mut considered = 0;
    let mut failures = 0;
    for t in triangles {
        let g = t.angles();
        if g.c() - g.b() < 1e-9 {
            continue;
        }
        considered += 1;
        let p = proof_trace(t);
        if !(p.far_segment_ratio < 1.0 && p.near_segment_ratio < 1.0 && p.half_angle_cos_ratio > 1.0) {
            failures += 1;
        }
    }
    check(
        failures == 0 && considered > 0,
        format!("{considered} triangles with B < C, {failures} with R1 >= 1, R2 >= 1 or R3 <= 1"),
    )
}

fn oracle_equivalence(triangles: &[Triangle]) -> Outcome {
    let tol = ToleranceConfig::default();
    let results: Vec<(f64, f64, f64)> = triangles
        .par_iter()
        .map(|t| {
            let (s, g) = (t.sides(), t.angles());
            let (u, _) = bisector_foot_from_b(t);
            let (v, _) = bisector_foot_from_c(t);
            let abb = solve_from_asa(g.a(), s.c(), 0.5 * g.b(), &tol);
            let acc = solve_from_asa(g.a(), s.b(), 0.5 * g.c(), &tol);
            let feet = match (abb, acc) {
                (Ok(abb), Ok(acc)) => relative(abb.sides().b(), u).max(relative(acc.sides().b(), v)),
                _ => f64::INFINITY,
            };

            let Ok(e) = embed_triangle(t) else {
                return (feet, f64::INFINITY, f64::INFINITY);
            };
            let dist = (disk_distance(&e.b, &e.c) - s.a())
                .abs()
                .max((disk_distance(&e.a, &e.c) - s.b()).abs())
                .max((disk_distance(&e.a, &e.b) - s.c()).abs());
            let ang = [
                disk_angle(&e.a, &e.b, &e.c).map(|x| (x - g.a()).abs()),
                disk_angle(&e.b, &e.a, &e.c).map(|x| (x - g.b()).abs()),
                disk_angle(&e.c, &e.a, &e.b).map(|x| (x - g.c()).abs()),
            ]
            .into_iter()
            .map(|r| r.unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max);
            (feet, dist, ang)
        })
        .collect();
    let feet = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let dist = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let ang = results.iter().map(|r| r.2).fold(0.0, f64::max);
    let ln3 = (disk_distance(&DiskPoint::origin(), &DiskPoint::new(0.5, 0.0).unwrap()) - 3f64.ln()).abs();
    check(
        feet < 1e-10 && dist < 1e-9 && ang < 1e-9 && ln3 < 1e-12,
        format!(
            "feet vs ASA {feet:.3e} (< 1e-10 rel), disk sides {dist:.3e} and angles {ang:.3e} (< 1e-9), ln 3 error {ln3:.1e} (< 1e-12)"
        ),
    )
}

fn round_trips(triangles: &[Triangle]) -> Outcome {
    // sampling uses the scan margin; the return trip only needs the default one
    let tol = ToleranceConfig::default();
    let margin = ToleranceConfig::scan().eps_angle;
    let mut angle_err: f64 = 0.0;
    let mut nonpositive = 0;
    for t in triangles {
        let back = solve_from_sss(t.sides(), &tol).map(|r| {
            nonpositive += usize::from(!(r.defect() > 0.0));
            let (x, y) = (r.angles().to_array(), t.angles().to_array());
            (0..3).map(|i| relative(x[i], y[i])).fold(0.0, f64::max)
        });
        angle_err = angle_err.max(back.unwrap_or(f64::INFINITY));
        nonpositive += usize::from(!(t.defect() > 0.0));
    }

    // sides -> angles -> sides on side triples up to 20 whose angles clear the margin
    let mut sampler = AngleSampler::new(SEED ^ 0xa11, 0.0);
    let mut side_err: f64 = 0.0;
    let mut accepted = 0;
    while accepted < ENSEMBLE {
        let (a, b, c) = (20.0 * sampler.uniform(), 20.0 * sampler.uniform(), 20.0 * sampler.uniform());
        let Ok(sides) = TriangleSides::new(a, b, c) else { continue };
        let Ok(t) = solve_from_sss(&sides, &tol) else { continue };
        if t.defect() <= margin || t.angles().to_array().iter().any(|&x| x <= margin) {
            continue;
        }
        accepted += 1;
        nonpositive += usize::from(!(t.defect() > 0.0));
        let back = solve_from_angles(t.angles(), &tol).map(|r| {
            nonpositive += usize::from(!(r.defect() > 0.0));
            let (x, y) = (r.sides().to_array(), sides.to_array());
            (0..3).map(|i| relative(x[i], y[i])).fold(0.0, f64::max)
        });
        side_err = side_err.max(back.unwrap_or(f64::INFINITY));
    }
    check(
        angle_err < 1e-9 && side_err < 1e-9 && nonpositive == 0,
        format!(
            "angles->sides->angles {angle_err:.3e}, sides->angles->sides {side_err:.3e} (< 1e-9 rel), {nonpositive} non-positive defects"
        ),
    )
}

fn euclidean_limit() -> Outcome {
    let tol = ToleranceConfig::default();
    let scale = 1e-4;
    let mut worst: f64 = 0.0;
    for (a, b, c) in [(3.0, 4.0, 5.0), (2.0, 3.0, 4.0), (1.0, 1.5, 2.2), (5.0, 2.0, 4.0)] {
        let t = solve_from_sss(&TriangleSides::new(a * scale, b * scale, c * scale).unwrap(), &tol)
            .map_err(|e| format!("shape ({a}, {b}, {c}): {e}"))?;
        let d = bisector_lengths(&t);
        let ratio = d.a_to_foot_b.sinh() / d.foot_b_to_c.sinh();
        worst = worst.max(relative(ratio, c / a));
    }
    check(worst < 1e-6, format!("max relative deviation of sinh u / sinh U from c / a: {worst:.3e} (< 1e-6)"))
}

fn run_cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hypbisect"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn determinism() -> Outcome {
    let first = run_cli(&["scan", "100000", "--seed", "42"])?;
    let second = run_cli(&["scan", "100000", "--seed", "42"])?;
    let scans_match = first.0 == 0 && first == second;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let target = dir.path().join("equilateral.svg");
    let (code, _) = run_cli(&["figure", "sss", "1", "1", "1", "--out", target.to_str().unwrap()])?;
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/equilateral.svg");
    let figure_matches = code == 0
        && std::fs::read(&target).map_err(|e| e.to_string())? == std::fs::read(golden).map_err(|e| e.to_string())?;
    check(
        scans_match && figure_matches,
        format!("scan reports identical and exit 0: {scans_match}; figure matches golden SVG: {figure_matches}"),
    )
}

fn main() {
    let triangles = ensemble(SEED);

    let start = Instant::now();
    let report = scan_random(ENSEMBLE, SEED, &ToleranceConfig::scan()).expect("scan runs");
    let scan_time = start.elapsed();

    // the identity checks are repeated on the stored ensemble as well
    let direct_max = triangles
        .iter()
        .map(|t| {
            let d = bisector_lengths(t);
            law_of_sines_residual(t).max(d.sub_triangle_residuals(t).max())
        })
        .fold(0.0, f64::max);

    let criteria: Vec<(&str, Outcome)> = vec![
        ("1 identity suite", identity_suite(&report, scan_time).and_then(|s| {
            check(direct_max < 1e-9, format!("{s}; direct re-check max {direct_max:.3e}"))
        })),
        ("2 unconditional proof identities", unconditional(&report)),
        ("3 theorem, contrapositive", monotonicity(&report)),
        ("4 theorem, equality case", equal_bisector_roots()),
        ("5 proof-step inequalities", proof_steps(&triangles)),
        ("6 oracle equivalence", oracle_equivalence(&triangles)),
        ("7 round trips", round_trips(&triangles)),
        ("8 Euclidean limit", euclidean_limit()),
        ("9 determinism", determinism()),
    ];

    let mut failed = 0;
    for (name, outcome) in &criteria {
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
