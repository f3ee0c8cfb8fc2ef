//! Numerical checks of the hyperbolic Steiner-Lehmus theorem: if the
//! internal bisectors from `B` and `C` are equally long, then `B = C`.
//!
//! The theorem is checked in its strict monotone form, `tB - tC` has the
//! sign of `C - B`, and constructively: for fixed `A` and `B` the only
//! third angle giving equal bisectors is `C = B`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::cevian::{bisector_lengths, unconditional_identities, BisectorData};
use crate::error::{Constraint, Error, Result};
use crate::rootfind::{count_sign_changes, find_root, RootOptions};
use crate::sampling::AngleSampler;
use crate::triangle::{law_of_sines_residual, solve_from_angles, ToleranceConfig, Triangle, TriangleAngles};

/// Scans pass only with every law-of-sines residual (whole triangle and the
/// four sub-triangles) below this.
pub const IDENTITY_THRESHOLD: f64 = 1e-9;
/// Bound for the two unconditional foot identities.
pub const UNCONDITIONAL_THRESHOLD: f64 = 1e-10;
/// Grid size of the uniqueness sweep in [`solve_equal_bisector_angle`].
pub const SWEEP_POINTS: usize = 1024;

/// Quantities of each step in the ratio-and-difference argument, evaluated
/// on an actual triangle without assuming `tB = tC`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProofTrace {
    /// `(sin β / sin γ)(sinh b / sinh c)`, below 1 when `B < C`.
    pub far_segment_ratio: f64,
    /// `sin β / sin γ`, below 1 when `B < C`.
    pub near_segment_ratio: f64,
    /// `cos β / cos γ`, above 1 when `B < C`.
    pub half_angle_cos_ratio: f64,
    /// `(sinh a / sinh c) cosh u + cosh U - (sinh a / sinh b) cosh v - cosh V`
    pub sum_formula_difference: f64,
    /// Residual of `sinh U / sinh u = sin A / sin 2γ`.
    pub identity_residual_b: f64,
    /// Residual of `sinh V / sinh v = sin A / sin 2β`.
    pub identity_residual_c: f64,
    /// `tB - tC`
    pub bisector_gap: f64,
}

pub fn proof_trace(t: &Triangle) -> ProofTrace {
    proof_trace_with(t, &bisector_lengths(t))
}

fn proof_trace_with(t: &Triangle, d: &BisectorData) -> ProofTrace {
    let s = t.sides();
    let (sinh_a, sinh_b, sinh_c) = (s.a().sinh(), s.b().sinh(), s.c().sinh());
    let near = d.half_b.sin() / d.half_c.sin();
    let ids = unconditional_identities(d, t);
    ProofTrace {
        far_segment_ratio: near * (sinh_b / sinh_c),
        near_segment_ratio: near,
        half_angle_cos_ratio: d.half_b.cos() / d.half_c.cos(),
        sum_formula_difference: (sinh_a / sinh_c) * d.a_to_foot_b.cosh() + d.foot_b_to_c.cosh()
            - (sinh_a / sinh_b) * d.a_to_foot_c.cosh()
            - d.foot_c_to_b.cosh(),
        identity_residual_b: ids.foot_b,
        identity_residual_c: ids.foot_c,
        bisector_gap: d.gap(),
    }
}

impl ProofTrace {
    /// Names of the unconditional inequalities that fail for `t`.
    ///
    /// For `B < C` these are `R1 < 1`, `R2 < 1`, `R3 > 1` and
    /// `sinh b < sinh c`; for `B > C` each is reversed. Inside the tie band
    /// nothing is asserted.
    pub fn violations(&self, t: &Triangle, tol: &ToleranceConfig) -> Vec<&'static str> {
        let g = t.angles();
        // B < C: both sine ratios below 1, the cosine ratio above
        let expected = match tie_ordering(g.b(), g.c(), tol) {
            Ordering::Equal => return Vec::new(),
            order => order,
        };
        let s = t.sides();
        let checks = [
            ("far_segment_ratio", self.far_segment_ratio.partial_cmp(&1.0), expected),
            ("near_segment_ratio", self.near_segment_ratio.partial_cmp(&1.0), expected),
            ("half_angle_cos_ratio", self.half_angle_cos_ratio.partial_cmp(&1.0), expected.reverse()),
            ("sinh_b_vs_sinh_c", s.b().sinh().partial_cmp(&s.c().sinh()), expected),
        ];
        checks
            .into_iter()
            .filter(|(_, got, want)| *got != Some(*want))
            .map(|(name, _, _)| name)
            .collect()
    }
}

/// Orders `B` against `C`, with `|C - B| < tie_angle` counting as equal.
fn tie_ordering(b: f64, c: f64, tol: &ToleranceConfig) -> Ordering {
    if (c - b).abs() < tol.tie_angle {
        Ordering::Equal
    } else if b < c {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityCheck {
    pub passed: bool,
    /// `tB - tC`
    pub gap: f64,
    /// `C - B`
    pub angle_difference: f64,
    pub in_tie_band: bool,
}

/// Passes iff `tB - tC` has the sign of `C - B`, or, when `|C - B|` is
/// inside the tie band, iff `|tB - tC| < tie_gap_rtol * max(tB, tC)`.
pub fn check_monotonicity(t: &Triangle, tol: &ToleranceConfig) -> MonotonicityCheck {
    monotonicity_with(t, &bisector_lengths(t), tol)
}

fn monotonicity_with(t: &Triangle, d: &BisectorData, tol: &ToleranceConfig) -> MonotonicityCheck {
    let g = t.angles();
    let gap = d.gap();
    let angle_difference = g.c() - g.b();
    let ordering = tie_ordering(g.b(), g.c(), tol);
    let passed = match ordering {
        Ordering::Equal => gap.abs() < tol.tie_gap_rtol * d.bisector_b.max(d.bisector_c),
        Ordering::Less => gap > 0.0,
        Ordering::Greater => gap < 0.0,
    };
    MonotonicityCheck {
        passed,
        gap,
        angle_difference,
        in_tie_band: ordering == Ordering::Equal,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EqualBisectorRoot {
    /// The third angle at which `tB = tC`.
    pub angle_c: f64,
    pub iterations: usize,
    /// Sign changes of `tB - tC` found by the uniqueness sweep.
    pub sign_changes: usize,
    pub sweep_points: usize,
    /// Search interval for `C`.
    pub lo: f64,
    pub hi: f64,
}

/// `tB - tC` for the triangle with angles `A`, `B`, `C`.
pub fn bisector_gap(angle_a: f64, angle_b: f64, angle_c: f64, tol: &ToleranceConfig) -> Result<f64> {
    let t = solve_from_angles(&TriangleAngles::new(angle_a, angle_b, angle_c)?, tol)?;
    Ok(bisector_lengths(&t).gap())
}

/// Solves `tB(A, B, C) = tC(A, B, C)` for `C`, with `A` and `B` fixed.
///
/// `C` is searched on `[2 eps, pi - A - B - 2 eps]` so that both ends of the
/// bracket still pass the angle-sum margin. `B` must lie strictly inside.
pub fn solve_equal_bisector_angle(angle_a: f64, angle_b: f64, tol: &ToleranceConfig) -> Result<EqualBisectorRoot> {
    tol.validate()?;
    for (name, x) in [("A", angle_a), ("B", angle_b)] {
        if !(x.is_finite() && x > 0.0 && x < PI) {
            return Err(Error::invalid(
                Constraint::AngleRange,
                format!("angle {name} = {x}"),
            ));
        }
    }
    let margin = 2.0 * tol.eps_angle;
    let lo = margin;
    let hi = PI - angle_a - angle_b - margin;
    if !(angle_b > lo && angle_b < hi) {
        return Err(Error::invalid(
            Constraint::Precondition,
            format!(
                "C = B = {angle_b} is not admissible: need A + 2B < pi - {margin} (A + 2B = {})",
                angle_a + 2.0 * angle_b
            ),
        ));
    }

    let gap = |c: f64| bisector_gap(angle_a, angle_b, c, tol);
    let root = find_root(gap, lo, hi, &RootOptions::default())?;
    let sign_changes = count_sign_changes(gap, lo, hi, SWEEP_POINTS)?;
    Ok(EqualBisectorRoot {
        angle_c: root.x,
        iterations: root.iterations,
        sign_changes,
        sweep_points: SWEEP_POINTS,
        lo,
        hi,
    })
}

/// Aggregate of a randomized scan. Field order is the report order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub samples: usize,
    pub seed: u64,
    /// Smallest sampled angle; the angle sum stays below `pi - eps_angle`.
    pub eps_angle: f64,
    pub angle_sum_max: f64,
    pub max_side: f64,
    pub max_law_of_sines_residual: f64,
    pub max_sub_triangle_residual: f64,
    pub max_identity_residual: f64,
    pub max_unconditional_residual: f64,
    pub monotonicity_failures: usize,
    pub proof_step_failures: usize,
    pub tie_band_samples: usize,
    pub solve_failures: usize,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.monotonicity_failures == 0
            && self.proof_step_failures == 0
            && self.solve_failures == 0
            && self.max_identity_residual < IDENTITY_THRESHOLD
            && self.max_unconditional_residual < UNCONDITIONAL_THRESHOLD
    }
}

#[derive(Debug, Clone, Copy)]
struct SampleOutcome {
    longest_side: f64,
    law_of_sines: f64,
    sub_triangle: f64,
    unconditional: f64,
    monotone: bool,
    in_tie_band: bool,
    proof_steps_hold: bool,
}

fn evaluate_sample(angles: [f64; 3], tol: &ToleranceConfig) -> Option<SampleOutcome> {
    let angles = TriangleAngles::new(angles[0], angles[1], angles[2]).ok()?;
    let t = solve_from_angles(&angles, tol).ok()?;
    let d = bisector_lengths(&t);
    let trace = proof_trace_with(&t, &d);
    let mono = monotonicity_with(&t, &d, tol);
    Some(SampleOutcome {
        longest_side: t.sides().to_array().into_iter().fold(0.0, f64::max),
        law_of_sines: law_of_sines_residual(&t),
        sub_triangle: d.sub_triangle_residuals(&t).max(),
        unconditional: trace.identity_residual_b.max(trace.identity_residual_c),
        monotone: mono.passed,
        in_tie_band: mono.in_tie_band,
        proof_steps_hold: trace.violations(&t, tol).is_empty(),
    })
}

/// Samples `n` triangles from the angle simplex with margin
/// `tol.eps_angle` and checks identities, proof-step inequalities and
/// monotonicity on each.
///
/// Samples are drawn sequentially and evaluated in parallel; the reduction
/// runs in sample order, so the report depends only on `n`, `seed` and `tol`.
pub fn scan_random(n: usize, seed: u64, tol: &ToleranceConfig) -> Result<ScanReport> {
    if n == 0 {
        return Err(Error::InvalidInput("scan needs at least one sample".into()));
    }
    tol.validate()?;

    let mut sampler = AngleSampler::new(seed, tol.eps_angle);
    let draws: Vec<[f64; 3]> = (0..n).map(|_| sampler.next_angles()).collect();
    let outcomes: Vec<Option<SampleOutcome>> = draws.par_iter().map(|&g| evaluate_sample(g, tol)).collect();

    let mut report = ScanReport {
        samples: n,
        seed,
        eps_angle: tol.eps_angle,
        angle_sum_max: PI - tol.eps_angle,
        max_side: 0.0,
        max_law_of_sines_residual: 0.0,
        max_sub_triangle_residual: 0.0,
        max_identity_residual: 0.0,
        max_unconditional_residual: 0.0,
        monotonicity_failures: 0,
        proof_step_failures: 0,
        tie_band_samples: 0,
        solve_failures: 0,
    };
    for outcome in outcomes {
        let Some(o) = outcome else {
            report.solve_failures += 1;
            continue;
        };
        report.max_side = report.max_side.max(o.longest_side);
        report.max_law_of_sines_residual = report.max_law_of_sines_residual.max(o.law_of_sines);
        report.max_sub_triangle_residual = report.max_sub_triangle_residual.max(o.sub_triangle);
        report.max_unconditional_residual = report.max_unconditional_residual.max(o.unconditional);
        report.monotonicity_failures += usize::from(!o.monotone);
        report.proof_step_failures += usize::from(!o.proof_steps_hold);
        report.tie_band_samples += usize::from(o.in_tie_band);
    }
    report.max_identity_residual = report.max_law_of_sines_residual.max(report.max_sub_triangle_residual);
    Ok(report)
}
