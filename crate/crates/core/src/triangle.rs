//! Hyperbolic triangles at curvature -1.
//!
//! A [`Triangle`] is only ever produced by one of the solvers in this module
//! (or by [`Triangle::new`], which runs the same checks), so every value of
//! the type has three positive sides obeying the triangle inequality, three
//! angles with positive defect, and satisfies both the law of sines and the
//! law of cosines to within [`ToleranceConfig::rtol_identity`].
//!
//! The solvers use half-angle and half-side forms of the laws of cosines.
//! They are algebraically identical to the textbook forms but keep full
//! relative accuracy for very small and nearly degenerate triangles.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Constraint, Error, Result};

/// Tolerances shared by the solvers and the verification code.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ToleranceConfig {
    /// Relative tolerance for identity residuals.
    pub rtol_identity: f64,
    /// Absolute width of the band inside which two values count as equal.
    pub atol_equal: f64,
    /// Minimum angle defect a triangle must have to be accepted.
    pub eps_angle: f64,
    /// Largest side length accepted anywhere.
    pub max_side: f64,
    /// Angle difference `|C - B|` below which a sign check becomes a
    /// near-zero check.
    pub tie_angle: f64,
    /// Inside the tie band, `|tB - tC|` must stay below this fraction of the
    /// longer bisector.
    pub tie_gap_rtol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rtol_identity: 1e-10,
            atol_equal: 1e-12,
            eps_angle: 1e-9,
            max_side: 50.0,
            tie_angle: 1e-9,
            tie_gap_rtol: 1e-7,
        }
    }
}

impl ToleranceConfig {
    /// Defaults for randomized scans: identical to [`Default`] except for a
    /// wider angle margin of `1e-3`.
    pub fn scan() -> Self {
        Self {
            eps_angle: 1e-3,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("rtol_identity", self.rtol_identity),
            ("atol_equal", self.atol_equal),
            ("eps_angle", self.eps_angle),
            ("max_side", self.max_side),
            ("tie_angle", self.tie_angle),
            ("tie_gap_rtol", self.tie_gap_rtol),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be finite and strictly positive, got {value}"
                )));
            }
        }
        if self.rtol_identity > 1e-8 {
            return Err(Error::InvalidConfig(format!(
                "rtol_identity must not exceed 1e-8, got {}",
                self.rtol_identity
            )));
        }
        if self.eps_angle >= PI {
            return Err(Error::InvalidConfig(format!(
                "eps_angle must be below pi, got {}",
                self.eps_angle
            )));
        }
        Ok(())
    }
}

/// Compares `x` and `y`, treating values within `atol` of each other as equal.
pub fn cmp_within(x: f64, y: f64, atol: f64) -> Ordering {
    if (x - y).abs() <= atol {
        Ordering::Equal
    } else if x < y {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Interior angles in radians at the vertices `A`, `B`, `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleAngles {
    a: f64,
    b: f64,
    c: f64,
}

impl TriangleAngles {
    /// Each angle must lie in `(0, pi)`. The angle sum is checked by
    /// [`defect`] and by the solvers.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, x) in [("A", a), ("B", b), ("C", c)] {
            if !x.is_finite() {
                return Err(Error::invalid(
                    Constraint::NonFinite,
                    format!("angle {name} = {x}"),
                ));
            }
            if !(x > 0.0 && x < PI) {
                return Err(Error::invalid(
                    Constraint::AngleRange,
                    format!("angle {name} = {x}"),
                ));
            }
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Checks the angle sum against the configured margin and returns the
    /// defect.
    pub fn validate(&self, tol: &ToleranceConfig) -> Result<f64> {
        let d = defect(self)?;
        if d < tol.eps_angle {
            return Err(Error::invalid(
                Constraint::AngleSum,
                format!(
                    "angle sum {} leaves defect {d}, below the margin {}",
                    self.a + self.b + self.c,
                    tol.eps_angle
                ),
            ));
        }
        Ok(d)
    }
}

/// Side lengths; `a` is opposite angle `A` and so on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleSides {
    a: f64,
    b: f64,
    c: f64,
}

impl TriangleSides {
    /// Requires positive finite sides obeying the strict triangle inequality.
    /// The length cap is a tolerance setting and is checked by the solvers.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, x) in [("a", a), ("b", b), ("c", c)] {
            if !x.is_finite() {
                return Err(Error::invalid(
                    Constraint::NonFinite,
                    format!("side {name} = {x}"),
                ));
            }
            if x <= 0.0 {
                return Err(Error::invalid(
                    Constraint::SidePositive,
                    format!("side {name} = {x}"),
                ));
            }
        }
        for (name, long, p, q) in [("a", a, b, c), ("b", b, a, c), ("c", c, a, b)] {
            if long >= p + q {
                return Err(Error::invalid(
                    Constraint::TriangleInequality,
                    format!("side {name} = {long} is not shorter than the sum {} of the other two", p + q),
                ));
            }
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    fn check_cap(&self, tol: &ToleranceConfig) -> Result<()> {
        for x in self.to_array() {
            if x > tol.max_side {
                return Err(Error::DomainCap {
                    value: x,
                    cap: tol.max_side,
                });
            }
        }
        Ok(())
    }
}

/// A fully solved hyperbolic triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triangle {
    sides: TriangleSides,
    angles: TriangleAngles,
}

impl Triangle {
    /// Pairs sides with angles after checking every triangle invariant.
    pub fn new(sides: TriangleSides, angles: TriangleAngles, tol: &ToleranceConfig) -> Result<Self> {
        sides.check_cap(tol)?;
        angles.validate(tol)?;

        let sines = sine_ratio_spread(&sides, &angles);
        if !(sines <= tol.rtol_identity) {
            return Err(Error::invalid(
                Constraint::LawOfSines,
                format!("relative spread {sines:e} exceeds {:e}", tol.rtol_identity),
            ));
        }
        let cosines = law_of_cosines_residual(&sides, &angles);
        if !(cosines <= tol.rtol_identity) {
            return Err(Error::invalid(
                Constraint::LawOfCosines,
                format!("scaled residual {cosines:e} exceeds {:e}", tol.rtol_identity),
            ));
        }

        let s = sides.to_array();
        let g = angles.to_array();
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let by_side = cmp_within(s[i], s[j], tol.atol_equal);
            let by_angle = cmp_within(g[i], g[j], tol.atol_equal);
            if by_side != Ordering::Equal && by_angle != Ordering::Equal && by_side != by_angle {
                return Err(Error::invalid(
                    Constraint::SideAngleOrdering,
                    format!("sides ({}, {}) and angles ({}, {}) are ordered differently", s[i], s[j], g[i], g[j]),
                ));
            }
        }

        Ok(Self { sides, angles })
    }

    pub fn sides(&self) -> &TriangleSides {
        &self.sides
    }

    pub fn angles(&self) -> &TriangleAngles {
        &self.angles
    }

    pub fn defect(&self) -> f64 {
        PI - (self.angles.a + self.angles.b + self.angles.c)
    }

    /// The same triangle with the labels `B` and `C` exchanged.
    pub fn swap_b_c(&self) -> Self {
        Self {
            sides: TriangleSides {
                a: self.sides.a,
                b: self.sides.c,
                c: self.sides.b,
            },
            angles: TriangleAngles {
                a: self.angles.a,
                b: self.angles.c,
                c: self.angles.b,
            },
        }
    }
}

/// Defects this small are within the rounding error of the angle sum and
/// count as zero.
const DEFECT_ROUNDOFF: f64 = 4.0 * f64::EPSILON * PI;

/// Angle defect `pi - (A + B + C)`; an error unless strictly positive.
pub fn defect(angles: &TriangleAngles) -> Result<f64> {
    let d = PI - (angles.a + angles.b + angles.c);
    if d > DEFECT_ROUNDOFF {
        Ok(d)
    } else {
        Err(Error::invalid(
            Constraint::AngleSum,
            format!("angle sum {} is not below pi", angles.a + angles.b + angles.c),
        ))
    }
}

/// Largest pairwise relative difference of `sinh a / sin A`,
/// `sinh b / sin B` and `sinh c / sin C`.
pub fn sine_ratio_spread(sides: &TriangleSides, angles: &TriangleAngles) -> f64 {
    let r = [
        sides.a.sinh() / angles.a.sin(),
        sides.b.sinh() / angles.b.sin(),
        sides.c.sinh() / angles.c.sin(),
    ];
    let mut worst: f64 = 0.0;
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        worst = worst.max(relative_difference(r[i], r[j]));
    }
    worst
}

pub fn law_of_sines_residual(t: &Triangle) -> f64 {
    sine_ratio_spread(&t.sides, &t.angles)
}

/// Largest residual of `cosh a = cosh b cosh c - sinh b sinh c cos A` over
/// the three vertices, scaled by the largest term involved.
pub fn law_of_cosines_residual(sides: &TriangleSides, angles: &TriangleAngles) -> f64 {
    let s = sides.to_array();
    let g = angles.to_array();
    let mut worst: f64 = 0.0;
    for (i, j, k) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        let lhs = s[i].cosh();
        let product = s[j].cosh() * s[k].cosh();
        let rhs = product - s[j].sinh() * s[k].sinh() * g[i].cos();
        worst = worst.max((lhs - rhs).abs() / lhs.max(product));
    }
    worst
}

pub(crate) fn relative_difference(x: f64, y: f64) -> f64 {
    let scale = x.abs().max(y.abs());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).abs() / scale
    }
}

/// Side opposite `x` given all three angles, from
/// `sinh^2(side/2) = sin(defect/2) cos(half_sum - x) / (sin y sin z)`.
fn side_from_angles(x: f64, y: f64, z: f64, half_sum: f64, half_defect: f64) -> f64 {
    let s2 = half_defect.sin() * (half_sum - x).cos() / (y.sin() * z.sin());
    2.0 * s2.sqrt().asinh()
}

/// Angle opposite `x` given all three sides, from the half-angle tangent
/// `tan^2(X/2) = sinh(s - y) sinh(s - z) / (sinh s sinh(s - x))`.
fn angle_from_sides(x: f64, y: f64, z: f64, s: f64) -> Result<f64> {
    let across = (0.5 * (x - y + z)).sinh() * (0.5 * (x + y - z)).sinh();
    let along = s.sinh() * (0.5 * (y + z - x)).sinh();
    if !(across.is_finite() && along.is_finite()) || across < 0.0 || along <= 0.0 {
        return Err(Error::NumericalFailure(format!(
            "half-angle terms out of range for sides ({x}, {y}, {z})"
        )));
    }
    let cos = (along - across) / (along + across);
    if !(cos.abs() <= 1.0) {
        return Err(Error::NumericalFailure(format!(
            "cosine {cos} of the angle opposite {x} is outside [-1, 1]"
        )));
    }
    Ok(2.0 * across.sqrt().atan2(along.sqrt()))
}

/// AAA: in the hyperbolic plane the three angles determine the triangle.
pub fn solve_from_angles(angles: &TriangleAngles, tol: &ToleranceConfig) -> Result<Triangle> {
    let d = angles.validate(tol)?;
    let half_sum = 0.5 * (angles.a + angles.b + angles.c);
    let half_defect = 0.5 * d;
    let a = side_from_angles(angles.a, angles.b, angles.c, half_sum, half_defect);
    let b = side_from_angles(angles.b, angles.a, angles.c, half_sum, half_defect);
    let c = side_from_angles(angles.c, angles.a, angles.b, half_sum, half_defect);
    for x in [a, b, c] {
        if x > tol.max_side {
            return Err(Error::DomainCap {
                value: x,
                cap: tol.max_side,
            });
        }
    }
    let sides = TriangleSides::new(a, b, c)?;
    Triangle::new(sides, *angles, tol)
}

/// SSS via the half-angle formulas.
pub fn solve_from_sss(sides: &TriangleSides, tol: &ToleranceConfig) -> Result<Triangle> {
    sides.check_cap(tol)?;
    let (a, b, c) = (sides.a, sides.b, sides.c);
    let s = 0.5 * (a + b + c);
    let angles = TriangleAngles::new(
        angle_from_sides(a, b, c, s)?,
        angle_from_sides(b, a, c, s)?,
        angle_from_sides(c, a, b, s)?,
    )?;
    Triangle::new(*sides, angles, tol)
}

/// SAS: sides `b` and `c` with the included angle `A`.
pub fn solve_from_sas(b: f64, angle_a: f64, c: f64, tol: &ToleranceConfig) -> Result<Triangle> {
    for (name, x) in [("b", b), ("c", c)] {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::invalid(
                Constraint::SidePositive,
                format!("side {name} = {x}"),
            ));
        }
        if x > tol.max_side {
            return Err(Error::DomainCap {
                value: x,
                cap: tol.max_side,
            });
        }
    }
    if !(angle_a.is_finite() && angle_a > 0.0 && angle_a < PI) {
        return Err(Error::invalid(
            Constraint::AngleRange,
            format!("angle A = {angle_a}"),
        ));
    }
    // cosh a - 1 = cosh(b - c) - 1 + sinh b sinh c (1 - cos A)
    let half_a = 0.5 * angle_a;
    let s2 = (0.5 * (b - c)).sinh().powi(2) + b.sinh() * c.sinh() * half_a.sin().powi(2);
    let a = 2.0 * s2.sqrt().asinh();
    if !a.is_finite() {
        return Err(Error::NumericalFailure(format!("side a = {a}")));
    }
    if a > tol.max_side {
        return Err(Error::DomainCap {
            value: a,
            cap: tol.max_side,
        });
    }
    solve_from_sss(&TriangleSides::new(a, b, c)?, tol)
}

/// ASA: angles `A` and `B` with the included side `c`.
pub fn solve_from_asa(angle_a: f64, c: f64, angle_b: f64, tol: &ToleranceConfig) -> Result<Triangle> {
    for (name, x) in [("A", angle_a), ("B", angle_b)] {
        if !(x.is_finite() && x > 0.0 && x < PI) {
            return Err(Error::invalid(
                Constraint::AngleRange,
                format!("angle {name} = {x}"),
            ));
        }
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::invalid(
            Constraint::SidePositive,
            format!("side c = {c}"),
        ));
    }
    if c > tol.max_side {
        return Err(Error::DomainCap {
            value: c,
            cap: tol.max_side,
        });
    }
    if angle_a + angle_b >= PI {
        return Err(Error::invalid(
            Constraint::AngleSum,
            format!("A + B = {} is not below pi", angle_a + angle_b),
        ));
    }
    // Dual law of cosines, cos C = -cos A cos B + sin A sin B cosh c, split
    // into cos^2(C/2) and sin^2(C/2).
    let half = 0.5 * (angle_a + angle_b);
    let spread = (angle_a.sin() * angle_b.sin()).sqrt() * (0.5 * c).sinh();
    let cos2 = half.sin().powi(2) + spread * spread;
    let sin2 = (half.cos() - spread) * (half.cos() + spread);
    if !(sin2 > 0.0) {
        return Err(Error::invalid(
            Constraint::AngleSum,
            format!("no third vertex: A = {angle_a}, B = {angle_b} and c = {c} leave C <= 0"),
        ));
    }
    let angle_c = 2.0 * sin2.sqrt().atan2(cos2.sqrt());
    solve_from_angles(&TriangleAngles::new(angle_a, angle_b, angle_c)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn defect_examples() {
        let eq = TriangleAngles::new(PI / 6.0, PI / 6.0, PI / 6.0).unwrap();
        assert_relative_eq!(defect(&eq).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        let mixed = TriangleAngles::new(FRAC_PI_2, PI / 4.0, PI / 8.0).unwrap();
        assert_relative_eq!(defect(&mixed).unwrap(), PI / 8.0, epsilon = 1e-15);
        let flat = TriangleAngles::new(FRAC_PI_2, PI / 3.0, PI / 6.0).unwrap();
        assert!(matches!(
            defect(&flat),
            Err(Error::InvalidTriangle { constraint: Constraint::AngleSum, .. })
        ));
    }

    #[test]
    fn angle_range_rejected() {
        assert!(TriangleAngles::new(0.0, 0.1, 0.1).is_err());
        assert!(TriangleAngles::new(PI, 0.1, 0.1).is_err());
        assert!(TriangleAngles::new(f64::NAN, 0.1, 0.1).is_err());
    }

    #[test]
    fn equilateral_from_angles() {
        let t = solve_from_angles(&TriangleAngles::new(PI / 6.0, PI / 6.0, PI / 6.0).unwrap(), &tol()).unwrap();
        // arcosh(3 + 2 sqrt 3), 50-digit reference
        let expected = 2.553_373_736_760_690_8;
        let s = t.sides();
        assert_relative_eq!(s.a(), expected, max_relative = 1e-14);
        assert_relative_eq!(expected, (3.0 + 2.0 * 3f64.sqrt()).acosh(), max_relative = 1e-14);
        assert_eq!(s.a().to_bits(), s.b().to_bits());
        assert_eq!(s.b().to_bits(), s.c().to_bits());
        assert_eq!(law_of_sines_residual(&t), 0.0);
    }

    #[test]
    fn equilateral_from_sides() {
        let t = solve_from_sss(&TriangleSides::new(1.0, 1.0, 1.0).unwrap(), &tol()).unwrap();
        let expected = 0.918_797_872_178_027_4;
        for g in t.angles().to_array() {
            assert_relative_eq!(g, expected, max_relative = 1e-14);
        }
        assert_relative_eq!(expected, (1f64.cosh() / (1f64.cosh() + 1.0)).acos(), max_relative = 1e-14);
    }

    #[test]
    fn triangle_inequality_rejected() {
        let err = TriangleSides::new(1.0, 1.0, 2.5).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidTriangle { constraint: Constraint::TriangleInequality, .. }
        ));
        assert!(TriangleSides::new(1.0, 1.0, 2.0).is_err());
        assert!(TriangleSides::new(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn domain_cap() {
        let sides = TriangleSides::new(60.0, 60.0, 60.0).unwrap();
        assert!(matches!(solve_from_sss(&sides, &tol()), Err(Error::DomainCap { .. })));
        // tiny angles produce long sides
        let sharp = TriangleAngles::new(1e-12, 1e-12, 1e-12).unwrap();
        let strict = ToleranceConfig { max_side: 20.0, ..tol() };
        assert!(matches!(solve_from_angles(&sharp, &strict), Err(Error::DomainCap { .. })));
    }

    #[test]
    fn sas_closes_equilateral() {
        let eq = solve_from_sss(&TriangleSides::new(1.0, 1.0, 1.0).unwrap(), &tol()).unwrap();
        let t = solve_from_sas(1.0, eq.angles().a(), 1.0, &tol()).unwrap();
        assert_relative_eq!(t.sides().a(), 1.0, max_relative = 1e-10);
    }

    #[test]
    fn sas_near_straight_angle() {
        // as A -> pi the opposite side tends to arcosh(cosh^2 1 + sinh^2 1) = 2
        let t = solve_from_sas(1.0, PI - 1e-3, 1.0, &tol()).unwrap();
        let a = t.sides().a();
        assert!(a < 2.0);
        // 2 asinh(sinh 1 * sin(A/2)), 30-digit reference
        assert_relative_eq!(a, 1.999_999_809_601_458_1, max_relative = 1e-13);
        assert!(t.defect() > 0.0);
    }

    #[test]
    fn asa_symmetric_and_equilateral() {
        let t = solve_from_asa(0.7, 1.3, 0.7, &tol()).unwrap();
        assert_relative_eq!(t.sides().a(), t.sides().b(), max_relative = 1e-10);

        let g = 0.918_797_872_178_027_4;
        let eq = solve_from_asa(g, 1.0, g, &tol()).unwrap();
        for s in eq.sides().to_array() {
            assert_relative_eq!(s, 1.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn asa_without_third_vertex() {
        // the rays from a long base at these angles never meet
        assert!(matches!(
            solve_from_asa(1.0, 5.0, 1.0, &tol()),
            Err(Error::InvalidTriangle { constraint: Constraint::AngleSum, .. })
        ));
        assert!(solve_from_asa(2.0, 1.0, 1.5, &tol()).is_err());
    }

    #[test]
    fn perturbed_side_breaks_law_of_sines() {
        let t = solve_from_angles(&TriangleAngles::new(0.6, 0.5, 0.9).unwrap(), &tol()).unwrap();
        let s = t.sides();
        let bumped = TriangleSides::new(s.a() + 1e-3, s.b(), s.c()).unwrap();
        assert!(sine_ratio_spread(&bumped, t.angles()) > 1e-4);
        assert!(matches!(
            Triangle::new(bumped, *t.angles(), &tol()),
            Err(Error::InvalidTriangle { constraint: Constraint::LawOfSines, .. })
        ));
    }

    #[test]
    fn swap_b_c_keeps_invariants() {
        let t = solve_from_angles(&TriangleAngles::new(0.6, 0.5, 0.9).unwrap(), &tol()).unwrap();
        let r = t.swap_b_c();
        assert_eq!(r.angles().b(), t.angles().c());
        assert_eq!(r.sides().c(), t.sides().b());
        Triangle::new(*r.sides(), *r.angles(), &tol()).unwrap();
    }

    #[test]
    fn tolerance_validation() {
        tol().validate().unwrap();
        ToleranceConfig::scan().validate().unwrap();
        assert!(ToleranceConfig { rtol_identity: 1e-6, ..tol() }.validate().is_err());
        assert!(ToleranceConfig { atol_equal: 0.0, ..tol() }.validate().is_err());
    }

    #[test]
    fn tie_band_comparison() {
        assert_eq!(cmp_within(1.0, 1.0 + 1e-13, 1e-12), Ordering::Equal);
        assert_eq!(cmp_within(1.0, 1.1, 1e-12), Ordering::Less);
        assert_eq!(cmp_within(1.1, 1.0, 1e-12), Ordering::Greater);
    }
}
