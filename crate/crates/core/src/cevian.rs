//! Internal angle bisectors from `B` and `C`.
//!
//! The bisector from `B` meets `AC` at `B′`, splitting `b` into
//! `u = AB′` and `U = B′C`; the bisector from `C` meets `AB` at `C′`,
//! splitting `c` into `v = AC′` and `V = C′B`.
//!
//! Feet come from the bisector ratio `sinh u / sinh U = sinh c / sinh a`
//! solved in closed form, and lengths from the law of cosines in the
//! sub-triangles `ABB′` and `ACC′`. The four sub-triangle laws of sines are
//! never used for computation, so [`SubTriangleResiduals`] is independent
//! evidence that the construction is right.

use serde::Serialize;

use crate::triangle::{relative_difference, Triangle};

/// Half angles, foot segments and bisector lengths of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BisectorData {
    /// `B / 2`
    pub half_b: f64,
    /// `C / 2`
    pub half_c: f64,
    /// `AB′`, written `u` in the usual labeling.
    pub a_to_foot_b: f64,
    /// `B′C`, written `U`.
    pub foot_b_to_c: f64,
    /// `AC′`, written `v`.
    pub a_to_foot_c: f64,
    /// `C′B`, written `V`.
    pub foot_c_to_b: f64,
    /// `BB′`
    pub bisector_b: f64,
    /// `CC′`
    pub bisector_c: f64,
}

/// Relative residuals of the law of sines in the four sub-triangles cut off
/// by the two bisectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubTriangleResiduals {
    /// `BCC′`: `sinh CC′ / sin 2β = sinh V / sin γ`
    pub bcc: f64,
    /// `ACC′`: `sinh CC′ / sin A = sinh v / sin γ`
    pub acc: f64,
    /// `CBB′`: `sinh BB′ / sin 2γ = sinh U / sin β`
    pub cbb: f64,
    /// `ABB′`: `sinh BB′ / sin A = sinh u / sin β`
    pub abb: f64,
}

impl SubTriangleResiduals {
    pub fn max(&self) -> f64 {
        self.bcc.max(self.acc).max(self.cbb).max(self.abb)
    }
}

/// Residuals of `sinh U / sinh u = sin A / sin 2γ` and
/// `sinh V / sinh v = sin A / sin 2β`, which hold for every triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityResiduals {
    pub foot_b: f64,
    pub foot_c: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        self.foot_b.max(self.foot_c)
    }
}

/// Splits a side of length `len` at the foot of the bisector from the
/// opposite vertex. `near` is the other side meeting the returned first
/// segment, `far` the side meeting the second, so that
/// `sinh(first) / sinh(second) = sinh(near) / sinh(far)`.
///
/// With `k = sinh near / sinh far`, `tanh first = k sinh len / (1 + k cosh len)`,
/// which is evaluated as `½ ln((1 + k e^len) / (1 + k e^-len))` to stay
/// accurate when the segment is long.
fn split_side(len: f64, near: f64, far: f64) -> (f64, f64) {
    let k = near.sinh() / far.sinh();
    let grow = len.exp();
    let shrink = (-len).exp();
    let first = 0.5 * ((k * grow).ln_1p() - (k * shrink).ln_1p());
    let second = 0.5 * ((grow / k).ln_1p() - (shrink / k).ln_1p());
    (first, second)
}

/// Length of the cevian opposite the angle `apex` in a triangle with
/// adjacent sides `side` and `segment`:
/// `sinh^2(t/2) = sinh^2((side - segment)/2) + sinh side sinh segment sin^2(apex/2)`.
fn cevian_length(side: f64, segment: f64, apex: f64) -> f64 {
    let s2 = (0.5 * (side - segment)).sinh().powi(2)
        + side.sinh() * segment.sinh() * (0.5 * apex).sin().powi(2);
    2.0 * s2.sqrt().asinh()
}

/// `(u, U)`: the foot of the bisector from `B` on side `AC`.
pub fn bisector_foot_from_b(t: &Triangle) -> (f64, f64) {
    let s = t.sides();
    split_side(s.b(), s.c(), s.a())
}

/// `(v, V)`: the foot of the bisector from `C` on side `AB`.
pub fn bisector_foot_from_c(t: &Triangle) -> (f64, f64) {
    let s = t.sides();
    split_side(s.c(), s.b(), s.a())
}

pub fn bisector_lengths(t: &Triangle) -> BisectorData {
    let s = t.sides();
    let g = t.angles();
    let (u, big_u) = bisector_foot_from_b(t);
    let (v, big_v) = bisector_foot_from_c(t);
    BisectorData {
        half_b: 0.5 * g.b(),
        half_c: 0.5 * g.c(),
        a_to_foot_b: u,
        foot_b_to_c: big_u,
        a_to_foot_c: v,
        foot_c_to_b: big_v,
        bisector_b: cevian_length(s.c(), u, g.a()),
        bisector_c: cevian_length(s.b(), v, g.a()),
    }
}

impl BisectorData {
    /// Relative residuals of `u + U = b` and `v + V = c`.
    pub fn partition_residuals(&self, t: &Triangle) -> (f64, f64) {
        let s = t.sides();
        (
            (self.a_to_foot_b + self.foot_b_to_c - s.b()).abs() / s.b(),
            (self.a_to_foot_c + self.foot_c_to_b - s.c()).abs() / s.c(),
        )
    }

    pub fn sub_triangle_residuals(&self, t: &Triangle) -> SubTriangleResiduals {
        let a = t.angles().a();
        let (sb, sc) = (self.bisector_b.sinh(), self.bisector_c.sinh());
        let (beta, gamma) = (self.half_b, self.half_c);
        SubTriangleResiduals {
            bcc: relative_difference(
                sc / (2.0 * beta).sin(),
                self.foot_c_to_b.sinh() / gamma.sin(),
            ),
            acc: relative_difference(sc / a.sin(), self.a_to_foot_c.sinh() / gamma.sin()),
            cbb: relative_difference(
                sb / (2.0 * gamma).sin(),
                self.foot_b_to_c.sinh() / beta.sin(),
            ),
            abb: relative_difference(sb / a.sin(), self.a_to_foot_b.sinh() / beta.sin()),
        }
    }

    /// `tB - tC`.
    pub fn gap(&self) -> f64 {
        self.bisector_b - self.bisector_c
    }
}

pub fn unconditional_identities(d: &BisectorData, t: &Triangle) -> IdentityResiduals {
    let sin_a = t.angles().a().sin();
    let expected_b = sin_a / (2.0 * d.half_c).sin();
    let expected_c = sin_a / (2.0 * d.half_b).sin();
    let ratio_b = d.foot_b_to_c.sinh() / d.a_to_foot_b.sinh();
    let ratio_c = d.foot_c_to_b.sinh() / d.a_to_foot_c.sinh();
    IdentityResiduals {
        foot_b: (ratio_b - expected_b).abs() / expected_b,
        foot_c: (ratio_c - expected_c).abs() / expected_c,
    }
}
