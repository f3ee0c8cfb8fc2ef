//! Poincaré disk model: points, distances, angles and geodesics.
//!
//! Used as an independent oracle for the trigonometric solvers: a solved
//! triangle is placed in the disk and its sides and angles are measured
//! with the disk metric.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::triangle::Triangle;

/// `p`, `q` and the origin count as collinear below this cross product.
const COLLINEAR_TOL: f64 = 1e-12;

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskPoint {
    x: f64,
    y: f64,
}

impl DiskPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) || x.hypot(y) >= 1.0 {
            return Err(Error::InvalidPoint { x, y });
        }
        Ok(Self { x, y })
    }

    pub const fn origin() -> Self {
        Self { x: 0.0, y: 0.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// `1 - |p|^2`, with fused multiply-adds.
    fn boundary_gap(&self) -> f64 {
        (-self.y).mul_add(self.y, (-self.x).mul_add(self.x, 1.0))
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    /// Rotation about the origin, which is a disk isometry.
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }
}

/// Isometry of the disk sending `at` to the origin.
fn to_origin(at: DiskPoint, z: Complex64) -> Complex64 {
    let a = at.to_complex();
    (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

/// Inverse of [`to_origin`].
fn from_origin(at: DiskPoint, w: Complex64) -> Complex64 {
    let a = at.to_complex();
    (w + a) / (Complex64::new(1.0, 0.0) + a.conj() * w)
}

/// Hyperbolic distance `arcosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2)))`,
/// evaluated as `2 asinh(sqrt(|p-q|^2 / ((1-|p|^2)(1-|q|^2))))`.
pub fn disk_distance(p: &DiskPoint, q: &DiskPoint) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let chord2 = dx * dx + dy * dy;
    2.0 * (chord2 / (p.boundary_gap() * q.boundary_gap())).sqrt().asinh()
}

/// The vertices of a triangle placed in the canonical gauge: `A` at the
/// origin, `B` on the positive x-axis, `C` in the upper half at polar angle
/// `A`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmbeddedTriangle {
    pub a: DiskPoint,
    pub b: DiskPoint,
    pub c: DiskPoint,
}

/// Point at Euclidean radius `tanh(dist / 2)`, i.e. hyperbolic distance
/// `dist` from the origin, in direction `angle`.
fn polar(dist: f64, angle: f64) -> Result<DiskPoint> {
    let r = (0.5 * dist).tanh();
    if r >= 1.0 {
        return Err(Error::DomainCap {
            value: dist,
            cap: 2.0 * (1.0 - f64::EPSILON / 2.0).atanh(),
        });
    }
    let (s, c) = angle.sin_cos();
    DiskPoint::new(r * c, r * s)
}

pub fn embed_triangle(t: &Triangle) -> Result<EmbeddedTriangle> {
    let s = t.sides();
    Ok(EmbeddedTriangle {
        a: DiskPoint::origin(),
        b: polar(s.c(), 0.0)?,
        c: polar(s.b(), t.angles().a())?,
    })
}

/// Angle at `at` between the geodesics towards `p` and `q`.
///
/// The model is conformal and the isometry moving `at` to the origin has a
/// positive real derivative there, so the angle is the Euclidean angle
/// between the images of `p` and `q`.
pub fn disk_angle(at: &DiskPoint, p: &DiskPoint, q: &DiskPoint) -> Result<f64> {
    if at == p || at == q || p == q {
        return Err(Error::InvalidInput(
            "disk_angle needs three distinct points".into(),
        ));
    }
    let wp = to_origin(*at, p.to_complex());
    let wq = to_origin(*at, q.to_complex());
    let cross = wp.re * wq.im - wp.im * wq.re;
    let dot = wp.re * wq.re + wp.im * wq.im;
    Ok(cross.abs().atan2(dot))
}

/// Point at hyperbolic distance `dist` from `p` along the geodesic towards
/// `q`.
pub fn geodesic_point(p: &DiskPoint, q: &DiskPoint, dist: f64) -> Result<DiskPoint> {
    if p == q {
        return Err(Error::InvalidInput("geodesic needs two distinct points".into()));
    }
    let w = to_origin(*p, q.to_complex());
    let r = (0.5 * dist).tanh();
    DiskPoint::from_complex(from_origin(*p, w / w.norm() * r))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ArcKind {
    /// Straight segment on a line through the origin.
    Diameter,
    /// Arc of a circle orthogonal to the unit circle.
    Circle { center: (f64, f64), radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicArc {
    pub from: DiskPoint,
    pub to: DiskPoint,
    pub kind: ArcKind,
}

impl GeodesicArc {
    /// `| |center|^2 - radius^2 - 1 | / |center|^2`; zero for a diameter.
    pub fn orthogonality_residual(&self) -> f64 {
        match self.kind {
            ArcKind::Diameter => 0.0,
            ArcKind::Circle { center, radius } => {
                let c2 = center.0 * center.0 + center.1 * center.1;
                (c2 - radius * radius - 1.0).abs() / c2
            }
        }
    }
}

pub fn geodesic_arc(p: &DiskPoint, q: &DiskPoint) -> Result<GeodesicArc> {
    if p == q {
        return Err(Error::InvalidInput("geodesic needs two distinct points".into()));
    }
    let cross = p.x * q.y - p.y * q.x;
    if cross.abs() < COLLINEAR_TOL {
        return Ok(GeodesicArc {
            from: *p,
            to: *q,
            kind: ArcKind::Diameter,
        });
    }
    // The circle is orthogonal to the unit circle iff |c|^2 = r^2 + 1, and
    // passes through p iff |c - p|^2 = r^2; together 2 c.p = 1 + |p|^2.
    let rp = 1.0 + p.x * p.x + p.y * p.y;
    let rq = 1.0 + q.x * q.x + q.y * q.y;
    let det = 2.0 * cross;
    let cx = (rp * q.y - rq * p.y) / det;
    let cy = (rq * p.x - rp * q.x) / det;
    let radius = (cx - p.x).hypot(cy - p.y);
    Ok(GeodesicArc {
        from: *p,
        to: *q,
        kind: ArcKind::Circle {
            center: (cx, cy),
            radius,
        },
    })
}
