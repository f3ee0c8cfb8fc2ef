//! Trigonometry of triangles in the hyperbolic plane (curvature -1), the
//! internal angle bisectors from `B` and `C`, and numerical verification of
//! the hyperbolic Steiner-Lehmus theorem: equal internal bisectors force an
//! isosceles triangle.
//!
//! - [`triangle`]: validated triangle types and the AAA, SSS, SAS and ASA solvers.
//! - [`cevian`]: bisector feet and lengths, and the sub-triangle law-of-sines checks.
//! - [`steiner_lehmus`]: proof-step quantities, monotonicity checks, the
//!   equal-bisector root solver and seeded scans.
//! - [`disk`]: the Poincaré disk model, used as an independent metric oracle.
//! - [`figure`]: SVG drawings of a triangle and its bisectors.
//! - [`cli`]: the `hypbisect` command-line interface.

pub mod cevian;
pub mod cli;
pub mod disk;
pub mod error;
pub mod figure;
pub mod rootfind;
pub mod sampling;
pub mod steiner_lehmus;
pub mod triangle;

pub use cevian::{bisector_foot_from_b, bisector_foot_from_c, bisector_lengths, unconditional_identities, BisectorData};
pub use disk::{disk_angle, disk_distance, embed_triangle, geodesic_arc, DiskPoint, GeodesicArc};
pub use error::{Constraint, Error, Result};
pub use steiner_lehmus::{
    check_monotonicity, proof_trace, scan_random, solve_equal_bisector_angle, ProofTrace, ScanReport,
};
pub use triangle::{
    defect, law_of_sines_residual, solve_from_angles, solve_from_asa, solve_from_sas, solve_from_sss,
    ToleranceConfig, Triangle, TriangleAngles, TriangleSides,
};
