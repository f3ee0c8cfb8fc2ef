//! Seeded sampling of triangle angles.
//!
//! The generator is xoshiro256++ seeded through SplitMix64
//! (`Xoshiro256PlusPlus::seed_from_u64`). Uniform variates are
//! `(next_u64 >> 11) * 2^-53`, so a scan is reproducible from its seed on
//! any platform, and by any implementation that follows the same recipe.

use std::f64::consts::PI;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub struct AngleSampler {
    rng: Xoshiro256PlusPlus,
    margin: f64,
}

impl AngleSampler {
    /// Samples angle triples uniformly from
    /// `{A, B, C > margin, A + B + C < pi - margin}`.
    pub fn new(seed: u64, margin: f64) -> Self {
        Self {
            rng: Xoshiro256PlusPlus::seed_from_u64(seed),
            margin,
        }
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Next angle triple `[A, B, C]`.
    ///
    /// The spacings of three sorted uniforms on `[0, T)` are uniform on the
    /// corner simplex `{x >= 0, x1 + x2 + x3 <= T}`; with
    /// `T = pi - 4 margin` and every angle shifted by `margin` this is the
    /// target region.
    pub fn next_angles(&mut self) -> [f64; 3] {
        let span = PI - 4.0 * self.margin;
        let mut x = [self.uniform() * span, self.uniform() * span, self.uniform() * span];
        x.sort_by(f64::total_cmp);
        [
            self.margin + x[0],
            self.margin + (x[1] - x[0]),
            self.margin + (x[2] - x[1]),
        ]
    }
}
