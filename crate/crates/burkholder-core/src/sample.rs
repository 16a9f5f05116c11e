//! Seeded random matrix samplers. Every randomized operation in the crate
//! draws from ChaCha8 streams seeded explicitly, so runs are reproducible.

use crate::mat2::Mat2;
use crate::C64;
#[allow(unused_imports)] // float methods under no_std come from this trait
use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};

/// The crate-wide seeded generator.
#[must_use]
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal draw.
pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Complex number with independent standard normal parts.
pub fn normal_c64(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// Matrix with all four conformal components standard normal (times scale).
pub fn gaussian_mat2(rng: &mut ChaCha8Rng, scale: f64) -> Mat2 {
    Mat2::new(normal_c64(rng) * scale, normal_c64(rng) * scale)
}

/// Matrix sampling distributions for scans.
#[derive(Clone, Copy, Debug)]
pub enum MatrixSampler {
    /// Gaussian conformal components.
    Gaussian { scale: f64 },
    /// det > 0 with the anticonformal/conformal ratio |a-|/|a+| drawn from
    /// Beta(1.5, 3.5): mass concentrated well inside the distortion cone.
    ConeInterior,
    /// Ratio |a-|/|a+| drawn as (K-1)/(K+1) * Beta(12, 1.2): concentrated
    /// just inside the boundary of the distortion-K cone, where degenerate
    /// behavior of cone-restricted functionals lives.
    ConeBoundary { k: f64 },
}

impl MatrixSampler {
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Mat2 {
        match self {
            MatrixSampler::Gaussian { scale } => gaussian_mat2(rng, *scale),
            MatrixSampler::ConeInterior => {
                let ratio_dist = Beta::new(1.5, 3.5).expect("valid Beta");
                let ratio: f64 = ratio_dist.sample(rng);
                ratio_mat2(rng, ratio)
            }
            MatrixSampler::ConeBoundary { k } => {
                let ratio_dist = Beta::new(12.0, 1.2).expect("valid Beta");
                let boundary = (k - 1.0) / (k + 1.0);
                let ratio: f64 = boundary * ratio_dist.sample(rng);
                ratio_mat2(rng, ratio)
            }
        }
    }
}

/// Matrix with |a-|/|a+| = ratio, log-normal magnitude, uniform phases.
fn ratio_mat2(rng: &mut ChaCha8Rng, ratio: f64) -> Mat2 {
    let mag = (0.4 * normal(rng)).exp();
    let phase_p: f64 = rng.random_range(0.0..core::f64::consts::TAU);
    let phase_m: f64 = rng.random_range(0.0..core::f64::consts::TAU);
    Mat2::new(
        C64::from_polar(mag, phase_p),
        C64::from_polar(mag * ratio, phase_m),
    )
}

/// Unit-magnitude rank-one direction u (x) v with uniform phases; its
/// operator norm is 1.
pub fn rank_one_direction(rng: &mut ChaCha8Rng) -> Mat2 {
    let phase_u: f64 = rng.random_range(0.0..core::f64::consts::TAU);
    let phase_v: f64 = rng.random_range(0.0..core::f64::consts::TAU);
    let sqrt2 = core::f64::consts::SQRT_2;
    Mat2::rank_one(
        C64::from_polar(sqrt2, phase_u),
        C64::from_polar(sqrt2 / 2.0, phase_v),
    )
}
