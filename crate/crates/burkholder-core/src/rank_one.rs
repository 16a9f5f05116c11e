//! Randomized rank-one convexity scans: normalized second differences along
//! rank-one lines, and a finite-difference Baker-Ericksen scan on diagonal
//! matrices.

use crate::functional::Functional;
use crate::mat2::Mat2;
use crate::sample::{rank_one_direction, seeded_rng, MatrixSampler};
use crate::scalar::ExtScalar;
#[allow(unused_imports)] // float methods under no_std come from this trait
use num_traits::Float;
use rand::Rng;

/// Worst case found by `rank_one_scan`.
#[derive(Clone, Copy, Debug)]
pub struct RankOneWitness {
    pub a: Mat2,
    pub x: Mat2,
    pub t: f64,
}

/// Scan report. `min_normalized` is the smallest second difference divided
/// by the local value scale; for a rank-one convex functional it is bounded
/// below by -(discretization noise), and for an affine-along-rank-one-lines
/// functional (-det) it vanishes to rounding.
#[derive(Clone, Debug)]
pub struct RankOneScanReport {
    pub min_normalized: f64,
    pub witness: RankOneWitness,
    pub n_evaluated: usize,
    pub n_skipped: usize,
    pub seed: u64,
}

/// Centered second difference of E along the rank-one line A + t X, with
/// step h. Returns None when any stencil point evaluates to +infinity
/// (outside the functional's domain); otherwise (second difference, scale)
/// where scale = max |E| over the stencil, floored at 1.
#[must_use]
pub fn second_difference(
    e: &Functional,
    a: &Mat2,
    x: &Mat2,
    t: f64,
    h: f64,
) -> Option<(f64, f64)> {
    let at = |s: f64| e.eval(&(*a + *x * s));
    let (lo, mid, hi) = (at(t - h), at(t), at(t + h));
    match (lo, mid, hi) {
        (ExtScalar::Finite(lo), ExtScalar::Finite(mid), ExtScalar::Finite(hi)) => {
            let scale = lo.abs().max(mid.abs()).max(hi.abs()).max(1.0);
            Some((hi - 2.0 * mid + lo, scale))
        }
        _ => None,
    }
}

/// Step size policy shared by the scans: h = 1e-3 (1 + |A| + |t||X|).
#[must_use]
pub fn scan_step(a: &Mat2, x: &Mat2, t: f64) -> f64 {
    1e-3 * (1.0 + a.op_norm() + t.abs() * x.op_norm())
}

/// Randomized second-difference scan along rank-one lines. Base points come
/// from `sampler`, directions are unit-norm rank-one dyads, offsets t are
/// uniform in [-1/2, 1/2]. Stencils leaving the domain are skipped and
/// counted. Deterministic for a given seed.
#[must_use]
pub fn rank_one_scan(
    e: &Functional,
    sampler: &MatrixSampler,
    n: usize,
    seed: u64,
) -> RankOneScanReport {
    let mut rng = seeded_rng(seed);
    let mut min_normalized = f64::INFINITY;
    let mut witness = RankOneWitness {
        a: Mat2::identity(),
        x: Mat2::rank_one(crate::C64::new(1.0, 0.0), crate::C64::new(1.0, 0.0)),
        t: 0.0,
    };
    let mut n_evaluated = 0;
    let mut n_skipped = 0;
    for _ in 0..n {
        let a = sampler.sample(&mut rng);
        let x = rank_one_direction(&mut rng);
        let t: f64 = rng.random_range(-0.5..0.5);
        let h = scan_step(&a, &x, t);
        match second_difference(e, &a, &x, t, h) {
            Some((d2, scale)) => {
                n_evaluated += 1;
                let normalized = d2 / scale;
                if normalized < min_normalized {
                    min_normalized = normalized;
                    witness = RankOneWitness { a, x, t };
                }
            }
            None => n_skipped += 1,
        }
    }
    RankOneScanReport {
        min_normalized,
        witness,
        n_evaluated,
        n_skipped,
        seed,
    }
}

/// Baker-Ericksen scan report; the witness is the worst (x, y) pair.
#[derive(Clone, Debug)]
pub struct BakerEricksenReport {
    pub min_value: f64,
    pub witness: (f64, f64),
    pub n_evaluated: usize,
    pub n_skipped: usize,
    pub seed: u64,
}

/// Finite-difference Baker-Ericksen quantity at diag(x, y):
/// (x d/dx - y d/dy) Phi / (x - y) with Phi(x, y) = E(diag(x, y)).
/// None when a stencil point is +infinity.
#[must_use]
pub fn baker_ericksen_quotient(e: &Functional, x: f64, y: f64) -> Option<f64> {
    let phi = |x: f64, y: f64| e.eval(&Mat2::diag(x, y)).finite();
    let hx = 1e-3 * (1.0 + x.abs());
    let hy = 1e-3 * (1.0 + y.abs());
    let dx = (phi(x + hx, y)? - phi(x - hx, y)?) / (2.0 * hx);
    let dy = (phi(x, y + hy)? - phi(x, y - hy)?) / (2.0 * hy);
    Some((x * dx - y * dy) / (x - y))
}

/// Randomized Baker-Ericksen scan over ordered pairs x > y > 0 (log-normal
/// magnitudes, relative gap at least 5% to keep the quotient conditioned).
/// For rank-one convex isotropic functionals the minimum is nonnegative up
/// to finite-difference noise.
#[must_use]
pub fn baker_ericksen_scan(e: &Functional, n: usize, seed: u64) -> BakerEricksenReport {
    let mut rng = seeded_rng(seed);
    let mut min_value = f64::INFINITY;
    let mut witness = (1.0, 1.0);
    let mut n_evaluated = 0;
    let mut n_skipped = 0;
    let mut drawn = 0usize;
    while drawn < n {
        let u: f64 = crate::sample::normal(&mut rng);
        let v: f64 = crate::sample::normal(&mut rng);
        let (mut x, mut y) = ((0.5 * u).exp(), (0.5 * v).exp());
        if x < y {
            core::mem::swap(&mut x, &mut y);
        }
        if x - y < 0.05 * x {
            continue; // ill-conditioned quotient; resample
        }
        drawn += 1;
        match baker_ericksen_quotient(e, x, y) {
            Some(q) => {
                n_evaluated += 1;
                if q < min_value {
                    min_value = q;
                    witness = (x, y);
                }
            }
            None => n_skipped += 1,
        }
    }
    BakerEricksenReport {
        min_value,
        witness,
        n_evaluated,
        n_skipped,
        seed,
    }
}
