//! Real 2x2 matrices in conformal coordinates: A(z) = a+ z + a- conj(z).

use crate::scalar::ExtScalar;
use crate::C64;
use core::ops::{Add, Mul, Neg, Sub};
#[allow(unused_imports)] // float methods under no_std come from this trait
use num_traits::Float;

/// A real-linear map of the plane stored by its conformal and anticonformal
/// parts: `A(z) = a_plus * z + a_minus * conj(z)`.
///
/// Derived quantities: `det A = |a+|^2 - |a-|^2`, operator norm
/// `|A| = |a+| + |a-|` (the larger singular value; the Frobenius norm is not
/// part of the surface), singular values `(|a+|+|a-|, ||a+|-|a-||)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a_plus: C64,
    pub a_minus: C64,
}

/// Singular-value data stored in the log combinations that stay accurate at
/// extreme scales. Isotropic functionals evaluate on this form without
/// reconstructing the matrix.
///
/// The three logs are redundant (`log_ratio = 2 log_big - log_det_abs`) but
/// each is computed by its own cancellation-free route: for maps whose
/// singular values share a huge common factor (radial maps near the origin),
/// the difference `log sigma_1 - log sigma_2` of the rounded logs would lose
/// every significant digit, so the ratio is carried separately.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogSv {
    /// log sigma_1; `-inf` for the zero map.
    pub log_big: f64,
    /// log(sigma_1 / sigma_2) >= 0; `+inf` for singular maps.
    pub log_ratio: f64,
    /// log(sigma_1 sigma_2) = log |det|; `-inf` for singular maps.
    pub log_det_abs: f64,
    /// det > 0 strictly (false for singular maps).
    pub det_positive: bool,
}

impl Mat2 {
    #[must_use]
    pub fn new(a_plus: C64, a_minus: C64) -> Self {
        Mat2 { a_plus, a_minus }
    }

    #[must_use]
    pub fn identity() -> Self {
        Mat2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    }

    #[must_use]
    pub fn zero() -> Self {
        Mat2::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }

    /// Diagonal matrix diag(x, y): a+ = (x+y)/2, a- = (x-y)/2.
    #[must_use]
    pub fn diag(x: f64, y: f64) -> Self {
        Mat2::new(C64::new((x + y) / 2.0, 0.0), C64::new((x - y) / 2.0, 0.0))
    }

    /// From real entries [[m11, m12], [m21, m22]] acting on (x, y).
    #[must_use]
    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        let [[m11, m12], [m21, m22]] = m;
        Mat2::new(
            C64::new((m11 + m22) / 2.0, (m21 - m12) / 2.0),
            C64::new((m11 - m22) / 2.0, (m21 + m12) / 2.0),
        )
    }

    /// Real entries [[m11, m12], [m21, m22]]; inverse of `from_real`.
    #[must_use]
    pub fn to_real(&self) -> [[f64; 2]; 2] {
        let (p, m) = (self.a_plus, self.a_minus);
        [[p.re + m.re, m.im - p.im], [p.im + m.im, p.re - m.re]]
    }

    /// Rank-one map u (x) v: z |-> u * <v, z>_R. Its conformal parts satisfy
    /// |a+| = |a-| = |u||v|/2, so det = 0.
    #[must_use]
    pub fn rank_one(u: C64, v: C64) -> Self {
        Mat2::new(u * v.conj() / 2.0, u * v / 2.0)
    }

    /// Applies the real-linear map to z.
    #[must_use]
    pub fn apply(&self, z: C64) -> C64 {
        self.a_plus * z + self.a_minus * z.conj()
    }

    /// Composition (self after other) as real-linear maps.
    #[must_use]
    pub fn compose(&self, other: &Mat2) -> Mat2 {
        Mat2::new(
            self.a_plus * other.a_plus + self.a_minus * other.a_minus.conj(),
            self.a_plus * other.a_minus + self.a_minus * other.a_plus.conj(),
        )
    }

    #[must_use]
    pub fn det(&self) -> f64 {
        self.a_plus.norm_sqr() - self.a_minus.norm_sqr()
    }

    /// Operator norm |A| = |a+| + |a-| (largest singular value).
    #[must_use]
    pub fn op_norm(&self) -> f64 {
        self.a_plus.norm() + self.a_minus.norm()
    }

    /// Singular values (big, small) = (|a+|+|a-|, ||a+|-|a-||).
    #[must_use]
    pub fn sv(&self) -> (f64, f64) {
        let (p, m) = (self.a_plus.norm(), self.a_minus.norm());
        (p + m, (p - m).abs())
    }

    /// Log-singular-value form. The determinant route sigma_2 = |det| /
    /// sigma_1 keeps the ratio accurate even when |a+| and |a-| nearly
    /// coincide and the direct difference would cancel.
    #[must_use]
    pub fn log_sv(&self) -> LogSv {
        let big = self.op_norm();
        if big == 0.0 {
            return LogSv {
                log_big: f64::NEG_INFINITY,
                log_ratio: 0.0,
                log_det_abs: f64::NEG_INFINITY,
                det_positive: false,
            };
        }
        let det = self.det();
        let log_big = big.ln();
        let log_det_abs = det.abs().ln();
        LogSv {
            log_big,
            log_ratio: 2.0 * log_big - log_det_abs,
            log_det_abs,
            det_positive: det > 0.0,
        }
    }

    /// Distortion K_A = |A|^2 / det A; +infinity when det A <= 0.
    #[must_use]
    pub fn distortion(&self) -> ExtScalar {
        let d = self.det();
        if d <= 0.0 {
            ExtScalar::PlusInfinity
        } else {
            let n = self.op_norm();
            ExtScalar::from_computed(n * n / d)
        }
    }

    /// Membership in the closed distortion cone: |A|^2 <= k * det A.
    #[must_use]
    pub fn in_cone(&self, k: f64) -> bool {
        let n = self.op_norm();
        n * n <= k * self.det()
    }

    /// Inverse map, None when det = 0. For det != 0:
    /// A^-1 = (conj(a+), -a-) / det.
    #[must_use]
    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d == 0.0 {
            None
        } else {
            Some(Mat2::new(self.a_plus.conj() / d, -self.a_minus / d))
        }
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(self.a_plus + rhs.a_plus, self.a_minus + rhs.a_minus)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(self.a_plus - rhs.a_plus, self.a_minus - rhs.a_minus)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a_plus, -self.a_minus)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, t: f64) -> Mat2 {
        Mat2::new(self.a_plus * t, self.a_minus * t)
    }
}

impl Mul<Mat2> for f64 {
    type Output = Mat2;
    fn mul(self, a: Mat2) -> Mat2 {
        a * self
    }
}
