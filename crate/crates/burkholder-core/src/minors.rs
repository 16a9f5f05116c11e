//! Minors certificates: finite convex combinations matching a target matrix
//! and its determinant, used to refute polyconvexity.

use crate::functional::Functional;
use crate::mat2::Mat2;
use crate::sample::gaussian_mat2;
use crate::scalar::ExtScalar;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // float methods under no_std come from this trait
use num_traits::Float;
use rand_chacha::ChaCha8Rng;

/// Error for invalid certificates.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateError(pub String);

impl core::fmt::Display for CertificateError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "certificate error: {}", self.0)
    }
}

impl core::error::Error for CertificateError {}

/// Weights w_i > 0 summing to 1, matrices A_i, and a target T with
/// sum w_i A_i = T and sum w_i det A_i = det T. For a polyconvex E,
/// sum w_i E(A_i) >= E(T); a certificate violating this refutes
/// polyconvexity of E.
#[derive(Clone, Debug)]
pub struct MinorsCertificate {
    pub weights: Vec<f64>,
    pub matrices: Vec<Mat2>,
    pub target: Mat2,
}

/// Result of testing a functional against a certificate.
#[derive(Clone, Debug)]
pub struct MinorsReport {
    /// sum w_i E(A_i)
    pub lhs: ExtScalar,
    /// E(target)
    pub rhs: ExtScalar,
    pub tol: f64,
    /// lhs < rhs - tol: polyconvexity refuted.
    pub refuted: bool,
}

impl MinorsCertificate {
    /// Checks weights (positive, sum 1) and both matching relations to `tol`.
    pub fn validate(&self, tol: f64) -> Result<(), CertificateError> {
        if self.weights.len() != self.matrices.len() || self.weights.is_empty() {
            return Err(CertificateError("weights/matrices length mismatch".into()));
        }
        let mut wsum = 0.0;
        let mut mean = Mat2::zero();
        let mut dmean = 0.0;
        for (&w, a) in self.weights.iter().zip(&self.matrices) {
            if !(w > 0.0) {
                return Err(CertificateError(format!("nonpositive weight {w}")));
            }
            wsum += w;
            mean = mean + *a * w;
            dmean += w * a.det();
        }
        if (wsum - 1.0).abs() > tol {
            return Err(CertificateError(format!("weights sum to {wsum}")));
        }
        let diff = mean - self.target;
        if diff.a_plus.norm() + diff.a_minus.norm() > tol {
            return Err(CertificateError("matrix mean does not match target".into()));
        }
        if (dmean - self.target.det()).abs() > tol {
            return Err(CertificateError(format!(
                "determinant mean {dmean} does not match target {}",
                self.target.det()
            )));
        }
        Ok(())
    }

    /// The reference three-matrix certificate with target Id:
    /// diag(3/10, 3/10), diag(2/3, 8), diag(8, 2/3) with weights
    /// 100/121, 21/242, 21/242. Both matching relations hold exactly in
    /// rational arithmetic.
    #[must_use]
    pub fn reference() -> Self {
        MinorsCertificate {
            weights: vec![100.0 / 121.0, 21.0 / 242.0, 21.0 / 242.0],
            matrices: vec![
                Mat2::diag(0.3, 0.3),
                Mat2::diag(2.0 / 3.0, 8.0),
                Mat2::diag(8.0, 2.0 / 3.0),
            ],
            target: Mat2::identity(),
        }
    }

    /// Scales every matrix and the target by t > 0; both matching relations
    /// are preserved (the determinant relation scales by t^2 on both sides).
    #[must_use]
    pub fn scaled(&self, t: f64) -> Self {
        MinorsCertificate {
            weights: self.weights.clone(),
            matrices: self.matrices.iter().map(|a| *a * t).collect(),
            target: self.target * t,
        }
    }

    /// Random certificate: draws weights and matrices, then moves the last
    /// matrix along a rank-one line. Both sides of the determinant relation
    /// are affine in that offset (rank-one directions kill the quadratic
    /// term), so the matching offset solves a linear equation. Returns None
    /// when the draw is degenerate.
    #[must_use]
    pub fn random(rng: &mut ChaCha8Rng, m: usize, positive_dets: bool) -> Option<Self> {
        use rand::Rng;
        assert!(m >= 2);
        let mut weights: Vec<f64> = (0..m).map(|_| rng.random_range(0.2..1.0)).collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        let mut matrices: Vec<Mat2> = (0..m).map(|_| gaussian_mat2(rng, 0.7)).collect();
        if positive_dets {
            for a in &mut matrices {
                // Reflect anticonformal part inside the conformal one.
                if a.det() <= 0.0 {
                    core::mem::swap(&mut a.a_plus, &mut a.a_minus);
                }
                if a.det() <= 0.05 {
                    a.a_plus *= 2.0 / (a.a_plus.norm() + 1e-9);
                }
            }
        }
        let r = crate::sample::rank_one_direction(rng);
        let wm = weights[m - 1];
        // g(s) = sum w det(A_i(s)) - det(T(s)) with A_m(s) = A_m + s R.
        let target0 = {
            let mut t = Mat2::zero();
            for (&w, a) in weights.iter().zip(&matrices) {
                t = t + *a * w;
            }
            t
        };
        let g = |s: f64| -> f64 {
            let am = matrices[m - 1] + r * s;
            let mut dsum = 0.0;
            for (i, (&w, a)) in weights.iter().zip(&matrices).enumerate() {
                dsum += w * if i == m - 1 { am.det() } else { a.det() };
            }
            let t = target0 + r * (wm * s);
            dsum - t.det()
        };
        let (g0, g1m) = (g(0.0), g(1.0));
        let slope = g1m - g0; // exact: g is affine in s
        if slope.abs() < 1e-3 {
            return None;
        }
        let s = -g0 / slope;
        if s.abs() > 50.0 {
            return None;
        }
        let mut matrices = matrices;
        matrices[m - 1] = matrices[m - 1] + r * s;
        let target = target0 + r * (wm * s);
        let cert = MinorsCertificate {
            weights,
            matrices,
            target,
        };
        if positive_dets
            && (cert.target.det() <= 0.01 || cert.matrices.iter().any(|a| a.det() <= 0.01))
        {
            return None;
        }
        cert.validate(1e-9).ok()?;
        Some(cert)
    }
}

/// Tests E against a certificate: refuted when
/// sum w_i E(A_i) < E(target) - tol.
#[must_use]
pub fn minors_check(e: &Functional, cert: &MinorsCertificate, tol: f64) -> MinorsReport {
    let mut lhs = ExtScalar::Finite(0.0);
    for (&w, a) in cert.weights.iter().zip(&cert.matrices) {
        lhs = lhs + e.eval(a).map(|v| v * w);
    }
    let rhs = e.eval(&cert.target);
    let refuted = match (lhs, rhs) {
        (ExtScalar::Finite(l), ExtScalar::Finite(r)) => l < r - tol,
        (ExtScalar::Finite(_), ExtScalar::PlusInfinity) => true,
        (ExtScalar::PlusInfinity, _) => false,
    };
    MinorsReport {
        lhs,
        rhs,
        tol,
        refuted,
    }
}
