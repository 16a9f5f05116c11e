//! Matrix algebra oracles: conformal coordinates against real 2x2 arithmetic.

use burkholder_core::sample::{gaussian_mat2, seeded_rng};
use burkholder_core::{C64, ExtScalar, Mat2};

/// Round-trip and composition agreement against real-entry arithmetic.
const REAL_TOL: f64 = 1e-13;

fn real_mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn max_entry_diff(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

#[test]
fn diagonal_conformal_parts() {
    let a = Mat2::diag(2.0 / 3.0, 8.0);
    assert!((a.a_plus.re - 13.0 / 3.0).abs() < 1e-15);
    assert!((a.a_minus.re - (-11.0 / 3.0)).abs() < 1e-15);
    assert_eq!(a.a_plus.im, 0.0);
    assert_eq!(a.a_minus.im, 0.0);
}

#[test]
fn real_round_trip() {
    let mut rng = seeded_rng(11);
    for _ in 0..1000 {
        let a = gaussian_mat2(&mut rng, 1.5);
        let back = Mat2::from_real(a.to_real());
        assert!((back.a_plus - a.a_plus).norm() < REAL_TOL);
        assert!((back.a_minus - a.a_minus).norm() < REAL_TOL);
    }
    // And the other direction, from entries.
    let m = [[1.0, 2.0], [3.0, 4.0]];
    assert_eq!(Mat2::from_real(m).to_real(), m);
}

#[test]
fn apply_matches_real_action() {
    let mut rng = seeded_rng(12);
    for _ in 0..1000 {
        let a = gaussian_mat2(&mut rng, 1.0);
        let m = a.to_real();
        let z = burkholder_core::sample::normal_c64(&mut rng);
        let w = a.apply(z);
        let wx = m[0][0] * z.re + m[0][1] * z.im;
        let wy = m[1][0] * z.re + m[1][1] * z.im;
        assert!((w.re - wx).abs() < REAL_TOL && (w.im - wy).abs() < REAL_TOL);
    }
}

#[test]
fn compose_matches_real_product() {
    let mut rng = seeded_rng(13);
    for _ in 0..1000 {
        let a = gaussian_mat2(&mut rng, 1.0);
        let b = gaussian_mat2(&mut rng, 1.0);
        let d = max_entry_diff(a.compose(&b).to_real(), real_mul(a.to_real(), b.to_real()));
        assert!(d < REAL_TOL, "compose mismatch {d}");
    }
}

#[test]
fn det_matches_real_determinant() {
    let mut rng = seeded_rng(14);
    for _ in 0..1000 {
        let a = gaussian_mat2(&mut rng, 1.0);
        let m = a.to_real();
        let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        assert!((a.det() - d).abs() < REAL_TOL);
    }
}

#[test]
fn singular_values_satisfy_real_invariants() {
    // big * small = |det| and big^2 + small^2 = sum of squared entries
    // (Frobenius), which pins both singular values without an SVD.
    let mut rng = seeded_rng(15);
    for _ in 0..1000 {
        let a = gaussian_mat2(&mut rng, 1.0);
        let (big, small) = a.sv();
        assert!(big >= small && small >= 0.0);
        assert!((big * small - a.det().abs()).abs() < 1e-12);
        let m = a.to_real();
        let frob: f64 = m.iter().flatten().map(|e| e * e).sum();
        assert!((big * big + small * small - frob).abs() < 1e-12);
        assert!((a.op_norm() - big).abs() < 1e-15);
    }
}

#[test]
fn rank_one_structure() {
    let mut rng = seeded_rng(16);
    for _ in 0..500 {
        let u = burkholder_core::sample::normal_c64(&mut rng);
        let v = burkholder_core::sample::normal_c64(&mut rng);
        let a = Mat2::rank_one(u, v);
        let half = u.norm() * v.norm() / 2.0;
        assert!((a.a_plus.norm() - half).abs() < REAL_TOL);
        assert!((a.a_minus.norm() - half).abs() < REAL_TOL);
        assert!(a.det().abs() < REAL_TOL);
        // Action: z -> u <v, z>_R with the real pairing Re(conj(v) z).
        let z = burkholder_core::sample::normal_c64(&mut rng);
        let expect = u * (v.conj() * z).re;
        assert!((a.apply(z) - expect).norm() < REAL_TOL);
    }
}

#[test]
fn inverse_composes_to_identity() {
    let mut rng = seeded_rng(17);
    let mut tested = 0;
    for _ in 0..1000 {
        let a = gaussian_mat2(&mut rng, 1.0);
        if a.det().abs() < 0.05 {
            continue;
        }
        tested += 1;
        let inv = a.inverse().expect("det != 0");
        let id = a.compose(&inv);
        assert!((id.a_plus - C64::new(1.0, 0.0)).norm() < 1e-10);
        assert!(id.a_minus.norm() < 1e-10);
        assert!((inv.det() - 1.0 / a.det()).abs() < 1e-10 * (1.0 + 1.0 / a.det().abs()));
    }
    assert!(tested > 500);
    assert_eq!(Mat2::diag(2.0, 4.0).inverse(), Some(Mat2::diag(0.5, 0.25)));
    assert_eq!(Mat2::rank_one(C64::new(1.0, 0.0), C64::new(1.0, 0.0)).inverse(), None);
}

#[test]
fn distortion_and_cone() {
    assert_eq!(Mat2::diag(2.0, 1.0).distortion(), ExtScalar::Finite(2.0));
    assert_eq!(Mat2::diag(1.0, -1.0).distortion(), ExtScalar::PlusInfinity);
    assert_eq!(Mat2::zero().distortion(), ExtScalar::PlusInfinity);
    // diag(k, 1) sits exactly on the boundary of the closed cone K = k.
    for k in [1.5, 2.0, 4.0] {
        assert!(Mat2::diag(k, 1.0).in_cone(k));
        assert!(!Mat2::diag(k + 1e-9, 1.0).in_cone(k));
        assert!(Mat2::diag(k - 1e-9, 1.0).in_cone(k));
    }
    assert!(!Mat2::diag(1.0, -1.0).in_cone(10.0));
}

#[test]
fn log_sv_consistent_with_sv() {
    let mut rng = seeded_rng(18);
    for _ in 0..500 {
        let a = gaussian_mat2(&mut rng, 1.0);
        let (big, small) = a.sv();
        let lsv = a.log_sv();
        assert!((lsv.log_big.exp() - big).abs() < 1e-12 * big);
        assert!(
            (lsv.log_det_abs.exp() - a.det().abs()).abs() < 1e-12 * big * big,
            "log det"
        );
        assert_eq!(lsv.det_positive, a.det() > 0.0);
        assert!(lsv.log_ratio >= 0.0);
        if small > 0.05 * big {
            // Away from degeneracy the ratio matches the direct difference.
            let direct = (big / small).ln();
            assert!((lsv.log_ratio - direct).abs() < 1e-10 * (1.0 + direct));
        }
    }
    // Degenerate maps: the ratio saturates rather than going NaN.
    let r1 = Mat2::rank_one(C64::new(1.0, 0.0), C64::new(0.0, 2.0));
    let lsv = r1.log_sv();
    assert_eq!(lsv.log_ratio, f64::INFINITY);
    assert_eq!(lsv.log_det_abs, f64::NEG_INFINITY);
    assert!(!lsv.det_positive);
    let z = Mat2::zero().log_sv();
    assert_eq!(z.log_big, f64::NEG_INFINITY);
    assert_eq!(z.log_ratio, 0.0);
}

#[test]
fn linear_ops_act_componentwise() {
    let a = Mat2::new(C64::new(1.0, 2.0), C64::new(-0.5, 0.25));
    let b = Mat2::new(C64::new(0.5, -1.0), C64::new(2.0, 1.0));
    let z = C64::new(0.3, -0.7);
    assert!(((a + b).apply(z) - (a.apply(z) + b.apply(z))).norm() < 1e-15);
    assert!(((a - b).apply(z) - (a.apply(z) - b.apply(z))).norm() < 1e-15);
    assert!(((a * 3.0).apply(z) - a.apply(z) * 3.0).norm() < 1e-15);
    assert!(((3.0 * a).apply(z) - a.apply(z) * 3.0).norm() < 1e-15);
    assert!(((-a).apply(z) + a.apply(z)).norm() < 1e-15);
}
