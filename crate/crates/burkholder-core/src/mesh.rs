//! Polar triangulations of the unit disk and per-triangle derivatives for
//! piecewise-linear maps.
//!
//! A P1 map is determined by complex nodal values; on each triangle its
//! derivative is a constant `Mat2` obtained from precomputed complex
//! coefficients: a_plus = sum alpha_i f_i, a_minus = sum beta_i f_i.

use crate::mat2::Mat2;
use crate::C64;
use alloc::vec::Vec;

/// Triangulated unit disk: a center fan plus quad-split annular rings.
#[derive(Clone, Debug)]
pub struct DiskMesh {
    pub vertices: Vec<C64>,
    /// Positively oriented triangles (counterclockwise vertex order).
    pub triangles: Vec<[usize; 3]>,
    /// Indices of the outermost ring (unit circle), in angular order.
    pub boundary: Vec<usize>,
    pub is_boundary: Vec<bool>,
    pub n_rings: usize,
    pub n_sectors: usize,
}

/// Precomputed linear forms for one triangle's derivative.
#[derive(Clone, Copy, Debug)]
pub struct TriCoeffs {
    pub v: [usize; 3],
    pub alpha: [C64; 3],
    pub beta: [C64; 3],
    pub area: f64,
}

impl DiskMesh {
    /// Polar mesh with `n_rings` concentric rings of `n_sectors` vertices,
    /// ring i at radius i / n_rings, vertex index 1 + (i-1) n_sectors + j.
    #[must_use]
    pub fn polar(n_rings: usize, n_sectors: usize) -> Self {
        assert!(n_rings >= 1 && n_sectors >= 3, "mesh too small");
        let (nr, ns) = (n_rings, n_sectors);
        let mut vertices = Vec::with_capacity(1 + nr * ns);
        vertices.push(C64::new(0.0, 0.0));
        for i in 1..=nr {
            let r = i as f64 / nr as f64;
            for j in 0..ns {
                let th = 2.0 * core::f64::consts::PI * j as f64 / ns as f64;
                vertices.push(C64::from_polar(r, th));
            }
        }
        let idx = |i: usize, j: usize| 1 + (i - 1) * ns + (j % ns);
        let mut triangles = Vec::with_capacity(ns * (2 * nr - 1));
        for j in 0..ns {
            triangles.push([0, idx(1, j), idx(1, j + 1)]);
        }
        for i in 1..nr {
            for j in 0..ns {
                let (v00, v01) = (idx(i, j), idx(i, j + 1));
                let (v10, v11) = (idx(i + 1, j), idx(i + 1, j + 1));
                triangles.push([v00, v10, v11]);
                triangles.push([v00, v11, v01]);
            }
        }
        let boundary: Vec<usize> = (0..ns).map(|j| idx(nr, j)).collect();
        let mut is_boundary = alloc::vec![false; vertices.len()];
        for &b in &boundary {
            is_boundary[b] = true;
        }
        DiskMesh {
            vertices,
            triangles,
            boundary,
            is_boundary,
            n_rings: nr,
            n_sectors: ns,
        }
    }

    #[must_use]
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Signed area of triangle `t` (positive for all mesh triangles).
    #[must_use]
    pub fn signed_area(&self, t: [usize; 3]) -> f64 {
        let [a, b, c] = t.map(|i| self.vertices[i]);
        let (e1, e2) = (b - a, c - a);
        0.5 * (e1.re * e2.im - e1.im * e2.re)
    }

    /// Sum of triangle areas (slightly below pi; the floor constants in the
    /// minimization experiments use this, not pi).
    #[must_use]
    pub fn mesh_area(&self) -> f64 {
        self.triangles.iter().map(|&t| self.signed_area(t)).sum()
    }

    /// Derivative coefficients for every triangle.
    #[must_use]
    pub fn coeffs(&self) -> Vec<TriCoeffs> {
        self.triangles.iter().map(|&t| self.tri_coeffs(t)).collect()
    }

    fn tri_coeffs(&self, t: [usize; 3]) -> TriCoeffs {
        let [a, b, c] = t.map(|i| self.vertices[i]);
        let (e1, e2) = (b - a, c - a);
        let d = e1.re * e2.im - e1.im * e2.re;
        debug_assert!(d > 0.0, "triangle must be positively oriented");
        let alpha2 = C64::new(e2.im, e2.re) / (2.0 * d);
        let alpha3 = -C64::new(e1.im, e1.re) / (2.0 * d);
        let beta2 = C64::new(e2.im, -e2.re) / (2.0 * d);
        let beta3 = -C64::new(e1.im, -e1.re) / (2.0 * d);
        TriCoeffs {
            v: t,
            alpha: [-alpha2 - alpha3, alpha2, alpha3],
            beta: [-beta2 - beta3, beta2, beta3],
            area: 0.5 * d,
        }
    }
}

impl TriCoeffs {
    /// Constant derivative of the P1 map with nodal values `f` on this
    /// triangle.
    #[must_use]
    pub fn deriv(&self, f: &[C64]) -> Mat2 {
        let mut a_plus = C64::new(0.0, 0.0);
        let mut a_minus = C64::new(0.0, 0.0);
        for k in 0..3 {
            a_plus += self.alpha[k] * f[self.v[k]];
            a_minus += self.beta[k] * f[self.v[k]];
        }
        Mat2 { a_plus, a_minus }
    }
}
