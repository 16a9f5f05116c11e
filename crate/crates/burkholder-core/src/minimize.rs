//! Energy minimization over piecewise-linear disk maps with frozen boundary
//! values.
//!
//! The objective is sum_T area_T e(Df_T), optionally plus a quadratic
//! distortion penalty w max(0, |Df|^2 - K det Df)^2 per triangle. Gradients
//! are computed in Wirtinger form: for a density e(|a_plus|, |a_minus|, det)
//! the derivative with respect to the nodal value f_v is assembled from the
//! triangle coefficients alpha_v, beta_v of `TriCoeffs`. The norms are
//! smoothed as |a|_eps = sqrt(|a|^2 + eps^2) during descent; reported
//! energies are exact (eps = 0).

use crate::functional::{critical_exponent, DomainError, Functional};
use crate::mat2::Mat2;
use crate::mesh::{DiskMesh, TriCoeffs};
use crate::sample::{normal_c64, seeded_rng};
use crate::scalar::ExtScalar;
use crate::sum::pairwise_sum;
use crate::C64;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // float methods under no_std come from this trait
use num_traits::Float;

/// Energy density for minimization. `Dirichlet` is the classical
/// 2(|f_z|^2 + |f_zbar|^2); `Augmented` adds a p-growth term to a base
/// functional (polyconvex elastic energies G(det) + H(K) + coeff |A|^p).
#[derive(Clone, Debug)]
pub enum Density {
    Functional(Functional),
    Dirichlet,
    Augmented {
        base: Functional,
        power_p: f64,
        coeff: f64,
    },
}

/// Value and Wirtinger derivatives of a density at one matrix.
#[derive(Clone, Copy, Debug)]
pub struct DensityGrad {
    pub value: f64,
    pub g_plus: C64,
    pub g_minus: C64,
}

/// Partial derivatives (value, e_x, e_y, e_det) of an isotropic density in
/// the variables x = |a_plus|, y = |a_minus|, det.
fn functional_parts(e: &Functional, x: f64, y: f64, det: f64) -> Option<(f64, f64, f64, f64)> {
    let n = x + y;
    match e {
        Functional::Burkholder { p } => {
            let t = n.powf(p - 2.0);
            let core = (p - 1.0) * t * ((p - 1.0) * y - x);
            let v = t * n * ((p - 1.0) * y - x);
            Some((v, core - t * n, core + (p - 1.0) * t * n, 0.0))
        }
        Functional::LocalBurkholder { k, p } => {
            if n * n > k * det {
                return None;
            }
            functional_parts(&Functional::Burkholder { p: *p }, x, y, det)
        }
        Functional::FFunc => {
            let ex = 2.0 * n - 2.0 * det / n;
            Some((n * n - (1.0 + 2.0 * n.ln()) * det, ex, ex, -(1.0 + 2.0 * n.ln())))
        }
        Functional::WFunc => {
            if det <= 0.0 {
                return None;
            }
            let k = n * n / det;
            let ex = (1.0 - 1.0 / k) * 2.0 * n / det;
            Some((k - k.ln() + det.ln(), ex, ex, (2.0 - k) / det))
        }
        Functional::Ec { c } => {
            let (v, ex, _, ed) = functional_parts(&Functional::WFunc, x, y, det)?;
            let s = 1.0 / det + n * n;
            let ex2 = ex + c * 2.0 * s * 2.0 * n;
            Some((v + c * s * s, ex2, ex2, ed + c * 2.0 * s * (-1.0 / (det * det))))
        }
        Functional::Split { g, h } => {
            if det <= 0.0 {
                return None;
            }
            let k = n * n / det;
            let hp = h.d1(k);
            let ex = hp * 2.0 * n / det;
            Some((
                g.eval(det) + h.eval(k),
                ex,
                ex,
                g.d1(det) + hp * (-k / det),
            ))
        }
        Functional::WTilde | Functional::Shield(_) => None,
    }
}

impl Density {
    /// Exact density value (no smoothing).
    #[must_use]
    pub fn eval(&self, a: &Mat2) -> ExtScalar {
        match self {
            Density::Functional(e) => e.eval(a),
            Density::Dirichlet => {
                ExtScalar::Finite(2.0 * (a.a_plus.norm_sqr() + a.a_minus.norm_sqr()))
            }
            Density::Augmented {
                base,
                power_p,
                coeff,
            } => base.eval(a) + coeff * a.op_norm().powf(*power_p),
        }
    }

    /// Smoothed value and Wirtinger gradient; None encodes +infinity
    /// (outside the density's domain).
    #[must_use]
    pub fn eval_grad(&self, a: &Mat2, eps: f64) -> Option<DensityGrad> {
        if let Density::Dirichlet = self {
            return Some(DensityGrad {
                value: 2.0 * (a.a_plus.norm_sqr() + a.a_minus.norm_sqr()),
                g_plus: 2.0 * a.a_plus.conj(),
                g_minus: 2.0 * a.a_minus.conj(),
            });
        }
        let x = (a.a_plus.norm_sqr() + eps * eps).sqrt();
        let y = (a.a_minus.norm_sqr() + eps * eps).sqrt();
        let det = a.det();
        let (value, e_x, e_y, e_det) = match self {
            Density::Functional(e) => functional_parts(e, x, y, det)?,
            Density::Augmented {
                base,
                power_p,
                coeff,
            } => {
                let (v, ex, ey, ed) = functional_parts(base, x, y, det)?;
                let n = x + y;
                let extra = coeff * power_p * n.powf(power_p - 1.0);
                (v + coeff * n.powf(*power_p), ex + extra, ey + extra, ed)
            }
            Density::Dirichlet => unreachable!(),
        };
        if !value.is_finite() {
            return None;
        }
        Some(DensityGrad {
            value,
            g_plus: (e_x / (2.0 * x) + e_det) * a.a_plus.conj(),
            g_minus: (e_y / (2.0 * y) - e_det) * a.a_minus.conj(),
        })
    }

    pub fn validate_for_minimization(&self) -> Result<(), DomainError> {
        let base = match self {
            Density::Dirichlet => return Ok(()),
            Density::Functional(e) => e,
            Density::Augmented { base, .. } => base,
        };
        match base {
            Functional::WTilde | Functional::Shield(_) => Err(DomainError(
                "density has no smooth gradient; not supported in minimization".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Discrete energy on a disk mesh.
pub struct EnergyModel<'a> {
    pub mesh: &'a DiskMesh,
    pub coeffs: Vec<TriCoeffs>,
    pub density: Density,
    /// Distortion bound for the quadratic penalty, if any.
    pub constraint_k: Option<f64>,
    pub penalty_weight: f64,
    pub eps: f64,
}

impl<'a> EnergyModel<'a> {
    pub fn new(mesh: &'a DiskMesh, density: Density) -> Result<Self, DomainError> {
        density.validate_for_minimization()?;
        Ok(EnergyModel {
            mesh,
            coeffs: mesh.coeffs(),
            density,
            constraint_k: None,
            penalty_weight: 0.0,
            eps: 1e-6,
        })
    }

    /// Smoothed objective (density + penalty); fills `grad` when given,
    /// zeroing boundary entries. None encodes +infinity.
    pub fn objective(&self, f: &[C64], mut grad: Option<&mut [C64]>) -> Option<f64> {
        if let Some(g) = grad.as_deref_mut() {
            g.fill(C64::new(0.0, 0.0));
        }
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let a = c.deriv(f);
            let dg = self.density.eval_grad(&a, self.eps)?;
            let mut value = dg.value;
            let (mut gp, mut gm) = (dg.g_plus, dg.g_minus);
            if let Some(k) = self.constraint_k {
                let x = (a.a_plus.norm_sqr() + self.eps * self.eps).sqrt();
                let y = (a.a_minus.norm_sqr() + self.eps * self.eps).sqrt();
                let n = x + y;
                let m = n * n - k * a.det();
                if m > 0.0 {
                    let w = self.penalty_weight;
                    value += w * m * m;
                    gp += 2.0 * w * m * (n / x - k) * a.a_plus.conj();
                    gm += 2.0 * w * m * (n / y + k) * a.a_minus.conj();
                }
            }
            if !value.is_finite() {
                return None;
            }
            terms.push(c.area * value);
            if let Some(g) = grad.as_deref_mut() {
                for i in 0..3 {
                    let gi = gp * c.alpha[i] + gm * c.beta[i];
                    g[c.v[i]] += 2.0 * c.area * gi.conj();
                }
            }
        }
        if let Some(g) = grad.as_deref_mut() {
            for &b in &self.mesh.boundary {
                g[b] = C64::new(0.0, 0.0);
            }
        }
        Some(pairwise_sum(&terms))
    }

    /// Exact density energy sum area * e(Df), no smoothing, no penalty.
    #[must_use]
    pub fn exact_energy(&self, f: &[C64]) -> ExtScalar {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            match self.density.eval(&c.deriv(f)) {
                ExtScalar::Finite(v) => terms.push(c.area * v),
                ExtScalar::PlusInfinity => return ExtScalar::PlusInfinity,
            }
        }
        ExtScalar::Finite(pairwise_sum(&terms))
    }

    /// Largest per-triangle distortion of f.
    #[must_use]
    pub fn max_distortion(&self, f: &[C64]) -> ExtScalar {
        let mut worst = ExtScalar::Finite(0.0);
        for c in &self.coeffs {
            let d = c.deriv(f).distortion();
            if d > worst {
                worst = d;
            }
        }
        worst
    }
}

/// Triangle-wise total of det Df; a discrete null Lagrangian (depends only
/// on boundary values for fixed mesh).
#[must_use]
pub fn total_det(coeffs: &[TriCoeffs], f: &[C64]) -> f64 {
    let terms: Vec<f64> = coeffs.iter().map(|c| c.area * c.deriv(f).det()).collect();
    pairwise_sum(&terms)
}

#[derive(Clone, Copy, Debug)]
pub struct LbfgsOptions {
    pub history: usize,
    pub max_iters: usize,
    /// Stop when |grad| <= grad_tol (1 + |E|).
    pub grad_tol: f64,
    pub c1: f64,
    pub max_backtracks: u32,
}

impl Default for LbfgsOptions {
    fn default() -> Self {
        LbfgsOptions {
            history: 8,
            max_iters: 400,
            grad_tol: 1e-7,
            c1: 1e-4,
            max_backtracks: 40,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeResult {
    pub f: Vec<C64>,
    /// Final smoothed objective (density + penalty).
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    pub grad_norm: f64,
    /// Exact density energy at the start and every accepted iterate.
    pub exact_history: Vec<f64>,
}

fn rdot(a: &[C64], b: &[C64]) -> f64 {
    let terms: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(u, v)| u.re * v.re + u.im * v.im)
        .collect();
    pairwise_sum(&terms)
}

fn norm(a: &[C64]) -> f64 {
    rdot(a, a).sqrt()
}

/// L-BFGS with Armijo backtracking. Boundary values of `f0` are kept fixed
/// (their gradient entries are zero). Errors if the start has infinite
/// objective.
pub fn minimize(
    model: &EnergyModel,
    f0: &[C64],
    opts: &LbfgsOptions,
) -> Result<MinimizeResult, DomainError> {
    let n = f0.len();
    let mut f = f0.to_vec();
    let mut grad = vec![C64::new(0.0, 0.0); n];
    let mut e = model
        .objective(&f, Some(&mut grad))
        .ok_or_else(|| DomainError("initial configuration has infinite energy".into()))?;
    let mut hist: VecDeque<(Vec<C64>, Vec<C64>, f64)> = VecDeque::new();
    let mut exact_history = vec![model.exact_energy(&f).to_report_f64()];
    let mut converged = false;
    let mut iterations = 0;
    let mut gnorm = norm(&grad);
    for it in 0..opts.max_iters {
        if gnorm <= opts.grad_tol * (1.0 + e.abs()) {
            converged = true;
            break;
        }
        let mut q = grad.clone();
        let mut alphas = Vec::with_capacity(hist.len());
        for (s, yv, rho) in hist.iter().rev() {
            let a = rho * rdot(s, &q);
            alphas.push(a);
            for (qi, yi) in q.iter_mut().zip(yv) {
                *qi -= a * yi;
            }
        }
        let gamma = match hist.back() {
            Some((s, yv, _)) => rdot(s, yv) / rdot(yv, yv),
            None => 1.0 / gnorm.max(1.0),
        };
        for qi in &mut q {
            *qi *= gamma;
        }
        for ((s, yv, rho), a) in hist.iter().zip(alphas.iter().rev()) {
            let b = rho * rdot(yv, &q);
            for (qi, si) in q.iter_mut().zip(s) {
                *qi += (a - b) * si;
            }
        }
        let mut dir: Vec<C64> = q.iter().map(|z| -z).collect();
        let mut slope = rdot(&grad, &dir);
        if !(slope < 0.0) {
            // model direction unusable; restart from steepest descent
            hist.clear();
            dir = grad.iter().map(|z| -z / gnorm.max(1.0)).collect();
            slope = rdot(&grad, &dir);
        }
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..opts.max_backtracks {
            let trial: Vec<C64> = f.iter().zip(&dir).map(|(a, d)| a + t * d).collect();
            if let Some(et) = model.objective(&trial, None) {
                if et <= e + opts.c1 * t * slope {
                    accepted = Some((trial, et));
                    break;
                }
            }
            t *= 0.5;
        }
        let Some((fnew, enew)) = accepted else {
            break; // no acceptable step: local flatness at line-search scale
        };
        let mut gnew = vec![C64::new(0.0, 0.0); n];
        model
            .objective(&fnew, Some(&mut gnew))
            .expect("accepted step has finite objective");
        let s: Vec<C64> = fnew.iter().zip(&f).map(|(a, b)| a - b).collect();
        let yv: Vec<C64> = gnew.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sy = rdot(&s, &yv);
        if sy > 1e-14 * norm(&s) * norm(&yv) {
            hist.push_back((s, yv, 1.0 / sy));
            while hist.len() > opts.history {
                hist.pop_front();
            }
        }
        f = fnew;
        grad = gnew;
        e = enew;
        gnorm = norm(&grad);
        exact_history.push(model.exact_energy(&f).to_report_f64());
        iterations = it + 1;
    }
    if gnorm <= opts.grad_tol * (1.0 + e.abs()) {
        converged = true;
    }
    Ok(MinimizeResult {
        f,
        objective: e,
        iterations,
        converged,
        grad_norm: gnorm,
        exact_history,
    })
}

/// One multistart run of a constrained experiment.
#[derive(Clone, Debug)]
pub struct StartRun {
    pub start: usize,
    pub converged: bool,
    pub iterations: usize,
    /// Exact density energy of the final iterate.
    pub energy: f64,
    pub k_max: f64,
    /// Energy after snapping each out-of-cone triangle derivative to the
    /// cone boundary (diagnostic; the snap acts matrix-wise, not map-wise).
    pub snapped_energy: f64,
    pub snap_max: f64,
}

/// Constrained Burkholder minimization: boundary trace A z + A conj(z)
/// component-wise, distortion penalty toward |Df|^2 <= K det Df. The
/// quasiconvexity floor is mesh_area * B_p(A).
#[derive(Clone, Debug)]
pub struct BurkholderMinReport {
    pub p: f64,
    pub k: f64,
    pub a: Mat2,
    pub mesh_area: f64,
    pub floor: f64,
    pub runs: Vec<StartRun>,
    pub best: f64,
    /// Every converged run's energy >= floor - 1e-3 mesh_area.
    pub all_above_floor: bool,
    /// Best energy <= floor + 1e-2 mesh_area.
    pub best_near_floor: bool,
}

const PENALTY_STAGES: [f64; 5] = [1e1, 1e2, 1e3, 1e4, 1e5];

pub fn burkholder_min_experiment(
    p: f64,
    k: f64,
    a: Mat2,
    mesh: &DiskMesh,
    n_starts: usize,
    seed: u64,
) -> Result<BurkholderMinReport, DomainError> {
    let p_crit = critical_exponent(k)?;
    if !(p >= 2.0) || p >= p_crit {
        return Err(DomainError(format!(
            "need 2 <= p < {p_crit} for distortion bound {k}, got p = {p}"
        )));
    }
    let nrm = a.op_norm();
    if !(nrm * nrm < k * a.det()) {
        return Err(DomainError(
            "boundary matrix must lie strictly inside the distortion cone".into(),
        ));
    }
    let density = Density::Functional(Functional::Burkholder { p });
    let mut model = EnergyModel::new(mesh, density)?;
    model.constraint_k = Some(k);
    let mesh_area = mesh.mesh_area();
    let bp = Functional::Burkholder { p }.eval(&a).unwrap_finite();
    let floor = mesh_area * bp;
    let mut rng = seeded_rng(seed);
    let mut runs = Vec::with_capacity(n_starts);
    for start in 0..n_starts {
        let mut f: Vec<C64> = mesh.vertices.iter().map(|&z| a.apply(z)).collect();
        if start > 0 {
            for (i, v) in f.iter_mut().enumerate() {
                if !mesh.is_boundary[i] {
                    *v += 0.05 * normal_c64(&mut rng);
                }
            }
        }
        let mut converged = false;
        let mut iterations = 0;
        for (si, &w) in PENALTY_STAGES.iter().enumerate() {
            model.penalty_weight = w;
            let opts = LbfgsOptions {
                max_iters: if si + 1 == PENALTY_STAGES.len() { 400 } else { 300 },
                ..LbfgsOptions::default()
            };
            let res = minimize(&model, &f, &opts)?;
            f = res.f;
            converged = res.converged;
            iterations += res.iterations;
        }
        let energy = model.exact_energy(&f).to_report_f64();
        let k_max = model.max_distortion(&f).to_report_f64();
        let (snapped_energy, snap_max) = snap_to_cone_energy(&model, &f, p, k);
        runs.push(StartRun {
            start,
            converged,
            iterations,
            energy,
            k_max,
            snapped_energy,
            snap_max,
        });
    }
    let best = runs
        .iter()
        .filter(|r| r.converged)
        .map(|r| r.energy)
        .fold(f64::INFINITY, f64::min);
    let all_above_floor = runs
        .iter()
        .filter(|r| r.converged)
        .all(|r| r.energy >= floor - 1e-3 * mesh_area);
    let best_near_floor = best <= floor + 1e-2 * mesh_area;
    Ok(BurkholderMinReport {
        p,
        k,
        a,
        mesh_area,
        floor,
        runs,
        best,
        all_above_floor,
        best_near_floor,
    })
}

/// Per-triangle cone snap: derivatives with |A|^2 > K det A get their
/// conformal ratio pulled to the cone boundary (y -> x (K-1)/(K+1)) before
/// evaluating. Returns (snapped energy, largest snap distance).
fn snap_to_cone_energy(model: &EnergyModel, f: &[C64], p: f64, k: f64) -> (f64, f64) {
    let mut terms = Vec::with_capacity(model.coeffs.len());
    let mut snap_max: f64 = 0.0;
    for c in &model.coeffs {
        let a = c.deriv(f);
        let (x, y) = (a.a_plus.norm(), a.a_minus.norm());
        let n = x + y;
        let yc = if n * n <= k * a.det() {
            y
        } else {
            let ys = x * (k - 1.0) / (k + 1.0);
            snap_max = snap_max.max(y - ys);
            ys
        };
        let v = (x + yc).powf(p - 1.0) * ((p - 1.0) * yc - x);
        terms.push(c.area * v);
    }
    (pairwise_sum(&terms), snap_max)
}

/// Coercive-energy experiment: E_c admits the pointwise lower bound
/// 3/2 + log sqrt(2c), so every iterate's energy must stay at or above
/// bound * mesh_area.
#[derive(Clone, Debug)]
pub struct EcMinReport {
    pub c: f64,
    pub mesh_area: f64,
    /// (3/2 + log sqrt(2c)) * mesh_area.
    pub floor: f64,
    pub runs: Vec<(bool, f64, usize)>,
    pub best: f64,
    pub min_iterate_energy: f64,
    pub all_iterates_above: bool,
}

pub fn ec_min_experiment(
    c: f64,
    mesh: &DiskMesh,
    n_starts: usize,
    seed: u64,
) -> Result<EcMinReport, DomainError> {
    let model = EnergyModel::new(mesh, Density::Functional(Functional::ec(c)?))?;
    let mesh_area = mesh.mesh_area();
    let floor = (1.5 + (2.0 * c).sqrt().ln()) * mesh_area;
    let mut rng = seeded_rng(seed);
    let mut runs = Vec::with_capacity(n_starts);
    let mut best = f64::INFINITY;
    let mut min_iterate = f64::INFINITY;
    for start in 0..n_starts {
        let mut f: Vec<C64> = mesh.vertices.clone();
        if start > 0 {
            for (i, v) in f.iter_mut().enumerate() {
                if !mesh.is_boundary[i] {
                    *v += 0.1 * normal_c64(&mut rng);
                }
            }
        }
        let res = minimize(&model, &f, &LbfgsOptions::default())?;
        let e = model.exact_energy(&res.f).to_report_f64();
        best = best.min(e);
        for &h in &res.exact_history {
            min_iterate = min_iterate.min(h);
        }
        runs.push((res.converged, e, res.iterations));
    }
    let all_iterates_above = min_iterate >= floor - 1e-9 * mesh_area.abs();
    Ok(EcMinReport {
        c,
        mesh_area,
        floor,
        runs,
        best,
        min_iterate_energy: min_iterate,
        all_iterates_above,
    })
}

/// Polyconvex elastic experiment G(det) + H(K) + coeff |A|^p with boundary
/// trace A. Reports the best energy, the distortion of the minimizer, and
/// the integral pair of the distortion-regularity diagnostic
/// int log^q(e + 1/J) dm vs 1 + int K^q dm (no assertion; q is the
/// caller's growth exponent for H).
#[derive(Clone, Debug)]
pub struct ElasticMinReport {
    pub best: f64,
    pub k_max: f64,
    pub kor_lhs: f64,
    pub kor_rhs_integral: f64,
    pub runs: Vec<(bool, f64, usize)>,
}

#[allow(clippy::too_many_arguments)]
pub fn elastic_min_experiment(
    g: crate::functional::ScalarFn,
    h: crate::functional::ScalarFn,
    q: f64,
    power_p: f64,
    coeff: f64,
    a: Mat2,
    mesh: &DiskMesh,
    n_starts: usize,
    seed: u64,
) -> Result<ElasticMinReport, DomainError> {
    let density = Density::Augmented {
        base: Functional::Split { g, h },
        power_p,
        coeff,
    };
    let model = EnergyModel::new(mesh, density)?;
    let mut rng = seeded_rng(seed);
    let mut runs = Vec::with_capacity(n_starts);
    let mut best = f64::INFINITY;
    let mut best_f: Option<Vec<C64>> = None;
    for start in 0..n_starts {
        let mut f: Vec<C64> = mesh.vertices.iter().map(|&z| a.apply(z)).collect();
        if start > 0 {
            for (i, v) in f.iter_mut().enumerate() {
                if !mesh.is_boundary[i] {
                    *v += 0.05 * normal_c64(&mut rng);
                }
            }
        }
        let res = minimize(&model, &f, &LbfgsOptions::default())?;
        let e = model.exact_energy(&res.f).to_report_f64();
        if e < best {
            best = e;
            best_f = Some(res.f.clone());
        }
        runs.push((res.converged, e, res.iterations));
    }
    let f = best_f.ok_or_else(|| DomainError("no start produced a finite energy".into()))?;
    let k_max = model.max_distortion(&f).to_report_f64();
    let mut lhs_terms = Vec::with_capacity(model.coeffs.len());
    let mut rhs_terms = Vec::with_capacity(model.coeffs.len());
    for c in &model.coeffs {
        let d = c.deriv(&f);
        let j = d.det();
        let lhs = if j > 0.0 {
            (core::f64::consts::E + 1.0 / j).ln().powf(q)
        } else {
            f64::INFINITY
        };
        lhs_terms.push(c.area * lhs);
        rhs_terms.push(c.area * d.distortion().to_report_f64().powf(q));
    }
    Ok(ElasticMinReport {
        best,
        k_max,
        kor_lhs: pairwise_sum(&lhs_terms),
        kor_rhs_integral: pairwise_sum(&rhs_terms),
        runs,
    })
}
