//! Radial stretchings phi(z) = rho(r) z / r of the unit disk and disk means
//! of isotropic functionals along them.
//!
//! The derivative of a radial map has singular values |rho'(r)| (radial) and
//! rho(r)/r (angular); isotropy makes the angular phase irrelevant, so
//! evaluation goes through the log-singular-value form. Profiles whose values
//! underflow (the smooth exponential) expose log-form oracles, keeping every
//! quadrature node finite.

use crate::functional::Functional;
use crate::mat2::LogSv;
use crate::quad::GaussLegendre;
use crate::scalar::ExtScalar;
use crate::sum::pairwise_sum;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)] // float methods under no_std come from this trait
use num_traits::Float;

/// Error for invalid profile parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileError(pub String);

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "profile error: {}", self.0)
    }
}

impl core::error::Error for ProfileError {}

/// Radial profile rho on (0, 1]; the map is phi(z) = rho(|z|) z / |z|.
///
/// Text forms: `pow:alpha=0.5`, `scaled:lambda=2,alpha=1`,
/// `twopiece:alpha=0.3`, `exp`, `blend:gamma=0.5,j=3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadialProfile {
    /// rho = r^alpha, alpha != 0. Non-expanding iff |alpha| <= 1.
    Power { alpha: f64 },
    /// rho = lambda r^alpha, lambda > 0.
    Scaled { lambda: f64, alpha: f64 },
    /// rho = r 2^(1-alpha) on [0, 1/2], r^alpha on [1/2, 1];
    /// alpha in [-1, 1] \ {0}. Lipschitz at 0, kink at 1/2.
    TwoPiece { alpha: f64 },
    /// rho = exp(1 - 1/r^2): smooth, all derivatives vanish at 0,
    /// distortion profile K(r) = 2/r^2.
    SmoothExp,
    /// rho = r (1 + gamma (1 - r^j)): rho(1) = 1, non-expanding for
    /// gamma >= 0 with gamma j <= 2.
    Blend { gamma: f64, j: u32 },
}

impl RadialProfile {
    pub fn validate(&self) -> Result<(), ProfileError> {
        match self {
            RadialProfile::Power { alpha } => {
                if *alpha == 0.0 {
                    return Err(ProfileError("power profile needs alpha != 0".into()));
                }
            }
            RadialProfile::Scaled { lambda, alpha } => {
                if *alpha == 0.0 || !(*lambda > 0.0) {
                    return Err(ProfileError(
                        "scaled profile needs alpha != 0 and lambda > 0".into(),
                    ));
                }
            }
            RadialProfile::TwoPiece { alpha } => {
                if *alpha == 0.0 || alpha.abs() > 1.0 {
                    return Err(ProfileError(
                        "two-piece profile needs alpha in [-1,1] \\ {0}".into(),
                    ));
                }
            }
            RadialProfile::SmoothExp => {}
            RadialProfile::Blend { gamma, j } => {
                if !(*gamma >= 0.0) || *j == 0 || *gamma * f64::from(*j) > 2.0 {
                    return Err(ProfileError(
                        "blend profile needs gamma >= 0, j >= 1, gamma*j <= 2".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    #[must_use]
    pub fn rho(&self, r: f64) -> f64 {
        match self {
            RadialProfile::Power { alpha } => r.powf(*alpha),
            RadialProfile::Scaled { lambda, alpha } => lambda * r.powf(*alpha),
            RadialProfile::TwoPiece { alpha } => {
                if r <= 0.5 {
                    r * (1.0 - alpha).exp2()
                } else {
                    r.powf(*alpha)
                }
            }
            RadialProfile::SmoothExp => (1.0 - 1.0 / (r * r)).exp(),
            RadialProfile::Blend { gamma, j } => {
                r * (1.0 + gamma * (1.0 - r.powi(*j as i32)))
            }
        }
    }

    #[must_use]
    pub fn rho_dot(&self, r: f64) -> f64 {
        match self {
            RadialProfile::Power { alpha } => alpha * r.powf(alpha - 1.0),
            RadialProfile::Scaled { lambda, alpha } => lambda * alpha * r.powf(alpha - 1.0),
            RadialProfile::TwoPiece { alpha } => {
                if r <= 0.5 {
                    (1.0 - alpha).exp2()
                } else {
                    alpha * r.powf(alpha - 1.0)
                }
            }
            RadialProfile::SmoothExp => self.rho(r) * 2.0 / (r * r * r),
            RadialProfile::Blend { gamma, j } => {
                let j = *j as i32;
                1.0 + gamma * (1.0 - (j + 1) as f64 * r.powi(j))
            }
        }
    }

    /// (log rho, rho'/rho) for profiles whose direct values underflow near
    /// r = 0; None means the direct path is accurate.
    #[must_use]
    fn log_form(&self, r: f64) -> Option<(f64, f64)> {
        match self {
            RadialProfile::SmoothExp => Some((1.0 - 1.0 / (r * r), 2.0 / (r * r * r))),
            _ => None,
        }
    }

    /// Boundary value rho(1); the boundary affine map is rho(1) Id.
    #[must_use]
    pub fn boundary_value(&self) -> f64 {
        self.rho(1.0)
    }

    /// Interior kinks that quadrature panels must respect.
    #[must_use]
    pub fn breakpoints(&self) -> &'static [f64] {
        match self {
            RadialProfile::TwoPiece { .. } => &[0.5],
            _ => &[],
        }
    }

    /// Non-expanding check |rho'| <= rho/r sampled on a log grid; the
    /// quasiaffine disk-mean identity for the Burkholder functional applies
    /// to non-expanding profiles.
    #[must_use]
    pub fn is_nonexpanding(&self) -> bool {
        let n = 4096;
        (0..=n).all(|i| {
            let r = (-(14.0) * (1.0 - i as f64 / n as f64)).exp();
            self.rho_dot(r).abs() <= self.rho(r) / r * (1.0 + 1e-12)
        })
    }

    /// Log-singular-value form of D phi at radius r > 0. The singular values
    /// are |rho'| (radial stretch) and rho/r (angular stretch); their ratio
    /// is computed before the shared log rho factor enters, so it stays exact
    /// even where log rho itself dwarfs it.
    #[must_use]
    pub fn deriv(&self, r: f64) -> LogSv {
        let (log_rad, rad_positive, log_ang, log_ratio_signed) = match self.log_form(r) {
            Some((log_rho, dot_over_rho)) => (
                log_rho + dot_over_rho.abs().ln(),
                dot_over_rho > 0.0,
                log_rho - r.ln(),
                // log(|rho'| / (rho/r)) without the common log rho term.
                dot_over_rho.abs().ln() + r.ln(),
            ),
            None => {
                let dot = self.rho_dot(r);
                let ang = self.rho(r) / r;
                (dot.abs().ln(), dot > 0.0, ang.ln(), (dot.abs() / ang).ln())
            }
        };
        let (log_big, log_ratio) = if log_ratio_signed >= 0.0 {
            (log_rad, log_ratio_signed)
        } else {
            (log_ang, -log_ratio_signed)
        };
        LogSv {
            log_big,
            log_ratio,
            log_det_abs: log_rad + log_ang,
            det_positive: rad_positive,
        }
    }

    pub fn parse(s: &str) -> Result<Self, crate::functional::ParseError> {
        use crate::functional::ParseError;
        let s = s.trim();
        let (kind, params) = match s.split_once(':') {
            Some((k, p)) => (k, Some(p)),
            None => (s, None),
        };
        let mut map = alloc::collections::BTreeMap::new();
        if let Some(p) = params {
            for item in p.split(',') {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| ParseError(format!("expected key=value, got {item:?}")))?;
                let v: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| ParseError(format!("bad number {v:?}")))?;
                map.insert(k.trim(), v);
            }
        }
        let get = |map: &alloc::collections::BTreeMap<&str, f64>, k: &str| {
            map.get(k)
                .copied()
                .ok_or_else(|| ParseError(format!("{kind} profile requires {k}")))
        };
        let expected: &[&str] = match kind {
            "pow" | "twopiece" => &["alpha"],
            "scaled" => &["lambda", "alpha"],
            "exp" => &[],
            "blend" => &["gamma", "j"],
            _ => &[],
        };
        if let Some(stray) = map.keys().find(|k| !expected.contains(k)) {
            return Err(ParseError(format!("unknown key {stray:?} for {kind}")));
        }
        let profile = match kind {
            "pow" => RadialProfile::Power {
                alpha: get(&map, "alpha")?,
            },
            "scaled" => RadialProfile::Scaled {
                lambda: get(&map, "lambda")?,
                alpha: get(&map, "alpha")?,
            },
            "twopiece" => RadialProfile::TwoPiece {
                alpha: get(&map, "alpha")?,
            },
            "exp" => RadialProfile::SmoothExp,
            "blend" => RadialProfile::Blend {
                gamma: get(&map, "gamma")?,
                j: get(&map, "j")? as u32,
            },
            _ => return Err(ParseError(format!("unknown profile {kind:?}"))),
        };
        profile.validate().map_err(|e| ParseError(e.0))?;
        Ok(profile)
    }
}

impl fmt::Display for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialProfile::Power { alpha } => write!(f, "pow:alpha={alpha}"),
            RadialProfile::Scaled { lambda, alpha } => {
                write!(f, "scaled:lambda={lambda},alpha={alpha}")
            }
            RadialProfile::TwoPiece { alpha } => write!(f, "twopiece:alpha={alpha}"),
            RadialProfile::SmoothExp => write!(f, "exp"),
            RadialProfile::Blend { gamma, j } => write!(f, "blend:gamma={gamma},j={j}"),
        }
    }
}

/// Derivative data at a quadrature node.
#[derive(Clone, Copy, Debug)]
pub struct RadialDeriv {
    pub r: f64,
    pub sv: LogSv,
}

const PANELS: usize = 128;
const GL_ORDER: usize = 16;

/// Panel edges: dyadic grading toward 0 (innermost edge 2^-127, deep enough
/// that an integrand r^-b, b <= 3/4, leaves the stub panel negligible) plus
/// profile breakpoints. `refine` doubles every panel.
fn panel_edges(profile: &RadialProfile, refine: bool) -> Vec<f64> {
    let mut edges = Vec::with_capacity(2 * PANELS + 4);
    edges.push(0.0);
    for i in 1..PANELS {
        edges.push((-((PANELS - i) as f64)).exp2());
    }
    edges.push(1.0);
    for &b in profile.breakpoints() {
        if !edges.iter().any(|&e| (e - b).abs() < 1e-15) {
            edges.push(b);
        }
    }
    edges.sort_by(|a, b| a.partial_cmp(b).expect("finite edges"));
    if refine {
        let mut all = Vec::with_capacity(2 * edges.len());
        for w in edges.windows(2) {
            all.push(w[0]);
            all.push(0.5 * (w[0] + w[1]));
        }
        all.push(1.0);
        return all;
    }
    edges
}

/// Disk mean (1/pi) int_D g(D phi) dm = 2 int_0^1 g(r) r dr for a node
/// integrand g. +infinity when any node evaluates to +infinity or when the
/// value fails to stabilize under panel refinement (non-integrable profile).
pub fn radial_mean_with<F: Fn(&RadialDeriv) -> ExtScalar>(
    profile: &RadialProfile,
    g: F,
) -> ExtScalar {
    let gl = GaussLegendre::new(GL_ORDER);
    let mut values = [0.0, 0.0];
    for (pass, refine) in [(0, false), (1, true)] {
        let edges = panel_edges(profile, refine);
        let mut panel_sums = Vec::with_capacity(edges.len());
        for w in edges.windows(2) {
            let mut acc = 0.0;
            for (r, wt) in gl.mapped_nodes(w[0], w[1]) {
                let d = RadialDeriv {
                    r,
                    sv: profile.deriv(r),
                };
                match g(&d) {
                    ExtScalar::Finite(v) => acc += wt * 2.0 * r * v,
                    ExtScalar::PlusInfinity => return ExtScalar::PlusInfinity,
                }
            }
            panel_sums.push(acc);
        }
        values[pass] = pairwise_sum(&panel_sums);
    }
    let (coarse, fine) = (values[0], values[1]);
    if !fine.is_finite() || (coarse - fine).abs() > 1e-7 * (1.0 + fine.abs()) {
        return ExtScalar::PlusInfinity; // diverging under refinement
    }
    ExtScalar::Finite(fine)
}

/// Disk mean of a functional along the radial map of `profile`.
pub fn radial_mean(e: &Functional, profile: &RadialProfile) -> ExtScalar {
    radial_mean_with(profile, |d| e.eval_log_sv(d.sv))
}

/// The coarse quadrature nodes (for pointwise profile diagnostics).
#[must_use]
pub fn radial_nodes(profile: &RadialProfile) -> Vec<f64> {
    let gl = GaussLegendre::new(GL_ORDER);
    let mut nodes = Vec::new();
    for w in panel_edges(profile, false).windows(2) {
        nodes.extend(gl.mapped_nodes(w[0], w[1]).map(|(r, _)| r));
    }
    nodes
}
