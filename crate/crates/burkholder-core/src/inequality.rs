//! Inequality check reports and the radial L log L lower bound.
//!
//! `lhs >= rhs - tol` is the uniform pass convention: `gap = lhs - rhs`
//! and a check passes iff `gap >= -tol`. Infinite sides are carried as
//! `f64::INFINITY` inside reports (an infinite lhs passes trivially).

use crate::functional::Functional;
use crate::radial::{radial_mean, radial_mean_with, RadialProfile};
use crate::scalar::ExtScalar;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)] // float methods under no_std come from this trait
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Hypotheses not met (e.g. infinite energy); no verdict.
    NotApplicable,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "fail"),
            CheckStatus::NotApplicable => write!(f, "na"),
        }
    }
}

/// Outcome of one inequality instance.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// lhs - rhs; NaN only when both sides are infinite.
    pub gap: f64,
    pub tol: f64,
    pub status: CheckStatus,
    /// Free-form (key, value) descriptors of the instance.
    pub inputs: Vec<(String, String)>,
}

impl InequalityReport {
    /// Build a report from extended sides, deciding pass/fail by
    /// `lhs >= rhs - tol`.
    #[must_use]
    pub fn decide(
        name: &str,
        lhs: ExtScalar,
        rhs: ExtScalar,
        tol: f64,
        inputs: Vec<(String, String)>,
    ) -> Self {
        let (l, r) = (lhs.to_report_f64(), rhs.to_report_f64());
        let gap = l - r;
        let status = match (lhs, rhs) {
            (ExtScalar::PlusInfinity, _) => CheckStatus::Pass,
            (ExtScalar::Finite(_), ExtScalar::PlusInfinity) => CheckStatus::Fail,
            (ExtScalar::Finite(_), ExtScalar::Finite(_)) => {
                if gap >= -tol {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                }
            }
        };
        InequalityReport {
            name: name.to_string(),
            lhs: l,
            rhs: r,
            gap,
            tol,
            status,
            inputs,
        }
    }

    #[must_use]
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// L log L bound along a radial map with boundary stretch lambda = rho(1):
///
///   int_D |Dphi|^2 dm - int_D J (1 + log |Dphi|^2) dm >= pi F(lambda Id),
///
/// i.e. the total F-energy dominates its boundary-affine value, with
/// equality exactly for the linear profile rho = lambda r. Not applicable
/// when the Dirichlet energy diverges.
#[must_use]
pub fn llogl_check(profile: &RadialProfile, tol_rel: f64) -> InequalityReport {
    let inputs: Vec<(String, String)> = alloc::vec![
        ("profile".to_string(), profile.to_string()),
        ("lambda".to_string(), profile.boundary_value().to_string()),
    ];
    let dirichlet = radial_mean_with(profile, |d| {
        let n = d.sv.log_big.exp() * (1.0 + (-d.sv.log_ratio).exp());
        ExtScalar::Finite(n * n)
    });
    if !matches!(dirichlet, ExtScalar::Finite(_)) {
        let mut rep = InequalityReport::decide(
            "llogl",
            ExtScalar::PlusInfinity,
            ExtScalar::PlusInfinity,
            0.0,
            inputs,
        );
        rep.status = CheckStatus::NotApplicable;
        rep.gap = f64::NAN;
        return rep;
    }
    let f = Functional::FFunc;
    let lhs = radial_mean(&f, profile).map(|v| core::f64::consts::PI * v);
    let lambda = profile.boundary_value();
    let rhs = f
        .eval(&crate::mat2::Mat2::diag(lambda, lambda))
        .map(|v| core::f64::consts::PI * v);
    let tol = tol_rel * (1.0 + lhs.to_report_f64().abs());
    InequalityReport::decide("llogl", lhs, rhs, tol, inputs)
}
