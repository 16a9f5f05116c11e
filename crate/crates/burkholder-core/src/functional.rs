//! Energy functionals on planar matrices: the Burkholder functional and its
//! cone-restricted local variant, the F and W functionals, the Shield
//! transform, volumetric-isochoric splits, and the gamma_p weight.

use crate::mat2::{LogSv, Mat2};
use crate::scalar::ExtScalar;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
#[allow(unused_imports)] // float methods under no_std come from this trait
use num_traits::Float;

/// Error for arguments outside an operation's domain.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainError(pub String);

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "domain error: {}", self.0)
    }
}

impl core::error::Error for DomainError {}

/// Error for unparseable functional descriptors.
#[derive(Clone, Debug, PartialEq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl core::error::Error for ParseError {}

/// Scalar function handle for volumetric-isochoric splits, with analytic
/// first and second derivative oracles.
#[derive(Clone, Copy, Debug)]
pub enum ScalarFn {
    Zero,
    Const(f64),
    /// log t
    Log,
    /// t - log t
    TMinusLog,
    /// a * t
    Linear(f64),
    /// t^q
    Power(f64),
    Custom {
        f: fn(f64) -> f64,
        d1: fn(f64) -> f64,
        d2: fn(f64) -> f64,
    },
}

impl PartialEq for ScalarFn {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ScalarFn::Zero, ScalarFn::Zero) => true,
            (ScalarFn::Const(a), ScalarFn::Const(b)) => a == b,
            (ScalarFn::Log, ScalarFn::Log) => true,
            (ScalarFn::TMinusLog, ScalarFn::TMinusLog) => true,
            (ScalarFn::Linear(a), ScalarFn::Linear(b)) => a == b,
            (ScalarFn::Power(a), ScalarFn::Power(b)) => a == b,
            // Custom handles compare by code address: good enough for the
            // round-trip tests that never involve Custom.
            (
                ScalarFn::Custom { f: f1, d1: a1, d2: b1 },
                ScalarFn::Custom { f: f2, d1: a2, d2: b2 },
            ) => {
                core::ptr::fn_addr_eq(*f1, *f2)
                    && core::ptr::fn_addr_eq(*a1, *a2)
                    && core::ptr::fn_addr_eq(*b1, *b2)
            }
            _ => false,
        }
    }
}

impl ScalarFn {
    #[must_use]
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            ScalarFn::Zero => 0.0,
            ScalarFn::Const(c) => *c,
            ScalarFn::Log => t.ln(),
            ScalarFn::TMinusLog => t - t.ln(),
            ScalarFn::Linear(a) => a * t,
            ScalarFn::Power(q) => t.powf(*q),
            ScalarFn::Custom { f, .. } => f(t),
        }
    }

    /// Evaluates at t = exp(log_t). Log-scaling kinds are computed in the log
    /// domain exactly; `Custom` materializes t and may saturate at extreme
    /// scales.
    #[must_use]
    pub fn eval_at_log(&self, log_t: f64) -> f64 {
        match self {
            ScalarFn::Zero => 0.0,
            ScalarFn::Const(c) => *c,
            ScalarFn::Log => log_t,
            ScalarFn::TMinusLog => log_t.exp() - log_t,
            ScalarFn::Linear(a) => a * log_t.exp(),
            ScalarFn::Power(q) => (q * log_t).exp(),
            ScalarFn::Custom { f, .. } => f(log_t.exp()),
        }
    }

    #[must_use]
    pub fn d1(&self, t: f64) -> f64 {
        match self {
            ScalarFn::Zero | ScalarFn::Const(_) => 0.0,
            ScalarFn::Log => 1.0 / t,
            ScalarFn::TMinusLog => 1.0 - 1.0 / t,
            ScalarFn::Linear(a) => *a,
            ScalarFn::Power(q) => q * t.powf(q - 1.0),
            ScalarFn::Custom { d1, .. } => d1(t),
        }
    }

    #[must_use]
    pub fn d2(&self, t: f64) -> f64 {
        match self {
            ScalarFn::Zero | ScalarFn::Const(_) | ScalarFn::Linear(_) => 0.0,
            ScalarFn::Log => -1.0 / (t * t),
            ScalarFn::TMinusLog => 1.0 / (t * t),
            ScalarFn::Power(q) => q * (q - 1.0) * t.powf(q - 2.0),
            ScalarFn::Custom { d2, .. } => d2(t),
        }
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        match s {
            "0" => return Ok(ScalarFn::Zero),
            "log" => return Ok(ScalarFn::Log),
            "t-log" => return Ok(ScalarFn::TMinusLog),
            "t" => return Ok(ScalarFn::Linear(1.0)),
            "-t" => return Ok(ScalarFn::Linear(-1.0)),
            _ => {}
        }
        if let Some(q) = s.strip_prefix("t^") {
            let q: f64 = q
                .parse()
                .map_err(|_| ParseError(format!("bad exponent in {s:?}")))?;
            return Ok(ScalarFn::Power(q));
        }
        if let Some(c) = s.strip_prefix("const:") {
            let c: f64 = c
                .parse()
                .map_err(|_| ParseError(format!("bad constant in {s:?}")))?;
            return Ok(ScalarFn::Const(c));
        }
        if let Some(a) = s.strip_prefix("lin:") {
            let a: f64 = a
                .parse()
                .map_err(|_| ParseError(format!("bad coefficient in {s:?}")))?;
            return Ok(ScalarFn::Linear(a));
        }
        Err(ParseError(format!("unknown scalar function {s:?}")))
    }
}

impl fmt::Display for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarFn::Zero => write!(f, "0"),
            ScalarFn::Const(c) => write!(f, "const:{c}"),
            ScalarFn::Log => write!(f, "log"),
            ScalarFn::TMinusLog => write!(f, "t-log"),
            ScalarFn::Linear(a) if *a == 1.0 => write!(f, "t"),
            ScalarFn::Linear(a) if *a == -1.0 => write!(f, "-t"),
            ScalarFn::Linear(a) => write!(f, "lin:{a}"),
            ScalarFn::Power(q) => write!(f, "t^{q}"),
            ScalarFn::Custom { .. } => write!(f, "custom"),
        }
    }
}

/// Isotropic energy functional on 2x2 matrices.
///
/// Text forms: `burkholder:p=3`, `local:K=2,p=4` (p defaults to the critical
/// exponent 2K/(K-1)), `F`, `W`, `wtilde`, `ec:c=0.1`,
/// `split:G=log,H=t-log`, `shield(F)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Functional {
    /// B_p(A) = |A|^(p-1) ((p-1)|a-| - |a+|), p >= 2.
    Burkholder { p: f64 },
    /// B_p on the closed cone |A|^2 <= K det A, +infinity outside.
    LocalBurkholder { k: f64, p: f64 },
    /// F(A) = |A|^2 - (1 + log |A|^2) det A, with F(0) = 0 by continuity.
    FFunc,
    /// W(A) = K_A - log K_A + log det A for det A > 0, else +infinity.
    WFunc,
    /// W with |log det A|; bounded below by 1. det A <= 0 (including A = 0)
    /// gives +infinity.
    WTilde,
    /// E_c(A) = W(A) + c (1/det A + |A|^2)^2, c > 0.
    Ec { c: f64 },
    /// E(A) = G(det A) + H(K_A) for det A > 0, else +infinity.
    Split { g: ScalarFn, h: ScalarFn },
    /// Shield transform: shield(E)(A) = E(A^-1) det A for det A > 0, else
    /// +infinity. Involution; nesting depth at most 2.
    Shield(Box<Functional>),
}

impl Functional {
    /// Burkholder functional with exponent validation (p >= 2).
    pub fn burkholder(p: f64) -> Result<Self, DomainError> {
        if !(p >= 2.0) {
            return Err(DomainError(format!("burkholder exponent p = {p} < 2")));
        }
        Ok(Functional::Burkholder { p })
    }

    /// Local Burkholder functional on the cone of distortion K > 1; `p` must
    /// lie in [2, 2K/(K-1)] for the negativity/quasiconvexity range, which is
    /// the caller's concern; here only p >= 2 and K > 1 are enforced.
    pub fn local_burkholder(k: f64, p: f64) -> Result<Self, DomainError> {
        if !(k > 1.0) {
            return Err(DomainError(format!("cone distortion K = {k} must be > 1")));
        }
        if !(p >= 2.0) {
            return Err(DomainError(format!("burkholder exponent p = {p} < 2")));
        }
        Ok(Functional::LocalBurkholder { k, p })
    }

    pub fn ec(c: f64) -> Result<Self, DomainError> {
        if !(c > 0.0) {
            return Err(DomainError(format!("ec coefficient c = {c} must be > 0")));
        }
        Ok(Functional::Ec { c })
    }

    /// Wraps in the Shield transform, enforcing nesting depth <= 2.
    pub fn shield(inner: Functional) -> Result<Self, DomainError> {
        if inner.shield_depth() >= 2 {
            return Err(DomainError("shield nesting depth exceeds 2".to_string()));
        }
        Ok(Functional::Shield(Box::new(inner)))
    }

    fn shield_depth(&self) -> usize {
        match self {
            Functional::Shield(inner) => 1 + inner.shield_depth(),
            _ => 0,
        }
    }

    /// Evaluates on a matrix through the conformal-coordinate formulas.
    #[must_use]
    pub fn eval(&self, a: &Mat2) -> ExtScalar {
        match self {
            Functional::Burkholder { p } => {
                ExtScalar::from_computed(burkholder_conformal(a.a_plus.norm(), a.a_minus.norm(), *p))
            }
            Functional::LocalBurkholder { k, p } => {
                if a.in_cone(*k) {
                    ExtScalar::from_computed(burkholder_conformal(
                        a.a_plus.norm(),
                        a.a_minus.norm(),
                        *p,
                    ))
                } else {
                    ExtScalar::PlusInfinity
                }
            }
            Functional::FFunc => {
                let n = a.op_norm();
                if n == 0.0 {
                    // Continuous extension at A = 0 (chosen convention).
                    return ExtScalar::Finite(0.0);
                }
                ExtScalar::from_computed(n * n - (1.0 + (n * n).ln()) * a.det())
            }
            Functional::WFunc => {
                let d = a.det();
                if d <= 0.0 {
                    return ExtScalar::PlusInfinity;
                }
                let n = a.op_norm();
                let k = n * n / d;
                ExtScalar::from_computed(k - k.ln() + d.ln())
            }
            Functional::WTilde => {
                let d = a.det();
                if d <= 0.0 {
                    return ExtScalar::PlusInfinity;
                }
                let n = a.op_norm();
                let k = n * n / d;
                ExtScalar::from_computed(k - k.ln() + d.ln().abs())
            }
            Functional::Ec { c } => {
                let d = a.det();
                if d <= 0.0 {
                    return ExtScalar::PlusInfinity;
                }
                let n = a.op_norm();
                let k = n * n / d;
                let s = 1.0 / d + n * n;
                ExtScalar::from_computed(k - k.ln() + d.ln() + c * s * s)
            }
            Functional::Split { g, h } => {
                let d = a.det();
                if d <= 0.0 {
                    return ExtScalar::PlusInfinity;
                }
                let n = a.op_norm();
                ExtScalar::from_computed(g.eval(d) + h.eval(n * n / d))
            }
            Functional::Shield(inner) => {
                let d = a.det();
                if d <= 0.0 {
                    return ExtScalar::PlusInfinity;
                }
                // det != 0 here, so the inverse exists.
                let inv = a.inverse().expect("invertible");
                inner.eval(&inv).map(|v| v * d)
            }
        }
    }

    /// Evaluates on the log-singular-value form, using each kind's exact
    /// scaling law. This is the cancellation-safe path used by radial
    /// quadrature; it agrees with `eval` on moderate scales.
    #[must_use]
    pub fn eval_log_sv(&self, sv: LogSv) -> ExtScalar {
        let lb = sv.log_big;
        let delta = sv.log_ratio;
        let sigma = sv.log_det_abs;
        match self {
            Functional::Burkholder { p } => {
                ExtScalar::from_computed(burkholder_log_sv(lb, delta, sv.det_positive, *p))
            }
            Functional::LocalBurkholder { k, p } => {
                // Closed cone: big/small <= K with det > 0, plus the apex.
                let in_cone = delta <= k.ln() && (sv.det_positive || lb == f64::NEG_INFINITY);
                if in_cone {
                    ExtScalar::from_computed(burkholder_log_sv(lb, delta, sv.det_positive, *p))
                } else {
                    ExtScalar::PlusInfinity
                }
            }
            Functional::FFunc => {
                if lb == f64::NEG_INFINITY {
                    return ExtScalar::Finite(0.0);
                }
                let sign = if sv.det_positive { 1.0 } else { -1.0 };
                // F = e^(2 lb) [1 - (1 + 2 lb) * sign * e^(-delta)]
                let ratio = (-delta).exp();
                ExtScalar::from_computed((2.0 * lb).exp() * (1.0 - (1.0 + 2.0 * lb) * sign * ratio))
            }
            Functional::WFunc => {
                if !sv.det_positive {
                    return ExtScalar::PlusInfinity;
                }
                ExtScalar::from_computed(delta.exp() - delta + sigma)
            }
            Functional::WTilde => {
                if !sv.det_positive {
                    return ExtScalar::PlusInfinity;
                }
                ExtScalar::from_computed(delta.exp() - delta + sigma.abs())
            }
            Functional::Ec { c } => {
                if !sv.det_positive {
                    return ExtScalar::PlusInfinity;
                }
                let s = (-sigma).exp() + (2.0 * lb).exp();
                ExtScalar::from_computed(delta.exp() - delta + sigma + c * s * s)
            }
            Functional::Split { g, h } => {
                if !sv.det_positive {
                    return ExtScalar::PlusInfinity;
                }
                ExtScalar::from_computed(g.eval_at_log(sigma) + h.eval_at_log(delta))
            }
            Functional::Shield(inner) => {
                if !sv.det_positive {
                    return ExtScalar::PlusInfinity;
                }
                // A^-1 has singular values (1/small, 1/big): the ratio is
                // unchanged and the Jacobian log flips sign.
                let inv = LogSv {
                    log_big: delta - lb,
                    log_ratio: delta,
                    log_det_abs: -sigma,
                    det_positive: true,
                };
                inner.eval_log_sv(inv).map(|v| v * sigma.exp())
            }
        }
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("shield(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| ParseError(format!("unbalanced parentheses in {s:?}")))?;
            let inner = Functional::parse(inner)?;
            return Functional::shield(inner).map_err(|e| ParseError(e.0));
        }
        let (kind, params) = match s.split_once(':') {
            Some((k, p)) => (k, Some(p)),
            None => (s, None),
        };
        let parse_params = |params: Option<&str>| -> Result<alloc::vec::Vec<(String, String)>, ParseError> {
            let mut out = alloc::vec::Vec::new();
            if let Some(p) = params {
                for item in p.split(',') {
                    let (k, v) = item
                        .split_once('=')
                        .ok_or_else(|| ParseError(format!("expected key=value, got {item:?}")))?;
                    out.push((k.trim().to_string(), v.trim().to_string()));
                }
            }
            Ok(out)
        };
        let num = |v: &str| -> Result<f64, ParseError> {
            v.parse()
                .map_err(|_| ParseError(format!("bad number {v:?}")))
        };
        match kind {
            "burkholder" => {
                let mut p = None;
                for (k, v) in parse_params(params)? {
                    match k.as_str() {
                        "p" => p = Some(num(&v)?),
                        _ => return Err(ParseError(format!("unknown key {k:?} for burkholder"))),
                    }
                }
                let p = p.ok_or_else(|| ParseError("burkholder requires p".to_string()))?;
                Functional::burkholder(p).map_err(|e| ParseError(e.0))
            }
            "local" => {
                let (mut kk, mut p) = (None, None);
                for (k, v) in parse_params(params)? {
                    match k.as_str() {
                        "K" => kk = Some(num(&v)?),
                        "p" => p = Some(num(&v)?),
                        _ => return Err(ParseError(format!("unknown key {k:?} for local"))),
                    }
                }
                let kk = kk.ok_or_else(|| ParseError("local requires K".to_string()))?;
                let p = match p {
                    Some(p) => p,
                    None => critical_exponent(kk).map_err(|e| ParseError(e.0))?,
                };
                Functional::local_burkholder(kk, p).map_err(|e| ParseError(e.0))
            }
            "F" => Ok(Functional::FFunc),
            "W" => Ok(Functional::WFunc),
            "wtilde" => Ok(Functional::WTilde),
            "ec" => {
                let mut c = None;
                for (k, v) in parse_params(params)? {
                    match k.as_str() {
                        "c" => c = Some(num(&v)?),
                        _ => return Err(ParseError(format!("unknown key {k:?} for ec"))),
                    }
                }
                let c = c.ok_or_else(|| ParseError("ec requires c".to_string()))?;
                Functional::ec(c).map_err(|e| ParseError(e.0))
            }
            "split" => {
                let (mut g, mut h) = (None, None);
                for (k, v) in parse_params(params)? {
                    match k.as_str() {
                        "G" => g = Some(ScalarFn::parse(&v)?),
                        "H" => h = Some(ScalarFn::parse(&v)?),
                        _ => return Err(ParseError(format!("unknown key {k:?} for split"))),
                    }
                }
                let g = g.ok_or_else(|| ParseError("split requires G".to_string()))?;
                let h = h.ok_or_else(|| ParseError("split requires H".to_string()))?;
                Ok(Functional::Split { g, h })
            }
            _ => Err(ParseError(format!("unknown functional {kind:?}"))),
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functional::Burkholder { p } => write!(f, "burkholder:p={p}"),
            Functional::LocalBurkholder { k, p } => write!(f, "local:K={k},p={p}"),
            Functional::FFunc => write!(f, "F"),
            Functional::WFunc => write!(f, "W"),
            Functional::WTilde => write!(f, "wtilde"),
            Functional::Ec { c } => write!(f, "ec:c={c}"),
            Functional::Split { g, h } => write!(f, "split:G={g},H={h}"),
            Functional::Shield(inner) => write!(f, "shield({inner})"),
        }
    }
}

/// Primary conformal form of the Burkholder functional:
/// B_p = (x + y)^(p-1) ((p-1) y - x) with x = |a+|, y = |a-|.
fn burkholder_conformal(x: f64, y: f64, p: f64) -> f64 {
    let n = x + y;
    if n == 0.0 {
        return 0.0;
    }
    n.powf(p - 1.0) * ((p - 1.0) * y - x)
}

/// Burkholder value from log singular values:
/// B_p = e^(p lb) [(p-2) - sign * p * e^(-delta)] / 2.
fn burkholder_log_sv(lb: f64, delta: f64, det_positive: bool, p: f64) -> f64 {
    if lb == f64::NEG_INFINITY {
        return 0.0;
    }
    let sign = if det_positive { 1.0 } else { -1.0 };
    let ratio = (-delta).exp();
    0.5 * (p * lb).exp() * ((p - 2.0) - sign * p * ratio)
}

/// Weight gamma_p(A) = (p/2) B_p(A) / (-det A); requires det A > 0.
/// Nonnegative whenever A lies in the cone where B_p <= 0.
pub fn gamma_p(a: &Mat2, p: f64) -> Result<f64, DomainError> {
    let d = a.det();
    if d <= 0.0 {
        return Err(DomainError(format!("gamma_p requires det A > 0, got {d}")));
    }
    let b = Functional::Burkholder { p }.eval(a).unwrap_finite();
    Ok((p / 2.0) * b / -d)
}

/// Integrability exponent p >= 2 with its associated cone distortion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PExponent {
    p: f64,
}

impl PExponent {
    pub fn new(p: f64) -> Result<Self, DomainError> {
        if !(p >= 2.0) {
            return Err(DomainError(format!("exponent p = {p} must be >= 2")));
        }
        Ok(PExponent { p })
    }

    #[must_use]
    pub fn p(&self) -> f64 {
        self.p
    }

    /// K(p) = p / (p - 2), the distortion bound of the cone on which B_p is
    /// nonpositive; +infinity at p = 2 (B_2 = -det <= 0 wherever det >= 0).
    #[must_use]
    pub fn cone_distortion(&self) -> ExtScalar {
        if self.p == 2.0 {
            ExtScalar::PlusInfinity
        } else {
            ExtScalar::from_computed(self.p / (self.p - 2.0))
        }
    }
}

/// Critical exponent p_K = 2K/(K-1) for distortion K > 1.
/// Inverse of `PExponent::cone_distortion`: p_K(K(p)) = p for p > 2.
pub fn critical_exponent(k: f64) -> Result<f64, DomainError> {
    if !(k > 1.0) {
        return Err(DomainError(format!("critical exponent requires K > 1, got {k}")));
    }
    Ok(2.0 * k / (k - 1.0))
}
