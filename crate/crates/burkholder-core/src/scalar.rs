//! Extended real scalars: finite values plus an explicit +infinity tag.

use core::fmt;
use core::ops::Add;

/// Result of evaluating an energy functional: a finite real or +infinity.
///
/// Infinity is an explicit tag, never a silent float infinity, so callers can
/// match on it. NaN is rejected at construction: a NaN here would mean a
/// formula bug, not a data condition, and silent propagation is forbidden.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtScalar {
    Finite(f64),
    PlusInfinity,
}

impl ExtScalar {
    /// Wraps a raw computed float. Float +inf (overflow saturation) becomes
    /// the tagged infinity; NaN and -inf panic.
    #[must_use]
    pub fn from_computed(v: f64) -> Self {
        assert!(!v.is_nan(), "NaN in functional evaluation");
        if v == f64::INFINITY {
            ExtScalar::PlusInfinity
        } else {
            assert!(v.is_finite(), "-infinity in functional evaluation");
            ExtScalar::Finite(v)
        }
    }

    #[must_use]
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtScalar::Finite(_))
    }

    #[must_use]
    pub fn finite(&self) -> Option<f64> {
        match self {
            ExtScalar::Finite(v) => Some(*v),
            ExtScalar::PlusInfinity => None,
        }
    }

    /// Finite value or panic; for contexts where infinity is already excluded.
    #[must_use]
    pub fn unwrap_finite(&self) -> f64 {
        match self {
            ExtScalar::Finite(v) => *v,
            ExtScalar::PlusInfinity => panic!("unexpected +infinity"),
        }
    }

    /// Collapses to a plain float, mapping the tag to `f64::INFINITY`.
    /// For report records only, never for further functional arithmetic.
    #[must_use]
    pub fn to_report_f64(&self) -> f64 {
        match self {
            ExtScalar::Finite(v) => *v,
            ExtScalar::PlusInfinity => f64::INFINITY,
        }
    }

    /// Applies `f` to a finite value; infinity is absorbing.
    #[must_use]
    pub fn map<F: FnOnce(f64) -> f64>(self, f: F) -> Self {
        match self {
            ExtScalar::Finite(v) => ExtScalar::from_computed(f(v)),
            ExtScalar::PlusInfinity => ExtScalar::PlusInfinity,
        }
    }
}

impl From<f64> for ExtScalar {
    fn from(v: f64) -> Self {
        ExtScalar::from_computed(v)
    }
}

impl Add for ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: ExtScalar) -> ExtScalar {
        match (self, rhs) {
            (ExtScalar::Finite(a), ExtScalar::Finite(b)) => ExtScalar::from_computed(a + b),
            _ => ExtScalar::PlusInfinity,
        }
    }
}

impl Add<f64> for ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: f64) -> ExtScalar {
        self + ExtScalar::from_computed(rhs)
    }
}

impl PartialOrd for ExtScalar {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        use core::cmp::Ordering;
        match (self, other) {
            (ExtScalar::Finite(a), ExtScalar::Finite(b)) => a.partial_cmp(b),
            (ExtScalar::Finite(_), ExtScalar::PlusInfinity) => Some(Ordering::Less),
            (ExtScalar::PlusInfinity, ExtScalar::Finite(_)) => Some(Ordering::Greater),
            (ExtScalar::PlusInfinity, ExtScalar::PlusInfinity) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::Finite(v) => write!(f, "{v}"),
            ExtScalar::PlusInfinity => write!(f, "inf"),
        }
    }
}
