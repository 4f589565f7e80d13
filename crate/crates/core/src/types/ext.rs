use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

/// Extended real value in `R ∪ {+inf}`.
///
/// `-inf` and NaN are unrepresentable: constructors reject them, so every
/// function built from these values is proper-by-type on the minus side.
/// Addition absorbs `+inf`; subtraction is deliberately not implemented,
/// call sites that need `coupling - f(x)` must branch on finiteness first.
#[derive(Clone, Copy, PartialEq)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const INF: ExtReal = ExtReal(f64::INFINITY);
    pub const ZERO: ExtReal = ExtReal(0.0);

    /// Wraps a finite value. Panics on NaN or infinities: a non-finite
    /// finite-constructor argument is a bug at the call site.
    pub fn finite(v: f64) -> ExtReal {
        assert!(v.is_finite(), "ExtReal::finite called with {v}");
        ExtReal(v)
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn as_finite(self) -> Option<f64> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }

    /// Raw value; `+inf` maps to `f64::INFINITY`.
    pub fn raw(self) -> f64 {
        self.0
    }

    /// Scales by a nonnegative factor (`+inf` stays `+inf`, also for 0).
    pub fn scale(self, k: f64) -> ExtReal {
        assert!(k.is_finite() && k >= 0.0, "scale factor must be >= 0");
        if self.is_finite() {
            ExtReal(self.0 * k)
        } else {
            ExtReal::INF
        }
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        // inf + finite and inf + inf are both +inf; no NaN can appear.
        ExtReal(self.0 + rhs.0)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Eq for ExtReal {}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        // Total by invariant: no NaN in the domain.
        self.0.partial_cmp(&other.0).expect("ExtReal is NaN-free")
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "+inf")
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        if self.is_finite() {
            ser.serialize_f64(self.0)
        } else {
            ser.serialize_str("+inf")
        }
    }
}
