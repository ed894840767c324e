use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{fmt_q, one, zero, Q};

/// A connected open subset of `[0,1]` in the relative topology.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Interval {
    Full,
    /// `[0,b)`
    Left(Q),
    /// `(a,1]`
    Right(Q),
    /// `(a,b)`
    Open(Q, Q),
}

/// Endpoints with closedness; closed only at 0 (lo) or 1 (hi).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub lo: Q,
    pub lo_closed: bool,
    pub hi: Q,
    pub hi_closed: bool,
}

impl Interval {
    /// Builds the interval from raw bounds, clamping to `[0,1]`.
    /// Returns `None` for the empty set.
    pub fn from_bounds(lo: Q, lo_closed: bool, hi: Q, hi_closed: bool) -> Option<Interval> {
        let (lo, lc) = if lo < zero() {
            (zero(), true)
        } else if lo.is_zero() {
            (lo, lo_closed)
        } else {
            (lo, false)
        };
        let (hi, hc) = if hi > one() {
            (one(), true)
        } else if hi.is_one() {
            (hi, hi_closed)
        } else {
            (hi, false)
        };
        if lo >= hi {
            return None;
        }
        Some(match (lc, hc) {
            (true, true) => Interval::Full,
            (true, false) => Interval::Left(hi),
            (false, true) => Interval::Right(lo),
            (false, false) => Interval::Open(lo, hi),
        })
    }

    /// Checks the variant invariants of a parsed interval.
    pub fn check(&self) -> Result<(), String> {
        let ok = match self {
            Interval::Full => true,
            Interval::Left(b) => *b > zero() && *b <= one(),
            Interval::Right(a) => *a >= zero() && *a < one(),
            Interval::Open(a, b) => *a >= zero() && a < b && *b <= one(),
        };
        if ok {
            Ok(())
        } else {
            Err(format!("invalid interval {self}"))
        }
    }

    pub fn bounds(&self) -> Bounds {
        match self {
            Interval::Full => Bounds { lo: zero(), lo_closed: true, hi: one(), hi_closed: true },
            Interval::Left(b) => Bounds { lo: zero(), lo_closed: true, hi: b.clone(), hi_closed: false },
            Interval::Right(a) => Bounds { lo: a.clone(), lo_closed: false, hi: one(), hi_closed: true },
            Interval::Open(a, b) => Bounds { lo: a.clone(), lo_closed: false, hi: b.clone(), hi_closed: false },
        }
    }

    pub fn lo(&self) -> Q {
        match self {
            Interval::Full | Interval::Left(_) => zero(),
            Interval::Right(a) | Interval::Open(a, _) => a.clone(),
        }
    }

    pub fn hi(&self) -> Q {
        match self {
            Interval::Full | Interval::Right(_) => one(),
            Interval::Left(b) | Interval::Open(_, b) => b.clone(),
        }
    }

    pub fn closed_at_zero(&self) -> bool {
        matches!(self, Interval::Full | Interval::Left(_))
    }

    pub fn closed_at_one(&self) -> bool {
        matches!(self, Interval::Full | Interval::Right(_))
    }

    pub fn contains_point(&self, x: &Q) -> bool {
        let b = self.bounds();
        (x > &b.lo || (x == &b.lo && b.lo_closed)) && (x < &b.hi || (x == &b.hi && b.hi_closed))
    }

    /// `self ⊆ other` as sets.
    pub fn subset_of(&self, other: &Interval) -> bool {
        let (s, o) = (self.bounds(), other.bounds());
        let lo_ok = s.lo > o.lo || (s.lo == o.lo && (o.lo_closed || !s.lo_closed));
        let hi_ok = s.hi < o.hi || (s.hi == o.hi && (o.hi_closed || !s.hi_closed));
        lo_ok && hi_ok
    }

    /// Closure of `self` inside `other`.
    pub fn closure_within(&self, other: &Interval) -> bool {
        other.contains_point(&self.lo()) && other.contains_point(&self.hi())
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (s, o) = (self.bounds(), other.bounds());
        let (lo, lc) = match s.lo.cmp(&o.lo) {
            Ordering::Less => (o.lo, o.lo_closed),
            Ordering::Greater => (s.lo, s.lo_closed),
            Ordering::Equal => (s.lo, s.lo_closed && o.lo_closed),
        };
        let (hi, hc) = match s.hi.cmp(&o.hi) {
            Ordering::Less => (s.hi, s.hi_closed),
            Ordering::Greater => (o.hi, o.hi_closed),
            Ordering::Equal => (s.hi, s.hi_closed && o.hi_closed),
        };
        Interval::from_bounds(lo, lc, hi, hc)
    }

    /// `R_ε`: shrink each finite-side endpoint by ε; clamped sides stay.
    pub fn retract(&self, eps: &Q) -> Option<Interval> {
        match self {
            Interval::Full => Some(Interval::Full),
            Interval::Left(b) => Interval::from_bounds(zero(), true, b - eps, false),
            Interval::Right(a) => Interval::from_bounds(a + eps, false, one(), true),
            Interval::Open(a, b) => Interval::from_bounds(a + eps, false, b - eps, false),
        }
    }

    /// `N_ε`, clamped to `[0,1]`.
    pub fn neighborhood(&self, eps: &Q) -> Interval {
        let b = self.bounds();
        let lo = &b.lo - eps;
        let hi = &b.hi + eps;
        Interval::from_bounds(lo, b.lo_closed, hi, b.hi_closed).expect("neighborhood is nonempty")
    }

    /// Sort key: left boundary, closed-at-0 first.
    pub(crate) fn order_key(&self) -> (Q, bool) {
        (self.lo(), !self.closed_at_zero())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Full => write!(f, "[0,1]"),
            Interval::Left(b) => write!(f, "[0,{})", fmt_q(b)),
            Interval::Right(a) => write!(f, "({},1]", fmt_q(a)),
            Interval::Open(a, b) => write!(f, "({},{})", fmt_q(a), fmt_q(b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn clamping() {
        assert_eq!(Interval::from_bounds(q(-1, 4), false, q(1, 2), false), Some(Interval::Left(q(1, 2))));
        assert_eq!(Interval::from_bounds(q(1, 2), false, q(5, 4), false), Some(Interval::Right(q(1, 2))));
        assert_eq!(Interval::from_bounds(q(1, 2), false, q(1, 2), false), None);
        assert_eq!(Interval::from_bounds(zero(), false, one(), false), Some(Interval::Open(zero(), one())));
    }

    #[test]
    fn containment() {
        let a = Interval::Open(q(1, 4), q(1, 2));
        let b = Interval::Open(zero(), q(3, 4));
        assert!(a.closure_within(&b));
        assert!(!b.closure_within(&b));
        assert!(Interval::Full.closure_within(&Interval::Full));
        assert!(Interval::Left(q(1, 2)).subset_of(&Interval::Full));
        assert!(!Interval::Left(q(1, 2)).subset_of(&Interval::Open(zero(), one())));
    }

    #[test]
    fn retract_and_grow() {
        let a = Interval::Open(q(1, 8), q(1, 4));
        assert_eq!(a.neighborhood(&q(1, 4)), Interval::Left(q(1, 2)));
        assert_eq!(Interval::Open(q(1, 4), q(1, 2)).retract(&q(1, 8)), None);
        assert_eq!(Interval::Right(q(1, 2)).retract(&q(1, 4)), Some(Interval::Right(q(3, 4))));
    }
}
