//! The monoids `X_n`: finite multisets of pairs `(α,β)`, `α < β`, over
//! `Ω_n = {−∞, 0, …, n, ∞}`, with the interleaving order `≺` and the
//! exchange equivalence `≃`.

mod prec;
mod simeq;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactset_stepfn::{Interval, StepFn};
use crate::rational::{grid, grid_index, Q};

pub use prec::{prec, prec_oracle, prec_single, ChainCert, PartitionCert};
pub use simeq::{
    certificate_target, check_exchange_certificate, replay_certificate, reverse_certificate, simeq, simeq_certificate,
    simeq_path, ExchangeStep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Omega {
    NegInf,
    Fin(u64),
    PosInf,
}

impl Omega {
    pub fn parse(s: &str) -> std::result::Result<Omega, String> {
        match s.trim() {
            "-inf" | "−∞" | "-∞" | "-oo" => Ok(Omega::NegInf),
            "inf" | "+inf" | "∞" | "+∞" | "oo" => Ok(Omega::PosInf),
            t => t.parse::<u64>().map(Omega::Fin).map_err(|_| format!("bad Ω element {t:?}")),
        }
    }
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Omega::NegInf => write!(f, "-inf"),
            Omega::Fin(k) => write!(f, "{k}"),
            Omega::PosInf => write!(f, "inf"),
        }
    }
}

/// `a ≺ b`: strictly below, or both `−∞`, or both `∞`.
pub fn omega_prec(a: Omega, b: Omega) -> bool {
    match (a, b) {
        (Omega::NegInf, Omega::NegInf) | (Omega::PosInf, Omega::PosInf) => true,
        _ => a < b,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XnPair {
    pub lo: Omega,
    pub hi: Omega,
}

impl XnPair {
    pub fn new(lo: Omega, hi: Omega, n: u64) -> Result<XnPair> {
        let fits = |o: Omega| !matches!(o, Omega::Fin(k) if k > n);
        if lo >= hi || !fits(lo) || !fits(hi) {
            return Err(Error::Precondition(format!("({lo},{hi}) is not a pair of X_{n}")));
        }
        Ok(XnPair { lo, hi })
    }

    pub fn fin(a: u64, b: u64) -> XnPair {
        XnPair { lo: Omega::Fin(a), hi: Omega::Fin(b) }
    }

    pub fn full() -> XnPair {
        XnPair { lo: Omega::NegInf, hi: Omega::PosInf }
    }

    /// `(α', β') ≺ (α, β)`.
    pub fn prec(&self, target: &XnPair) -> bool {
        omega_prec(target.lo, self.lo) && omega_prec(self.hi, target.hi)
    }

    /// `F((α,β)) = (α/n, β/n) ∩ [0,1]`; `None` when empty.
    pub fn feval(&self, n: u64) -> Option<Interval> {
        let (lo, lc) = match self.lo {
            Omega::NegInf => (grid(0, 1), true),
            Omega::Fin(a) => (grid(a, n), false),
            Omega::PosInf => return None,
        };
        let (hi, hc) = match self.hi {
            Omega::PosInf => (grid(1, 1), true),
            Omega::Fin(b) => (grid(b, n), false),
            Omega::NegInf => return None,
        };
        Interval::from_bounds(lo, lc, hi, hc)
    }

    /// `(−∞,0)` and `(n,∞)`, the pairs with empty image.
    pub fn is_degenerate(&self, n: u64) -> bool {
        (self.lo == Omega::NegInf && self.hi == Omega::Fin(0)) || (self.lo == Omega::Fin(n) && self.hi == Omega::PosInf)
    }
}

impl fmt::Display for XnPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// An element of `X_n`; pairs kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XnElem {
    n: u64,
    pairs: Vec<XnPair>,
}

impl XnElem {
    pub fn new(n: u64, mut pairs: Vec<XnPair>) -> Result<XnElem> {
        if n == 0 {
            return Err(Error::Precondition("n must be positive".into()));
        }
        for p in &pairs {
            XnPair::new(p.lo, p.hi, n)?;
        }
        pairs.sort();
        Ok(XnElem { n, pairs })
    }

    pub fn zero(n: u64) -> XnElem {
        XnElem { n, pairs: Vec::new() }
    }

    pub fn single(n: u64, p: XnPair) -> Result<XnElem> {
        XnElem::new(n, vec![p])
    }

    /// Parses `"(1,2)+(2,3)"`; `"(0,0)"` and `"0"` denote zero.
    pub fn parse(n: u64, text: &str) -> Result<XnElem> {
        let err = |pos: usize, msg: String| Error::Parse { pos: format!("column {}", pos + 1), msg };
        let t = text.trim();
        if t.is_empty() || t == "0" {
            return Ok(XnElem::zero(n));
        }
        let mut pairs = Vec::new();
        let mut offset = text.len() - text.trim_start().len();
        for term in t.split('+') {
            let lead = term.len() - term.trim_start().len();
            let s = term.trim();
            let inner = s
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| err(offset + lead, format!("expected (a,b), found {s:?}")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| err(offset + lead, format!("expected a comma in {s:?}")))?;
            let lo = Omega::parse(a).map_err(|m| err(offset + lead + 1, m))?;
            let hi = Omega::parse(b).map_err(|m| err(offset + lead + 1 + a.len() + 1, m))?;
            if !(lo == Omega::Fin(0) && hi == Omega::Fin(0)) {
                pairs.push(XnPair::new(lo, hi, n).map_err(|e| err(offset + lead, e.to_string()))?);
            }
            offset += term.len() + 1;
        }
        XnElem::new(n, pairs)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn pairs(&self) -> &[XnPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub(crate) fn same_n(&self, other: &XnElem) -> Result<()> {
        if self.n != other.n {
            return Err(Error::NMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &XnElem) -> Result<XnElem> {
        self.same_n(other)?;
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        pairs.sort();
        Ok(XnElem { n: self.n, pairs })
    }

    pub fn scale(&self, k: usize) -> XnElem {
        let mut pairs: Vec<XnPair> = (0..k).flat_map(|_| self.pairs.iter().copied()).collect();
        pairs.sort();
        XnElem { n: self.n, pairs }
    }

    pub(crate) fn from_sorted(n: u64, pairs: Vec<XnPair>) -> XnElem {
        debug_assert!(pairs.windows(2).all(|w| w[0] <= w[1]));
        XnElem { n, pairs }
    }

    /// Pairs `(−∞,0)` and `(n,∞)` in this element.
    pub fn degenerate_part(&self) -> XnElem {
        XnElem { n: self.n, pairs: self.pairs.iter().copied().filter(|p| p.is_degenerate(self.n)).collect() }
    }

    pub fn nondegenerate_part(&self) -> XnElem {
        XnElem { n: self.n, pairs: self.pairs.iter().copied().filter(|p| !p.is_degenerate(self.n)).collect() }
    }
}

impl fmt::Display for XnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "(0,0)");
        }
        for (k, p) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

pub fn feval(x: &XnElem) -> StepFn {
    StepFn::from_indicators(x.pairs.iter().filter_map(|p| p.feval(x.n)))
}

pub fn in_ln(f: &StepFn, n: u64) -> bool {
    f.endpoints().iter().all(|e| grid_index(e, n).is_some())
}

/// In `L_n` with components of each level at distance at least `2/n`.
pub fn in_ln0(f: &StepFn, n: u64) -> bool {
    let min = grid(2, n);
    in_ln(f, n) && f.levels().iter().all(|l| l.min_separation().map_or(true, |d| d >= min))
}

fn to_omega(x: &Q, n: u64) -> Omega {
    Omega::Fin(grid_index(x, n).expect("checked by in_ln"))
}

/// The canonical `q_f`: one pair per component of each level set.
pub fn canonical_qf(f: &StepFn, n: u64) -> Result<XnElem> {
    if n == 0 || !in_ln(f, n) {
        return Err(Error::Precondition(format!("canonical_qf: f not in L_{n}")));
    }
    let pairs = f
        .components()
        .map(|(_, c)| match c {
            Interval::Full => XnPair::full(),
            Interval::Left(b) => XnPair { lo: Omega::NegInf, hi: to_omega(b, n) },
            Interval::Right(a) => XnPair { lo: to_omega(a, n), hi: Omega::PosInf },
            Interval::Open(a, b) => XnPair { lo: to_omega(a, n), hi: to_omega(b, n) },
        })
        .collect();
    XnElem::new(n, pairs)
}

impl PartialOrd for XnElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.n == other.n).then(|| self.pairs.cmp(&other.pairs))
    }
}
