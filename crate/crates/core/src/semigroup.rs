//! Finite direct sums `⊕ Lsc([0,1], N̄)` on basic elements.

use std::fmt;

use num_integer::Integer;

use crate::error::{pre, Error, Result};
use crate::exactset_stepfn::{OpenSet, StepFn};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemigroupElem {
    pub parts: Vec<StepFn>,
}

impl SemigroupElem {
    pub fn new(parts: Vec<StepFn>) -> Result<SemigroupElem> {
        if parts.is_empty() {
            return pre("arity must be at least 1");
        }
        Ok(SemigroupElem { parts })
    }

    pub fn zero(arity: usize) -> SemigroupElem {
        SemigroupElem { parts: vec![StepFn::zero(); arity] }
    }

    pub fn single(f: StepFn) -> SemigroupElem {
        SemigroupElem { parts: vec![f] }
    }

    /// `f` placed in coordinate `at` of an `arity`-tuple.
    pub fn embed(f: StepFn, at: usize, arity: usize) -> SemigroupElem {
        let mut parts = vec![StepFn::zero(); arity];
        parts[at] = f;
        SemigroupElem { parts }
    }

    /// The compact integer vector `ks`.
    pub fn compact(ks: &[usize]) -> SemigroupElem {
        SemigroupElem { parts: ks.iter().map(|&k| StepFn::constant(k)).collect() }
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    fn same(&self, other: &SemigroupElem) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::Signature(self.arity(), other.arity()));
        }
        Ok(())
    }

    pub fn add(&self, other: &SemigroupElem) -> Result<SemigroupElem> {
        self.same(other)?;
        Ok(SemigroupElem { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sum<'a>(arity: usize, items: impl IntoIterator<Item = &'a SemigroupElem>) -> Result<SemigroupElem> {
        items.into_iter().try_fold(SemigroupElem::zero(arity), |acc, x| acc.add(x))
    }

    pub fn scale(&self, k: usize) -> SemigroupElem {
        SemigroupElem { parts: self.parts.iter().map(|p| p.scale(k)).collect() }
    }

    pub fn leq(&self, other: &SemigroupElem) -> Result<bool> {
        self.same(other)?;
        Ok(self.parts.iter().zip(&other.parts).all(|(a, b)| a.leq(b)))
    }

    pub fn ll(&self, other: &SemigroupElem) -> Result<bool> {
        self.same(other)?;
        Ok(self.parts.iter().zip(&other.parts).all(|(a, b)| a.ll(b)))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(StepFn::is_zero)
    }

    pub fn is_compact(&self) -> bool {
        self.parts.iter().all(StepFn::is_compact)
    }

    /// Integer vector of a compact element.
    pub fn compact_vector(&self) -> Option<Vec<usize>> {
        self.parts.iter().map(StepFn::compact_value).collect()
    }
}

impl fmt::Display for SemigroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.compact_vector() {
            let s: Vec<String> = v.iter().map(|k| k.to_string()).collect();
            return write!(f, "({})", s.join(","));
        }
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub fn elem_add(x: &SemigroupElem, y: &SemigroupElem) -> Result<SemigroupElem> {
    x.add(y)
}

pub fn elem_leq(x: &SemigroupElem, y: &SemigroupElem) -> Result<bool> {
    x.leq(y)
}

pub fn elem_ll(x: &SemigroupElem, y: &SemigroupElem) -> Result<bool> {
    x.ll(y)
}

pub fn is_compact(x: &SemigroupElem) -> bool {
    x.is_compact()
}

/// `u ⊖ f` for a single part with `u = k·1`: `{x ≥ c} = [0,1] ∖ closure({f ≥ k−c+1})`.
pub fn subtract_part(k: usize, f: &StepFn) -> Result<StepFn> {
    if f.max_value() > k {
        return pre("subtract_from_compact: f ≤ u");
    }
    let levels: Vec<OpenSet> = (1..=k).map(|c| f.level(k - c + 1).complement_of_closure()).collect();
    Ok(StepFn::from_levels(levels).expect("complements of nested closures are nested"))
}

/// Largest basic `x` with `x + f ≤ u`, for compact `u ≥ f`.
pub fn subtract_from_compact(u: &SemigroupElem, f: &SemigroupElem) -> Result<SemigroupElem> {
    let ks = u.compact_vector().ok_or_else(|| Error::Precondition("subtract_from_compact: u compact".into()))?;
    if !f.leq(u)? {
        return pre("subtract_from_compact: f ≤ u");
    }
    let parts = ks.iter().zip(&f.parts).map(|(&k, p)| subtract_part(k, p)).collect::<Result<_>>()?;
    Ok(SemigroupElem { parts })
}

/// Finds compact `e` and `ks` with `p_s = k_s·e` for every `s`.
pub fn common_compact_divisor(ps: &[SemigroupElem]) -> Result<Option<(SemigroupElem, Vec<usize>)>> {
    let vecs = ps
        .iter()
        .map(|p| p.compact_vector().ok_or_else(|| Error::Precondition("common_compact_divisor: compact input".into())))
        .collect::<Result<Vec<_>>>()?;
    let Some(first) = vecs.first() else {
        return pre("common_compact_divisor: nonempty input");
    };
    let arity = first.len();
    if let Some(bad) = vecs.iter().find(|v| v.len() != arity) {
        return Err(Error::Signature(arity, bad.len()));
    }
    let Some(lead) = vecs.iter().find(|v| v.iter().any(|&c| c > 0)) else {
        return Ok(Some((SemigroupElem::zero(arity), vec![1; vecs.len()])));
    };
    let g = lead.iter().fold(0usize, |g, &c| g.gcd(&c));
    let e: Vec<usize> = lead.iter().map(|&c| c / g).collect();
    let pivot = e.iter().position(|&c| c > 0).unwrap();
    let mut ks = Vec::with_capacity(vecs.len());
    for v in &vecs {
        let k = v[pivot] / e[pivot];
        if v.iter().zip(&e).any(|(&c, &d)| c != k * d) {
            return Ok(None);
        }
        ks.push(k);
    }
    Ok(Some((SemigroupElem::compact(&e), ks)))
}
