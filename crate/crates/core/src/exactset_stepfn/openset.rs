use std::fmt;

use crate::rational::{one, zero, Q};

use super::interval::Interval;

/// Finite union of intervals in canonical maximal-component form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpenSet {
    comps: Vec<Interval>,
}

impl OpenSet {
    pub fn empty() -> OpenSet {
        OpenSet { comps: Vec::new() }
    }

    pub fn full() -> OpenSet {
        OpenSet { comps: vec![Interval::Full] }
    }

    pub fn single(i: Interval) -> OpenSet {
        OpenSet { comps: vec![i] }
    }

    /// Union of arbitrary intervals, canonicalized.
    pub fn from_intervals(items: impl IntoIterator<Item = Interval>) -> OpenSet {
        let mut items: Vec<Interval> = items.into_iter().collect();
        items.sort_by_key(|i| i.order_key());
        let mut out: Vec<Interval> = Vec::with_capacity(items.len());
        for next in items {
            if let Some(cur) = out.last_mut() {
                let c = cur.bounds();
                let n = next.bounds();
                if n.lo < c.hi {
                    let (hi, hc) = if n.hi > c.hi {
                        (n.hi, n.hi_closed)
                    } else if n.hi == c.hi {
                        (c.hi, c.hi_closed || n.hi_closed)
                    } else {
                        (c.hi, c.hi_closed)
                    };
                    let lc = c.lo_closed || (n.lo == c.lo && n.lo_closed);
                    *cur = Interval::from_bounds(c.lo, lc, hi, hc).expect("merge of nonempty");
                    continue;
                }
            }
            out.push(next);
        }
        OpenSet { comps: out }
    }

    /// Accepts components as given after checking canonical form.
    pub fn from_canonical(comps: Vec<Interval>) -> Result<OpenSet, String> {
        for c in &comps {
            c.check()?;
        }
        let s = OpenSet::from_intervals(comps.clone());
        if s.comps != comps {
            return Err("components not in canonical sorted disjoint form".into());
        }
        Ok(s)
    }

    pub fn components(&self) -> &[Interval] {
        &self.comps
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.comps.len() == 1 && self.comps[0] == Interval::Full
    }

    pub fn union(&self, other: &OpenSet) -> OpenSet {
        if other.is_empty() {
            return self.clone();
        }
        if self.is_empty() {
            return other.clone();
        }
        OpenSet::from_intervals(self.comps.iter().chain(other.comps.iter()).cloned())
    }

    pub fn intersect(&self, other: &OpenSet) -> OpenSet {
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        let mut out = Vec::new();
        for a in &self.comps {
            for b in &other.comps {
                if let Some(c) = a.intersect(b) {
                    out.push(c);
                }
            }
        }
        // pieces of disjoint canonical sets are already disjoint
        OpenSet::from_intervals(out)
    }

    pub fn contains_point(&self, x: &Q) -> bool {
        self.comps.iter().any(|c| c.contains_point(x))
    }

    pub fn subset_of(&self, other: &OpenSet) -> bool {
        self.comps.iter().all(|c| other.comps.iter().any(|d| c.subset_of(d)))
    }

    /// Closure of `self` lies in `other`.
    pub fn compactly_contained(&self, other: &OpenSet) -> bool {
        self.comps.iter().all(|c| other.comps.iter().any(|d| c.closure_within(d)))
    }

    /// `[0,1] ∖ closure(self)`.
    pub fn complement_of_closure(&self) -> OpenSet {
        if self.comps.is_empty() {
            return OpenSet::full();
        }
        let mut out = Vec::new();
        let first = &self.comps[0];
        if first.lo() > zero() {
            out.push(Interval::Left(first.lo()));
        }
        for w in self.comps.windows(2) {
            let (h, l) = (w[0].hi(), w[1].lo());
            if h < l {
                out.push(Interval::Open(h, l));
            }
        }
        let last = self.comps.last().unwrap();
        if last.hi() < one() {
            out.push(Interval::Right(last.hi()));
        }
        OpenSet { comps: out }
    }

    pub fn retract(&self, eps: &Q) -> OpenSet {
        OpenSet { comps: self.comps.iter().filter_map(|c| c.retract(eps)).collect() }
    }

    pub fn neighborhood(&self, eps: &Q) -> OpenSet {
        OpenSet::from_intervals(self.comps.iter().map(|c| c.neighborhood(eps)))
    }

    /// All finite endpoints, including clamped ones.
    pub fn endpoints(&self) -> Vec<Q> {
        self.comps.iter().flat_map(|c| [c.lo(), c.hi()]).collect()
    }

    /// Largest `δ` with `self ⊆ R_δ(outer)`; `None` when every `δ` works.
    /// Assumes `self ⊆ outer`.
    pub fn margin_within(&self, outer: &OpenSet) -> Option<Q> {
        let mut best: Option<Q> = None;
        let mut take = |g: Q| {
            if best.as_ref().map_or(true, |b| &g < b) {
                best = Some(g);
            }
        };
        for c in &self.comps {
            let Some(d) = outer.comps.iter().find(|d| c.subset_of(d)) else {
                continue;
            };
            if !d.closed_at_zero() {
                take(c.lo() - d.lo());
            }
            if !d.closed_at_one() {
                take(d.hi() - c.hi());
            }
        }
        best
    }

    /// Smallest distance between consecutive components.
    pub fn min_separation(&self) -> Option<Q> {
        self.comps.windows(2).map(|w| w[1].lo() - w[0].hi()).min()
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "∅");
        }
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
