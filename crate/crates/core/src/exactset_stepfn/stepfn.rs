use std::fmt;

use crate::rational::{lcm_of_denoms, Q};

use super::interval::Interval;
use super::openset::OpenSet;

/// A basic element of `Lsc([0,1], N̄)`: nested level sets `{f ≥ 1} ⊇ {f ≥ 2} ⊇ …`.
///
/// Levels are canonical and trailing empty levels are dropped, so `==` is
/// equality of functions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StepFn {
    levels: Vec<OpenSet>,
}

impl StepFn {
    pub fn zero() -> StepFn {
        StepFn { levels: Vec::new() }
    }

    pub fn constant(k: usize) -> StepFn {
        StepFn { levels: vec![OpenSet::full(); k] }
    }

    pub fn indicator(i: Interval) -> StepFn {
        StepFn { levels: vec![OpenSet::single(i)] }
    }

    pub fn indicator_set(u: OpenSet) -> StepFn {
        StepFn::from_nested(vec![u])
    }

    /// Sum of indicators.
    pub fn from_indicators(items: impl IntoIterator<Item = Interval>) -> StepFn {
        items
            .into_iter()
            .fold(StepFn::zero(), |acc, i| acc.add(&StepFn::indicator(i)))
    }

    /// Checks nesting; drops trailing empty levels.
    pub fn from_levels(levels: Vec<OpenSet>) -> Result<StepFn, String> {
        for (k, w) in levels.windows(2).enumerate() {
            if !w[1].subset_of(&w[0]) {
                return Err(format!("level {} is not contained in level {}", k + 2, k + 1));
            }
        }
        Ok(StepFn::from_nested(levels))
    }

    pub(crate) fn from_nested(mut levels: Vec<OpenSet>) -> StepFn {
        while levels.last().is_some_and(|l| l.is_empty()) {
            levels.pop();
        }
        StepFn { levels }
    }

    pub fn levels(&self) -> &[OpenSet] {
        &self.levels
    }

    /// `{f ≥ k}` for `k ≥ 1`; empty above the maximum.
    pub fn level(&self, k: usize) -> OpenSet {
        if k == 0 {
            return OpenSet::full();
        }
        self.levels.get(k - 1).cloned().unwrap_or_default()
    }

    fn level_ref(&self, k: usize) -> Option<&OpenSet> {
        self.levels.get(k - 1)
    }

    pub fn max_value(&self) -> usize {
        self.levels.len()
    }

    pub fn is_zero(&self) -> bool {
        self.levels.is_empty()
    }

    /// Constant integer function.
    pub fn is_compact(&self) -> bool {
        self.levels.iter().all(|l| l.is_full())
    }

    /// The constant value if compact.
    pub fn compact_value(&self) -> Option<usize> {
        self.is_compact().then_some(self.levels.len())
    }

    pub fn value_at(&self, x: &Q) -> usize {
        self.levels.iter().take_while(|l| l.contains_point(x)).count()
    }

    pub fn add(&self, other: &StepFn) -> StepFn {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (kf, kg) = (self.max_value(), other.max_value());
        let mut levels = Vec::with_capacity(kf + kg);
        for k in 1..=kf + kg {
            let mut acc = OpenSet::empty();
            for i in k.saturating_sub(kg)..=kf.min(k) {
                let j = k - i;
                let piece = match (i, j) {
                    (0, j) => other.level(j),
                    (i, 0) => self.level(i),
                    (i, j) => self.level_ref(i).unwrap().intersect(other.level_ref(j).unwrap()),
                };
                acc = acc.union(&piece);
            }
            levels.push(acc);
        }
        StepFn::from_nested(levels)
    }

    /// `f − k` when the first `k` levels are `[0,1]`.
    pub fn minus_constant(&self, k: usize) -> Option<StepFn> {
        if self.levels.len() < k || !self.levels[..k].iter().all(OpenSet::is_full) {
            return None;
        }
        Some(StepFn { levels: self.levels[k..].to_vec() })
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a StepFn>) -> StepFn {
        items.into_iter().fold(StepFn::zero(), |acc, f| acc.add(f))
    }

    pub fn scale(&self, k: usize) -> StepFn {
        (0..k).fold(StepFn::zero(), |acc, _| acc.add(self))
    }

    pub fn leq(&self, other: &StepFn) -> bool {
        self.levels.len() <= other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a.subset_of(b))
    }

    /// Way-below: every level set compactly contained in the corresponding one.
    pub fn ll(&self, other: &StepFn) -> bool {
        self.levels.len() <= other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a.compactly_contained(b))
    }

    /// Largest `δ` with `self ≤ R_δ(other)` levelwise; `None` when unbounded.
    /// Assumes `self ≤ other`.
    pub fn margin_within(&self, other: &StepFn) -> Option<Q> {
        self.levels
            .iter()
            .zip(&other.levels)
            .filter_map(|(a, b)| a.margin_within(b))
            .min()
    }

    /// `(f ∨ g, f ∧ g)`.
    pub fn sup_inf(&self, other: &StepFn) -> (StepFn, StepFn) {
        let k = self.max_value().max(other.max_value());
        let mut sup = Vec::with_capacity(k);
        let mut inf = Vec::with_capacity(k);
        for l in 1..=k {
            let (a, b) = (self.level(l), other.level(l));
            sup.push(a.union(&b));
            inf.push(a.intersect(&b));
        }
        (StepFn::from_nested(sup), StepFn::from_nested(inf))
    }

    pub fn retract(&self, eps: &Q) -> StepFn {
        StepFn::from_nested(self.levels.iter().map(|l| l.retract(eps)).collect())
    }

    pub fn neighborhood(&self, eps: &Q) -> StepFn {
        StepFn::from_nested(self.levels.iter().map(|l| l.neighborhood(eps)).collect())
    }

    pub fn endpoints(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.levels.iter().flat_map(|l| l.endpoints()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Least common denominator of all endpoints.
    pub fn common_denominator(&self) -> num_bigint::BigInt {
        lcm_of_denoms(self.endpoints().iter())
    }

    /// Every component of every level, level by level.
    pub fn components(&self) -> impl Iterator<Item = (usize, &Interval)> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(k, l)| l.components().iter().map(move |c| (k + 1, c)))
    }
}

impl fmt::Display for StepFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.levels.is_empty() {
            return write!(f, "0");
        }
        for (k, l) in self.levels.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "≥{}: {}", k + 1, l)?;
        }
        Ok(())
    }
}
