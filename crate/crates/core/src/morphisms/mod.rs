//! Finite certificates of Cu-morphisms `Lsc([0,1], N̄)^M → S`.
//!
//! A [`GridMorphism`] at resolution `N` records the images of `χ(i/N,1]`,
//! `χ[0,i/N)` and `1`. A certificate passing [`validate`] determines a
//! Cu-morphism, and [`evaluate`] computes it on `1/N`-aligned step functions.

mod distance;
mod lift;

use std::collections::BTreeMap;
use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactset_stepfn::{Interval, StepFn};
use crate::rational::{grid, grid_index};
use crate::semigroup::SemigroupElem;

pub use distance::{
    cauchy_limit_bound, composition_modulus, distance_bracket, margin_for_pair, retraction_distance_check,
    Bracket, EpsSchedule, Margin, MAX_SLACK,
};
pub use lift::{interpolate_between, interpolate_part, interpolate_with, lift_from_chain};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridMorphism {
    #[serde(rename = "N")]
    pub n: u64,
    pub slack: u32,
    pub unit: SemigroupElem,
    pub v: Vec<SemigroupElem>,
    pub w: Vec<SemigroupElem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGridMorphism {
    pub sources: Vec<GridMorphism>,
}

/// Failed conditions, one line each; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub violations: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, s: impl Into<String>) {
        self.violations.push(s.into());
    }

    pub fn into_result(self) -> Result<()> {
        if self.ok() {
            Ok(())
        } else {
            Err(Error::Validation(self.violations.join("; ")))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        write!(f, "{}", self.violations.join("\n"))
    }
}

impl GridMorphism {
    pub fn arity(&self) -> usize {
        self.unit.arity()
    }

    fn index(&self, x: &crate::rational::Q) -> Result<usize> {
        grid_index(x, self.n)
            .map(|i| i as usize)
            .ok_or_else(|| Error::Alignment(format!("{} is not a multiple of 1/{}", crate::rational::fmt_q(x), self.n)))
    }

    /// `x − unit`, defined when `x ≥ unit` on every part.
    fn minus_unit(&self, x: &SemigroupElem) -> Result<SemigroupElem> {
        let ks = self.unit.compact_vector().ok_or_else(|| Error::Validation("unit is not compact".into()))?;
        let parts = x
            .parts
            .iter()
            .zip(ks)
            .map(|(p, k)| p.minus_constant(k))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Validation("v_i + w_j does not dominate the unit".into()))?;
        Ok(SemigroupElem { parts })
    }

    /// Image of the indicator of one interval.
    pub fn eval_interval(&self, c: &Interval) -> Result<SemigroupElem> {
        match c {
            Interval::Full => Ok(self.unit.clone()),
            Interval::Right(a) => Ok(self.v[self.index(a)?].clone()),
            Interval::Left(b) => Ok(self.w[self.index(b)?].clone()),
            Interval::Open(a, b) => {
                let (i, j) = (self.index(a)?, self.index(b)?);
                if j < i + self.slack as usize {
                    return Err(Error::Slack(format!("{c} spans {} cells, slack is {}", j - i, self.slack)));
                }
                self.minus_unit(&self.v[i].add(&self.w[j])?)
            }
        }
    }
}

/// Checks the certificate conditions:
/// (a) compact unit, `v_N = 0`, `w_0 = 0`, `v_0 ≤ unit`, `w_N ≤ unit`;
/// (b) `v_{i+1} ≪ v_i`, `w_i ≤ w_{i+1}`;
/// (c) `w_i + v_j ≤ unit` for `j ≥ i`;
/// (d) `unit ≤ w_{i'} + v_j` for `i' ≥ j + σ`.
///
/// By monotonicity (c) is checked at `j = i` and (d) at `i' = j + σ`.
pub fn validate(phi: &GridMorphism) -> Report {
    let mut r = Report::default();
    let n = phi.n as usize;
    let m = phi.arity();
    if phi.n == 0 {
        r.push("resolution N must be positive");
        return r;
    }
    if phi.v.len() != n + 1 || phi.w.len() != n + 1 {
        r.push(format!("expected {} v and w values, found {} and {}", n + 1, phi.v.len(), phi.w.len()));
        return r;
    }
    if let Some(i) = phi.v.iter().chain(&phi.w).position(|x| x.arity() != m) {
        r.push(format!("value {i} has arity different from the unit's {m}"));
        return r;
    }
    if !(1..=MAX_SLACK).contains(&phi.slack) {
        r.push(format!("slack must be 1 or 2, found {}", phi.slack));
    }
    if !phi.unit.is_compact() {
        r.push("(a) unit is not compact");
        return r;
    }
    if !phi.v[n].is_zero() {
        r.push("(a) v_N ≠ 0");
    }
    if !phi.w[0].is_zero() {
        r.push("(a) w_0 ≠ 0");
    }
    let leq = |a: &SemigroupElem, b: &SemigroupElem| a.leq(b).unwrap_or(false);
    if !leq(&phi.v[0], &phi.unit) {
        r.push("(a) v_0 ≰ unit");
    }
    if !leq(&phi.w[n], &phi.unit) {
        r.push("(a) w_N ≰ unit");
    }
    for i in 0..n {
        if !phi.v[i + 1].ll(&phi.v[i]).unwrap_or(false) {
            r.push(format!("(b) v_{} ≪ v_{} fails", i + 1, i));
        }
        if !leq(&phi.w[i], &phi.w[i + 1]) {
            r.push(format!("(b) w_{} ≤ w_{} fails", i, i + 1));
        }
    }
    for i in 0..=n {
        if !leq(&phi.w[i].add(&phi.v[i]).unwrap(), &phi.unit) {
            r.push(format!("(c) tightness w_{i} + v_{i} ≤ unit fails"));
        }
    }
    let s = phi.slack as usize;
    for j in 0..=n.saturating_sub(s) {
        if !leq(&phi.unit, &phi.w[j + s].add(&phi.v[j]).unwrap()) {
            r.push(format!("(d) fullness unit ≤ w_{} + v_{} fails", j + s, j));
        }
    }
    r
}

impl MultiGridMorphism {
    pub fn single(phi: GridMorphism) -> MultiGridMorphism {
        MultiGridMorphism { sources: vec![phi] }
    }

    pub fn target_arity(&self) -> usize {
        self.sources.first().map_or(0, GridMorphism::arity)
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::default();
        if self.sources.is_empty() {
            r.push("no sources");
            return r;
        }
        let m = self.target_arity();
        for (s, phi) in self.sources.iter().enumerate() {
            if phi.arity() != m {
                r.push(format!("source {s}: target arity {} ≠ {m}", phi.arity()));
            }
            for v in validate(phi).violations {
                r.push(format!("source {s}: {v}"));
            }
        }
        r
    }

    /// Units of all sources, as a tuple of target elements.
    pub fn units(&self) -> Vec<SemigroupElem> {
        self.sources.iter().map(|p| p.unit.clone()).collect()
    }
}

/// `φ(f)` for `f` with breakpoints on the `1/N` grid.
///
/// Components map as `[0,1] ↦ unit`, `(i/N,1] ↦ v_i`, `[0,j/N) ↦ w_j` and
/// `(i/N,j/N) ↦ v_i + w_j − unit`.
pub fn evaluate(phi: &GridMorphism, f: &StepFn) -> Result<SemigroupElem> {
    let mut acc = SemigroupElem::zero(phi.arity());
    for (_, c) in f.components() {
        acc = acc.add(&phi.eval_interval(c)?)?;
    }
    Ok(acc)
}

/// Sum of the images of the given indicators.
pub fn evaluate_indicators(phi: &GridMorphism, items: &[Interval]) -> Result<SemigroupElem> {
    let mut acc = SemigroupElem::zero(phi.arity());
    for c in items {
        acc = acc.add(&phi.eval_interval(c)?)?;
    }
    Ok(acc)
}

/// Grid index `i` of `χ(i/l,1]`, or `None` for the unit `1`.
pub type GridIdx = Option<u64>;

/// `Σ c_{s,i} χ^s(i/l,1]` in the additive span `B_l^M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridBasicElement {
    pub l: u64,
    pub counts: Vec<BTreeMap<GridIdx, usize>>,
}

impl GridBasicElement {
    pub fn zero(l: u64, sources: usize) -> GridBasicElement {
        GridBasicElement { l, counts: vec![BTreeMap::new(); sources] }
    }

    pub fn sources(&self) -> usize {
        self.counts.len()
    }

    /// Adds `c · χ^s(i/l,1]` (`i = None` for `1_s`).
    pub fn with(mut self, s: usize, i: GridIdx, c: usize) -> GridBasicElement {
        if c > 0 {
            *self.counts[s].entry(i).or_insert(0) += c;
        }
        self
    }

    pub fn add(&self, other: &GridBasicElement) -> Result<GridBasicElement> {
        if self.l != other.l || self.sources() != other.sources() {
            return Err(Error::Precondition("grid elements over different l or source counts".into()));
        }
        let mut out = self.clone();
        for (s, m) in other.counts.iter().enumerate() {
            for (&i, &c) in m {
                out = out.with(s, i, c);
            }
        }
        Ok(out)
    }

    pub fn check(&self) -> Result<()> {
        for m in &self.counts {
            if let Some(&Some(i)) = m.keys().find(|k| matches!(k, Some(i) if *i >= self.l)) {
                return Err(Error::Precondition(format!("grid index {i} must be below l = {}", self.l)));
            }
        }
        Ok(())
    }

    /// The element of `Lsc^M` it denotes.
    pub fn to_elem(&self) -> SemigroupElem {
        let parts = self
            .counts
            .iter()
            .map(|m| {
                let mut f = StepFn::zero();
                for (&i, &c) in m {
                    let g = match i {
                        None => StepFn::constant(1),
                        Some(i) => StepFn::indicator(Interval::Right(grid(i, self.l))),
                    };
                    f = f.add(&g.scale(c));
                }
                f
            })
            .collect();
        SemigroupElem { parts }
    }
}

/// `φ(x)` for `x ∈ B_l^M`.
pub fn evaluate_multi(phi: &MultiGridMorphism, x: &GridBasicElement) -> Result<SemigroupElem> {
    if x.sources() != phi.sources.len() {
        return Err(Error::Signature(phi.sources.len(), x.sources()));
    }
    x.check()?;
    let mut acc = SemigroupElem::zero(phi.target_arity());
    for (src, m) in phi.sources.iter().zip(&x.counts) {
        if src.n % x.l != 0 {
            return Err(Error::Alignment(format!("l = {} does not divide N = {}", x.l, src.n)));
        }
        for (&i, &c) in m {
            let img = match i {
                None => &src.unit,
                Some(i) => &src.v[(i * (src.n / x.l)) as usize],
            };
            acc = acc.add(&img.scale(c))?;
        }
    }
    Ok(acc)
}

/// `φ(x)` for `x ∈ Lsc^M`, summing `φ_s(x_s)` over sources.
pub fn evaluate_elem(phi: &MultiGridMorphism, x: &SemigroupElem) -> Result<SemigroupElem> {
    let k = phi.sources.len();
    if x.arity() != k {
        return Err(Error::Signature(k, x.arity()));
    }
    let mut acc = SemigroupElem::zero(phi.target_arity());
    for (src, part) in phi.sources.iter().zip(&x.parts) {
        acc = acc.add(&evaluate(src, part)?)?;
    }
    Ok(acc)
}

/// `outer ∘ inner`: every inner value is pushed through the outer sources.
///
/// The result keeps the inner resolution and slack (fullness transfers by
/// monotonicity and additivity of the outer map) and is revalidated.
pub fn compose(outer: &MultiGridMorphism, inner: &MultiGridMorphism) -> Result<MultiGridMorphism> {
    let m = outer.target_arity();
    if let Some(bad) = outer.sources.iter().find(|s| s.arity() != m) {
        return Err(Error::Signature(m, bad.arity()));
    }
    let push = |x: &SemigroupElem| evaluate_elem(outer, x);
    let mut sources = Vec::with_capacity(inner.sources.len());
    for g in &inner.sources {
        let out = GridMorphism {
            n: g.n,
            slack: g.slack,
            unit: push(&g.unit)?,
            v: g.v.iter().map(push).collect::<Result<_>>()?,
            w: g.w.iter().map(push).collect::<Result<_>>()?,
        };
        validate(&out).into_result()?;
        sources.push(out);
    }
    Ok(MultiGridMorphism { sources })
}

impl Serialize for GridBasicElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            l: u64,
            counts: Vec<BTreeMap<String, usize>>,
        }
        let counts = self
            .counts
            .iter()
            .map(|m| m.iter().map(|(i, c)| (i.map_or("-inf".to_string(), |i| i.to_string()), *c)).collect())
            .collect();
        Raw { l: self.l, counts }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridBasicElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            l: u64,
            counts: Vec<BTreeMap<String, usize>>,
        }
        let raw = Raw::deserialize(d)?;
        let mut out = GridBasicElement::zero(raw.l, raw.counts.len());
        for (s, m) in raw.counts.iter().enumerate() {
            for (k, &c) in m {
                let i = if k == "-inf" {
                    None
                } else {
                    Some(k.parse::<u64>().map_err(|_| de::Error::custom(format!("bad grid index {k:?}")))?)
                };
                out = out.with(s, i, c);
            }
        }
        out.check().map_err(de::Error::custom)?;
        Ok(out)
    }
}

/// Reference certificates used by tests and examples.
pub mod fixtures {
    use super::*;
    use crate::semigroup::subtract_from_compact;

    /// `v_i = χ(i/N,1]`, `w_i = χ[0,i/N)`, unit `1`, slack 1.
    pub fn identity(n: u64) -> GridMorphism {
        let one = SemigroupElem::compact(&[1]);
        let v: Vec<SemigroupElem> = (0..=n)
            .map(|i| {
                if i == n {
                    SemigroupElem::zero(1)
                } else {
                    SemigroupElem::single(StepFn::indicator(Interval::Right(grid(i, n))))
                }
            })
            .collect();
        let w = (0..=n)
            .map(|i| {
                if i == 0 {
                    SemigroupElem::zero(1)
                } else {
                    subtract_from_compact(&one, &v[i as usize]).unwrap()
                }
            })
            .collect();
        GridMorphism { n, slack: 1, unit: one, v, w }
    }

    /// `k·φ`, every value and the unit scaled by `k`.
    pub fn scaled(phi: &GridMorphism, k: usize) -> GridMorphism {
        let sc = |xs: &[SemigroupElem]| xs.iter().map(|x| x.scale(k)).collect();
        GridMorphism { n: phi.n, slack: phi.slack, unit: phi.unit.scale(k), v: sc(&phi.v), w: sc(&phi.w) }
    }

    /// `φ ∘ shift_c`: indices beyond `N` read as `v_N = 0` and `w_N`.
    pub fn shifted(phi: &GridMorphism, c: u64) -> GridMorphism {
        let n = phi.n as usize;
        let at = |i: usize| i.min(n);
        let v: Vec<SemigroupElem> = (0..=n).map(|i| phi.v[at(i + c as usize)].clone()).collect();
        let mut w: Vec<SemigroupElem> = vec![SemigroupElem::zero(phi.arity()); n + 1];
        for (i, wi) in w.iter_mut().enumerate().skip(1) {
            *wi = subtract_from_compact(&phi.unit, &v[i]).unwrap();
        }
        GridMorphism { n: phi.n, slack: 1, unit: phi.unit.clone(), v, w }
    }
}
