use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::{canonical_qf, feval, omega_prec, XnElem, XnPair};

/// One rewrite `z + from[0] + from[1]  ≈  z + to[0] + to[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeStep {
    pub from: [XnPair; 2],
    pub to: [XnPair; 2],
}

fn sorted2(a: [XnPair; 2]) -> [XnPair; 2] {
    let mut a = a;
    a.sort();
    a
}

/// `(α,β)+(γ,δ) → (α,δ)+(γ,β)` with `α ≺ γ ≺ β ≺ δ`.
fn forward_ok(from: [XnPair; 2], to: [XnPair; 2]) -> bool {
    for (x, y) in [(from[0], from[1]), (from[1], from[0])] {
        let (a, b, c, d) = (x.lo, x.hi, y.lo, y.hi);
        if omega_prec(a, c) && omega_prec(c, b) && omega_prec(b, d) {
            let want = sorted2([XnPair { lo: a, hi: d }, XnPair { lo: c, hi: b }]);
            if want == sorted2(to) {
                return true;
            }
        }
    }
    false
}

impl ExchangeStep {
    pub fn is_valid(&self) -> bool {
        forward_ok(self.from, self.to) || forward_ok(self.to, self.from)
    }

    pub fn reversed(&self) -> ExchangeStep {
        ExchangeStep { from: self.to, to: self.from }
    }
}

/// `w ≃ v`: equal images under `F` and the same pairs of empty image.
///
/// `(−∞,0)` and `(n,∞)` take part in no nontrivial exchange, so they are
/// counted separately.
pub fn simeq(w: &XnElem, v: &XnElem) -> Result<bool> {
    w.same_n(v)?;
    Ok(feval(w) == feval(v) && w.degenerate_part() == v.degenerate_part())
}

fn remove_one(pairs: &mut Vec<XnPair>, p: &XnPair) -> bool {
    match pairs.iter().position(|q| q == p) {
        Some(i) => {
            pairs.remove(i);
            true
        }
        None => false,
    }
}

/// Applies the steps to `w`, checking each pattern and that `F` stays constant.
pub fn replay_certificate(w: &XnElem, steps: &[ExchangeStep]) -> Option<XnElem> {
    let n = w.n();
    let image = feval(w);
    let mut cur = w.pairs().to_vec();
    for s in steps {
        if !s.is_valid() || s.to.iter().any(|p| XnPair::new(p.lo, p.hi, n).is_err()) {
            return None;
        }
        if !(remove_one(&mut cur, &s.from[0]) && remove_one(&mut cur, &s.from[1])) {
            return None;
        }
        cur.extend_from_slice(&s.to);
        cur.sort();
        if feval(&XnElem::from_sorted(n, cur.clone())) != image {
            return None;
        }
    }
    Some(XnElem::from_sorted(n, cur))
}

pub fn check_exchange_certificate(w: &XnElem, steps: &[ExchangeStep]) -> bool {
    replay_certificate(w, steps).is_some()
}

fn overlaps(a: &XnPair, b: &XnPair) -> bool {
    a.lo < b.hi && b.lo < a.hi
}

fn contains(outer: &XnPair, inner: &XnPair) -> bool {
    outer.lo <= inner.lo && inner.hi <= outer.hi
}

/// Merges carry pairs into one level; returns the caps.
fn merge_level(level: &mut Vec<XnPair>, carry: Vec<XnPair>, steps: &mut Vec<ExchangeStep>) -> Vec<XnPair> {
    let mut caps = Vec::new();
    for mut cur in carry {
        let hits: Vec<XnPair> = level.iter().copied().filter(|c| overlaps(c, &cur)).collect();
        let mut consumed = false;
        for c in hits {
            if contains(&c, &cur) {
                caps.push(cur);
                consumed = true;
                break;
            }
            remove_one(level, &c);
            if contains(&cur, &c) {
                caps.push(c);
            } else if c.lo < cur.lo {
                let to = [XnPair { lo: c.lo, hi: cur.hi }, XnPair { lo: cur.lo, hi: c.hi }];
                steps.push(ExchangeStep { from: [c, cur], to });
                caps.push(to[1]);
                cur = to[0];
            } else {
                let to = [XnPair { lo: cur.lo, hi: c.hi }, XnPair { lo: c.lo, hi: cur.hi }];
                steps.push(ExchangeStep { from: [cur, c], to });
                caps.push(to[1]);
                cur = to[0];
            }
        }
        if !consumed {
            level.push(cur);
            level.sort();
        }
    }
    caps.sort();
    caps
}

/// Exchange steps taking `w` to its canonical form `q_{F(w)}` plus its
/// pairs of empty image.
///
/// Pairs are folded one at a time into the accumulated level decomposition;
/// each crossing with a level component is one exchange, and the overlaps
/// carry into the next level.
pub fn simeq_certificate(w: &XnElem) -> Vec<ExchangeStep> {
    let mut levels: Vec<Vec<XnPair>> = Vec::new();
    let mut steps = Vec::new();
    for p in w.nondegenerate_part().pairs() {
        let mut carry = vec![*p];
        let mut k = 0;
        while !carry.is_empty() {
            if k == levels.len() {
                levels.push(carry);
                break;
            }
            carry = merge_level(&mut levels[k], carry, &mut steps);
            k += 1;
        }
    }
    steps
}

/// Steps from `w` to `v` through their common canonical form, if `w ≃ v`.
pub fn simeq_path(w: &XnElem, v: &XnElem) -> Result<Option<Vec<ExchangeStep>>> {
    if !simeq(w, v)? {
        return Ok(None);
    }
    let mut steps = simeq_certificate(w);
    steps.extend(reverse_certificate(&simeq_certificate(v)));
    Ok(Some(steps))
}

pub fn reverse_certificate(steps: &[ExchangeStep]) -> Vec<ExchangeStep> {
    steps.iter().rev().map(ExchangeStep::reversed).collect()
}

/// The endpoint the certificate for `w` must reach.
pub fn certificate_target(w: &XnElem) -> XnElem {
    let q = canonical_qf(&feval(w), w.n()).expect("F(w) lies in L_n");
    q.add(&w.degenerate_part()).expect("same n")
}
