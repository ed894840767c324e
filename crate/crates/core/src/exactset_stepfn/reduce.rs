use crate::error::{pre, Error, Result};
use crate::rational::{half, min_gap, one, zero};

use super::interval::Interval;
use super::openset::OpenSet;
use super::stepfn::StepFn;

/// Given `x ≪ y`, finds increasing basic elements `a, d` with `x + a ≪ d ≪ y + a`.
///
/// Each component `V` of `{y ≥ k}` is paired with the part `U` of `{x ≥ k}` inside it:
///
/// | `V`      | `a`            | `d`            |
/// |----------|----------------|----------------|
/// | `[0,1]`  | `0`            | `1`, or `χ(ε,1]` when `closure(U)` misses 0 |
/// | `[0,t)`  | `χ(t−ε,1]`     | `1`            |
/// | `(s,1]`  | `0`            | `χ(s+ε,1]`     |
/// | `(s,t)`  | `χ(t−ε,1]`     | `χ(s+ε,1]`, skipped when `U = ∅` |
pub fn basic_reduce(x: &StepFn, y: &StepFn) -> Result<(StepFn, StepFn)> {
    if !x.ll(y) {
        return pre("basic_reduce: x ≪ y");
    }
    let mut pts = x.endpoints();
    pts.extend(y.endpoints());
    pts.push(zero());
    pts.push(one());
    let eps = half(&min_gap(&mut pts).expect("0 and 1 differ"));

    let mut a_parts = Vec::new();
    let mut d_parts = Vec::new();
    for k in 1..=y.max_value() {
        let xk = x.level(k);
        for v in y.level(k).components() {
            let inside: Vec<&Interval> = xk.components().iter().filter(|c| c.closure_within(v)).collect();
            let u_lo = inside.iter().map(|c| c.lo()).min();
            match v {
                Interval::Full => {
                    let avoids_zero = inside.iter().all(|c| !c.closed_at_zero()) && u_lo.is_some_and(|l| l > zero());
                    if avoids_zero {
                        d_parts.push(Interval::Right(eps.clone()));
                    } else {
                        d_parts.push(Interval::Full);
                    }
                }
                Interval::Left(t) => {
                    a_parts.push(Interval::Right(t - &eps));
                    d_parts.push(Interval::Full);
                }
                Interval::Right(s) => d_parts.push(Interval::Right(s + &eps)),
                Interval::Open(s, t) => {
                    if inside.is_empty() {
                        continue;
                    }
                    a_parts.push(Interval::Right(t - &eps));
                    d_parts.push(Interval::Right(s + &eps));
                }
            }
        }
    }
    let a = StepFn::from_indicators(a_parts);
    let d = StepFn::from_indicators(d_parts);
    if !(x.add(&a).ll(&d) && d.ll(&y.add(&a))) {
        return Err(Error::Validation("basic_reduce posts".into()));
    }
    Ok((a, d))
}

/// True when every component of every level is `(s,1]` or `[0,1]`.
pub fn is_increasing_basic(f: &StepFn) -> bool {
    f.levels()
        .iter()
        .flat_map(OpenSet::components)
        .all(|c| matches!(c, Interval::Full | Interval::Right(_)))
}
