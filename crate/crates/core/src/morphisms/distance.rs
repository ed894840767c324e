use num_integer::Integer;
use serde::Serialize;

use crate::error::{pre, Error, Result};
use crate::exactset_stepfn::StepFn;
use crate::format::qstr;
use crate::rational::{int, zero, Q};
use crate::semigroup::SemigroupElem;

use super::lift::interpolate_with;
use super::{evaluate, GridMorphism, MultiGridMorphism};

/// Largest slack a certificate may record.
pub const MAX_SLACK: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bracket {
    #[serde(with = "qstr")]
    pub lo: Q,
    #[serde(with = "qstr")]
    pub hi: Q,
    /// Coarsest common grid over all source pairs.
    pub grid: u64,
}

fn v_on(phi: &GridMorphism, g: u64, i: u64) -> &SemigroupElem {
    &phi.v[(i.min(g) * (phi.n / g)) as usize]
}

/// Least shift `c` with `v^φ_{i+c} ≤ v^ψ_i` and `v^ψ_{i+c} ≤ v^φ_i` on the grid `g`.
fn least_shift(phi: &GridMorphism, psi: &GridMorphism, g: u64) -> u64 {
    let ok = |c: u64| {
        (0..=g).all(|i| {
            v_on(phi, g, i + c).leq(v_on(psi, g, i)).unwrap_or(false)
                && v_on(psi, g, i + c).leq(v_on(phi, g, i)).unwrap_or(false)
        })
    };
    (0..=g).find(|&c| ok(c)).unwrap_or(g)
}

fn check_units(phi: &MultiGridMorphism, psi: &MultiGridMorphism) -> Result<()> {
    if phi.sources.len() != psi.sources.len() {
        return Err(Error::Signature(phi.sources.len(), psi.sources.len()));
    }
    for (s, (a, b)) in phi.sources.iter().zip(&psi.sources).enumerate() {
        if a.unit != b.unit {
            return Err(Error::UnitMismatch(format!("source {s}: {} vs {}", a.unit, b.unit)));
        }
    }
    Ok(())
}

/// Bounds on the distance between the certified morphisms.
///
/// Per source the grids meet at `G = gcd(N_φ, N_ψ)`; a least shift `c` gives
/// `[(c−1)/G, (c+1)/G]`. Sources combine by maximum.
pub fn distance_bracket(phi: &MultiGridMorphism, psi: &MultiGridMorphism) -> Result<Bracket> {
    check_units(phi, psi)?;
    let mut out = Bracket { lo: zero(), hi: zero(), grid: 0 };
    for (a, b) in phi.sources.iter().zip(&psi.sources) {
        let g = a.n.gcd(&b.n);
        let c = least_shift(a, b, g) as i64;
        let lo = Q::new((c - 1).max(0).into(), (g as i64).into());
        let hi = Q::new((c + 1).into(), (g as i64).into());
        out.lo = out.lo.max(lo);
        out.hi = out.hi.max(hi);
        out.grid = if out.grid == 0 { g } else { out.grid.min(g) };
    }
    Ok(out)
}

/// `φ_s(R_ε f) ≤ ψ_s(f)` and `ψ_s(R_ε f) ≤ φ_s(f)`.
pub fn retraction_distance_check(
    phi: &MultiGridMorphism,
    psi: &MultiGridMorphism,
    eps: &Q,
    source: usize,
    f: &StepFn,
) -> Result<bool> {
    let b = distance_bracket(phi, psi)?;
    if &b.hi > eps {
        return pre(format!("retraction check needs ε ≥ {}", crate::rational::fmt_q(&b.hi)));
    }
    let (Some(a), Some(c)) = (phi.sources.get(source), psi.sources.get(source)) else {
        return pre(format!("no source {source}"));
    };
    let r = f.retract(eps);
    Ok(evaluate(a, &r)?.leq(&evaluate(c, f)?)? && evaluate(c, &r)?.leq(&evaluate(a, f)?)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Margin {
    #[serde(with = "qstr")]
    pub eps: Q,
    pub mid: StepFn,
}

/// `ε` and grid-aligned `f″` with `f′ ≪ f″ ≪ f` such that any `ψ` closer
/// than `ε` to `φ` has `φ(f′) ≪ ψ(f″) ≪ φ(f)`.
///
/// `f″` moves every boundary half the smallest gap, rounded down to cells;
/// `ε` divides that move among the shift and the slack cells of either side.
pub fn margin_for_pair(phi: &GridMorphism, f_in: &StepFn, f: &StepFn) -> Result<Margin> {
    if !f_in.ll(f) {
        return pre("margin_for_pair: f′ ≪ f");
    }
    let n = int(phi.n as i64);
    let gap = f_in.margin_within(f);
    let cells = match &gap {
        None => None,
        Some(g) => {
            let c = (g * &n).floor().to_integer();
            if c < 2.into() {
                return pre("margin_for_pair: f′ and f need a gap of two cells");
            }
            Some(c / 2)
        }
    };
    let (mid, eps) = match cells {
        Some(c) => {
            let d = Q::from(c) / &n;
            let eps = &d / int(MAX_SLACK as i64 + 3);
            (interpolate_with(f_in, f, &d), eps)
        }
        None if f.is_compact() => (f.clone(), crate::rational::one()),
        None => {
            let d = n.recip();
            (interpolate_with(f_in, f, &d), d / int(MAX_SLACK as i64 + 3))
        }
    };
    evaluate(phi, &mid)?;
    Ok(Margin { eps, mid })
}

/// `ε′` such that `d(ψ₁, ψ₂) < ε′` forces `d(ψ₁θ, ψ₂θ) < ε`.
///
/// With `c` the largest shift of `θ`'s grid still below `ε`, `ε′` is the
/// least retraction margin of `v_{i+c}` inside `v_i`.
pub fn composition_modulus(theta: &GridMorphism, eps: &Q) -> Result<Q> {
    if eps <= &zero() {
        return pre("composition_modulus: ε > 0");
    }
    let cells = (eps * int(theta.n as i64)).ceil().to_integer() - 2;
    let Ok(c) = usize::try_from(cells) else {
        return pre(format!("composition_modulus: ε must exceed 2/{}", theta.n));
    };
    let n = theta.n as usize;
    let mut best = eps.clone();
    for i in 0..=n {
        let j = (i + c).min(n);
        for (a, b) in theta.v[j].parts.iter().zip(&theta.v[i].parts) {
            if let Some(m) = a.margin_within(b) {
                if m < best {
                    best = m;
                }
            }
        }
    }
    if best <= zero() {
        return pre("composition_modulus: θ has v_{i+c} touching the boundary of v_i");
    }
    Ok(best)
}

/// Listed `ε_i` plus a bound on the sum of the unlisted ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsSchedule {
    pub terms: Vec<Q>,
    pub tail: Q,
}

impl EpsSchedule {
    /// `first · r^i` for `i < count`, with the geometric remainder as tail.
    pub fn geometric(first: Q, ratio: Q, count: usize) -> Result<EpsSchedule> {
        if !(ratio > zero() && ratio < crate::rational::one()) || first <= zero() {
            return pre("geometric schedule needs ε₀ > 0 and 0 < r < 1");
        }
        let mut terms = Vec::with_capacity(count);
        let mut t = first;
        for _ in 0..count {
            terms.push(t.clone());
            t *= &ratio;
        }
        let tail = &t / (crate::rational::one() - &ratio);
        Ok(EpsSchedule { terms, tail })
    }

    pub fn check(&self) -> Result<()> {
        if self.terms.windows(2).any(|w| w[1] >= w[0]) {
            return pre("ε must be strictly decreasing");
        }
        if self.terms.iter().any(|t| t <= &zero()) || self.tail < zero() {
            return pre("ε must be positive");
        }
        Ok(())
    }

    /// `Σ_{i ≥ from} ε_i`.
    pub fn tail_from(&self, from: usize) -> Q {
        self.terms.iter().skip(from).fold(self.tail.clone(), |acc, t| acc + t)
    }
}

/// Last element of the prefix and a bound on its distance to the limit.
pub fn cauchy_limit_bound(prefix: &[MultiGridMorphism], eps: &EpsSchedule) -> Result<(MultiGridMorphism, Q)> {
    eps.check()?;
    let Some(last) = prefix.last() else {
        return pre("cauchy_limit_bound: nonempty prefix");
    };
    if eps.terms.len() + 1 < prefix.len() {
        return pre("cauchy_limit_bound: one ε per consecutive pair");
    }
    for (i, w) in prefix.windows(2).enumerate() {
        let b = distance_bracket(&w[0], &w[1])?;
        if b.hi >= eps.terms[i] {
            return Err(Error::Bound(format!(
                "bracket {} between terms {i} and {} is not below ε_{i} = {}",
                crate::rational::fmt_q(&b.hi),
                i + 1,
                crate::rational::fmt_q(&eps.terms[i])
            )));
        }
    }
    let g = last.sources.iter().map(|s| s.n).min().unwrap_or(1);
    let bound = eps.tail_from(prefix.len() - 1) + Q::new(1.into(), (g as i64).into());
    Ok((last.clone(), bound))
}
