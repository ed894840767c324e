use num_integer::Integer;

use crate::error::{pre, Result};
use crate::exactset_stepfn::StepFn;
use crate::rational::Q;
use crate::semigroup::{subtract_from_compact, SemigroupElem};

use super::{validate, GridMorphism};

/// Levelwise `N_δ({f ≥ k}) ∪ R_δ({g ≥ k})`.
pub fn interpolate_with(f: &StepFn, g: &StepFn, delta: &Q) -> StepFn {
    let levels = (1..=g.max_value())
        .map(|k| f.level(k).neighborhood(delta).union(&g.level(k).retract(delta)))
        .collect();
    StepFn::from_levels(levels).expect("nested inputs give nested levels")
}

/// `h` with `f ≪ h ≪ g` for one part.
///
/// Endpoints lie on the `1/D` grid, so closures of `f`'s levels sit at least
/// `1/D` inside `g`'s and `δ = 1/(3D)` leaves room on both sides.
pub fn interpolate_part(f: &StepFn, g: &StepFn) -> Result<StepFn> {
    if !f.ll(g) {
        return pre("interpolate_between: f ≪ g");
    }
    let d = f.common_denominator().lcm(&g.common_denominator());
    let delta = Q::new(1.into(), d * 3);
    let h = interpolate_with(f, g, &delta);
    debug_assert!(f.ll(&h) && h.ll(g));
    Ok(h)
}

pub fn interpolate_between(f: &SemigroupElem, g: &SemigroupElem) -> Result<SemigroupElem> {
    if !f.ll(g)? {
        return pre("interpolate_between: f ≪ g");
    }
    let parts = f.parts.iter().zip(&g.parts).map(|(a, b)| interpolate_part(a, b)).collect::<Result<_>>()?;
    Ok(SemigroupElem { parts })
}

/// Certificate at `N = 2j`, `σ = 2` with `v_{2(j−k)} = s_k` and `φ(1) = p`.
pub fn lift_from_chain(chain: &[SemigroupElem], p: &SemigroupElem) -> Result<GridMorphism> {
    let Some(top) = chain.last() else {
        return pre("lift_from_chain: nonempty chain");
    };
    if !p.is_compact() {
        return pre("lift_from_chain: p compact");
    }
    if !top.leq(p)? {
        return pre("lift_from_chain: s_j ≤ p");
    }
    for (k, w) in chain.windows(2).enumerate() {
        if !w[0].ll(&w[1])? {
            return pre(format!("lift_from_chain: s_{} ≪ s_{}", k + 1, k + 2));
        }
    }
    let j = chain.len();
    let n = 2 * j;
    let m = p.arity();
    let mut v = vec![SemigroupElem::zero(m); n + 1];
    for (k, s) in chain.iter().enumerate() {
        v[2 * (j - k - 1)] = s.clone();
    }
    for i in (1..n).step_by(2) {
        v[i] = interpolate_between(&v[i + 1], &v[i - 1])?;
    }
    let mut w = vec![SemigroupElem::zero(m); n + 1];
    for i in 1..=n {
        w[i] = subtract_from_compact(p, &v[i - 1])?;
    }
    let phi = GridMorphism { n: n as u64, slack: 2, unit: p.clone(), v, w };
    validate(&phi).into_result()?;
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactset_stepfn::Interval;
    use crate::morphisms::evaluate;
    use crate::rational::q;

    fn right(a: Q) -> SemigroupElem {
        SemigroupElem::single(StepFn::indicator(Interval::Right(a)))
    }

    #[test]
    fn interpolants() {
        let g = StepFn::indicator(Interval::Open(q(0, 1), q(1, 1)));
        let h = interpolate_part(&StepFn::zero(), &g).unwrap();
        assert_eq!(h, StepFn::indicator(Interval::Open(q(1, 3), q(2, 3))));
        let f = StepFn::indicator(Interval::Right(q(1, 2)));
        let g = StepFn::indicator(Interval::Right(q(1, 4)));
        let h = interpolate_part(&f, &g).unwrap();
        assert!(f.ll(&h) && h.ll(&g));
        assert_eq!(interpolate_part(&StepFn::constant(2), &StepFn::constant(2)).unwrap(), StepFn::constant(2));
        assert!(interpolate_part(&g, &f).is_err());
    }

    #[test]
    fn lifts() {
        let chain = [right(q(1, 2)), right(q(1, 4))];
        let phi = lift_from_chain(&chain, &SemigroupElem::compact(&[1])).unwrap();
        assert_eq!(phi.n, 4);
        assert!(phi.v[4].is_zero());
        assert_eq!(phi.v[2], chain[0]);
        assert_eq!(phi.v[0], chain[1]);
        for (k, s) in chain.iter().enumerate() {
            let t = crate::rational::grid(2 * (2 - k as u64 - 1), 4);
            assert_eq!(&evaluate(&phi, &StepFn::indicator(Interval::Right(t))).unwrap(), s);
        }
    }

    #[test]
    fn trivial_chains() {
        let k = SemigroupElem::compact(&[3]);
        let phi = lift_from_chain(&[k.clone()], &k).unwrap();
        assert_eq!(phi.v[1], k);
        let z = lift_from_chain(&[SemigroupElem::zero(1)], &SemigroupElem::compact(&[1])).unwrap();
        assert!(z.v.iter().all(SemigroupElem::is_zero));
        assert!(lift_from_chain(&[right(q(1, 4)), right(q(1, 2))], &SemigroupElem::compact(&[1])).is_err());
    }
}
