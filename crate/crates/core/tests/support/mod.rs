#![allow(dead_code)]

use lscu::chainable::I0Problem;
use lscu::morphisms::{lift_from_chain, GridBasicElement, GridMorphism, MultiGridMorphism};
use lscu::rational::q;
use lscu::xn_monoid::omega_prec;
use lscu::{Interval, Omega, SemigroupElem, StepFn, XnElem, XnPair};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn omegas(n: u64) -> Vec<Omega> {
    let mut out = vec![Omega::NegInf];
    out.extend((0..=n).map(Omega::Fin));
    out.push(Omega::PosInf);
    out
}

pub fn pairs(n: u64) -> Vec<XnPair> {
    let os = omegas(n);
    let mut out = Vec::new();
    for (i, &a) in os.iter().enumerate() {
        for &b in &os[i + 1..] {
            out.push(XnPair { lo: a, hi: b });
        }
    }
    out
}

/// Every element of `X_n` with at most `k` pairs.
pub fn all_elems(n: u64, k: usize) -> Vec<XnElem> {
    let ps = pairs(n);
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<XnPair>)> = vec![(0, Vec::new())];
    for _ in 0..k {
        let mut next = Vec::new();
        for (start, cur) in &frontier {
            for (i, p) in ps.iter().enumerate().skip(*start) {
                let mut c = cur.clone();
                c.push(*p);
                out.push(c.clone());
                next.push((i, c));
            }
        }
        frontier = next;
    }
    out.into_iter().map(|ps| XnElem::new(n, ps).unwrap()).collect()
}

pub fn random_xn(r: &mut ChaCha8Rng, n: u64, max: usize) -> XnElem {
    let ps = pairs(n);
    let k = r.gen_range(0..=max);
    XnElem::new(n, (0..k).map(|_| *ps.choose(r).unwrap()).collect()).unwrap()
}

/// A random element `≺ target`: each target pair absorbs a short random chain.
pub fn random_below(r: &mut ChaCha8Rng, target: &XnElem) -> XnElem {
    let n = target.n();
    let os = omegas(n);
    let mut out = Vec::new();
    for t in target.pairs() {
        let mut last = t.lo;
        for _ in 0..r.gen_range(0..=2) {
            let los: Vec<Omega> = os.iter().copied().filter(|&o| omega_prec(last, o) && o != Omega::PosInf).collect();
            let Some(&lo) = los.choose(r) else { break };
            let his: Vec<Omega> = os.iter().copied().filter(|&o| o > lo && omega_prec(o, t.hi)).collect();
            let Some(&hi) = his.choose(r) else { break };
            out.push(XnPair { lo, hi });
            last = hi;
        }
    }
    XnElem::new(n, out).unwrap()
}

/// An interval with endpoints on the `1/d` grid.
pub fn random_interval(r: &mut ChaCha8Rng, d: i64) -> Interval {
    match r.gen_range(0..10) {
        0 => Interval::Full,
        1 | 2 => Interval::Left(q(r.gen_range(1..=d), d)),
        3 | 4 => Interval::Right(q(r.gen_range(0..d), d)),
        _ => {
            let a = r.gen_range(0..d);
            Interval::Open(q(a, d), q(r.gen_range(a + 1..=d), d))
        }
    }
}

pub fn random_stepfn(r: &mut ChaCha8Rng, d: i64, max_terms: usize) -> StepFn {
    let k = r.gen_range(0..=max_terms);
    StepFn::from_indicators((0..k).map(|_| random_interval(r, d)))
}

/// `f` truncated at height `k`.
pub fn cap(f: &StepFn, k: usize) -> StepFn {
    f.sup_inf(&StepFn::constant(k)).1
}

/// `s_1 ≪ … ≪ s_len ≤ p`: the top is random on the `1/(d/2)` grid, each
/// step down retracts by `1/d` or `2/d`.
pub fn random_chain(r: &mut ChaCha8Rng, len: usize, d: i64, ks: &[usize]) -> Vec<SemigroupElem> {
    let top: Vec<StepFn> = ks.iter().map(|&k| cap(&random_stepfn(r, d / 2, 3), k)).collect();
    let mut chain = vec![SemigroupElem::new(top).unwrap()];
    while chain.len() < len {
        let eps = q(r.gen_range(1..=2), d);
        let last = chain.last().unwrap();
        let next = SemigroupElem::new(last.parts.iter().map(|f| f.retract(&eps)).collect()).unwrap();
        chain.push(next);
    }
    chain.reverse();
    chain
}

pub fn random_lift(r: &mut ChaCha8Rng, len: usize, d: i64, ks: &[usize]) -> GridMorphism {
    let chain = random_chain(r, len, d, ks);
    lift_from_chain(&chain, &SemigroupElem::compact(ks)).unwrap()
}

/// A decreasing sequence `z_0 ≫ … ≫ z_l = 0` below `k` on the `1/d` grid.
fn random_sequence(r: &mut ChaCha8Rng, l: usize, d: i64, k: usize) -> Vec<StepFn> {
    let mut row = vec![cap(&random_stepfn(r, d, 3), k)];
    for _ in 1..l {
        let last = row.last().unwrap();
        let eps = q(r.gen_range(1..=2), d);
        let mut next = last.retract(&eps);
        if next.levels().first().is_some_and(|u| u.is_full()) && r.gen_bool(0.3) {
            next = next.minus_constant(1).unwrap();
        }
        row.push(next);
    }
    row.push(StepFn::zero());
    row
}

/// Terms `(i,s)`; `I` draws at random and `J` moves each term one step up
/// (to `−∞` from `0`) and adds a few extras.
fn random_terms(r: &mut ChaCha8Rng, l: usize, m: usize) -> (Vec<(Omega, usize)>, Vec<(Omega, usize)>) {
    let pick = |r: &mut ChaCha8Rng| {
        let i = r.gen_range(0..=l + 1);
        let o = if i == l + 1 { Omega::NegInf } else { Omega::Fin(i as u64) };
        (o, r.gen_range(0..m))
    };
    let i_terms: Vec<_> = (0..r.gen_range(0..=3)).map(|_| pick(r)).collect();
    let mut j_terms: Vec<_> = i_terms
        .iter()
        .map(|&(o, s)| match o {
            Omega::Fin(0) | Omega::NegInf => (Omega::NegInf, s),
            Omega::Fin(i) => (Omega::Fin(i - 1), s),
            Omega::PosInf => unreachable!(),
        })
        .collect();
    j_terms.extend((0..r.gen_range(0..=1)).map(|_| pick(r)));
    (i_terms, j_terms)
}

/// A valid problem with `m ≤ 2` sequences in `Lsc^arity`, `l ≤ max_l`,
/// denominators dividing `d`.
pub fn random_problem(r: &mut ChaCha8Rng, arity: usize, max_l: usize, d: i64) -> I0Problem {
    loop {
        let m = r.gen_range(1..=2);
        let l = r.gen_range(1..=max_l);
        let mut z = Vec::new();
        let mut p = Vec::new();
        for _ in 0..m {
            let ks: Vec<usize> = (0..arity).map(|_| r.gen_range(1..=2)).collect();
            let rows: Vec<Vec<StepFn>> = ks.iter().map(|&k| random_sequence(r, l, d, k)).collect();
            z.push((0..=l).map(|i| SemigroupElem::new(rows.iter().map(|row| row[i].clone()).collect()).unwrap()).collect());
            p.push(SemigroupElem::compact(&ks));
        }
        let (i_terms, j_terms) = random_terms(r, l, m);
        let prob = I0Problem { z, p, i_terms, j_terms };
        if prob.check().is_ok() {
            return prob;
        }
    }
}

pub struct FactInstance {
    pub phi: MultiGridMorphism,
    pub l: u64,
    pub x: GridBasicElement,
    pub x_prime: GridBasicElement,
    pub y: GridBasicElement,
}

/// `M ≤ 2` lifted sources at `N = 2l` into `Lsc^arity`, `x′` random,
/// `x` its shift up and `y` its shift down plus extras.
pub fn random_instance(r: &mut ChaCha8Rng, max_l: u64, arity: usize) -> FactInstance {
    let m = r.gen_range(1..=2usize);
    let l = r.gen_range(1..=max_l);
    let sources =
        (0..m).map(|_| {
            let ks: Vec<usize> = (0..arity).map(|_| r.gen_range(1..=2)).collect();
            random_lift(r, l as usize, 16, &ks)
        }).collect();
    let phi = MultiGridMorphism { sources };
    let mut xp = GridBasicElement::zero(l, m);
    let mut x = GridBasicElement::zero(l, m);
    let mut y = GridBasicElement::zero(l, m);
    for s in 0..m {
        for _ in 0..r.gen_range(0..=2) {
            let i = r.gen_range(0..=l);
            let idx = (i < l).then_some(i);
            xp = xp.with(s, idx, 1);
            let up = match idx {
                None => Some(None),
                Some(i) if i + 1 < l => Some(Some(i + 1)),
                Some(_) => None,
            };
            if let Some(u) = up {
                if r.gen_bool(0.8) {
                    x = x.with(s, u, 1);
                }
            }
            let down = match idx {
                None | Some(0) => None,
                Some(i) => Some(i - 1),
            };
            y = y.with(s, down, 1);
        }
        if r.gen_bool(0.3) {
            y = y.with(s, Some(r.gen_range(0..l)), 1);
        }
    }
    FactInstance { phi, l, x, x_prime: xp, y }
}
