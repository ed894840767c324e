use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::exactset_stepfn::{Interval, StepFn};
use crate::morphisms::{compose, evaluate, evaluate_multi, lift_from_chain, GridBasicElement, GridMorphism, MultiGridMorphism, Report};
use crate::rational::grid;
use crate::semigroup::SemigroupElem;
use crate::xn_monoid::{Omega, XnElem, XnPair};

use super::property::{construct_i_witness, I0Problem, IWitness, Term};
use super::{prec_convert, rho_build};

/// `θ: Lsc^M → Lsc^K` and `ψ: Lsc^K → S` with `ψθ` close to `φ` on `C_l^M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub theta: MultiGridMorphism,
    pub psi: MultiGridMorphism,
}

/// `χ(i/l,1]`, zero at `i = l`.
fn tail(i: u64, l: u64) -> StepFn {
    if i >= l {
        StepFn::zero()
    } else {
        StepFn::indicator(Interval::Right(grid(i, l)))
    }
}

fn at(phi: &GridMorphism, i: u64, l: u64) -> Result<SemigroupElem> {
    evaluate(phi, &tail(i, l))
}

/// (i) `φ(χ^s((i+1)/l,1]) ≪ ψθ(χ^s(i/l,1])` and `ψθ(χ^s((i+1)/l,1]) ≪ φ(χ^s(i/l,1])`
/// for `i < l`; (ii) `θ(x) ≪ θ(y)`; (iii) `φ(1_s) = ψθ(1_s)`.
pub fn verify_factorization(
    phi: &MultiGridMorphism,
    l: u64,
    x: &GridBasicElement,
    y: &GridBasicElement,
    f: &Factorization,
) -> Result<Report> {
    if l == 0 {
        return pre("verify_factorization: l ≥ 1");
    }
    if f.theta.sources.len() != phi.sources.len() {
        return Err(Error::Signature(phi.sources.len(), f.theta.sources.len()));
    }
    if f.theta.target_arity() != f.psi.sources.len() {
        return Err(Error::Signature(f.psi.sources.len(), f.theta.target_arity()));
    }
    let comp = compose(&f.psi, &f.theta)?;
    let mut r = Report::default();
    for (s, (p, c)) in phi.sources.iter().zip(&comp.sources).enumerate() {
        for i in 0..l {
            if !at(p, i + 1, l)?.ll(&at(c, i, l)?)? {
                r.push(format!("(i) φ(χ^{s}({}/{l},1]) ≪ ψθ(χ^{s}({i}/{l},1]) fails", i + 1));
            }
            if !at(c, i + 1, l)?.ll(&at(p, i, l)?)? {
                r.push(format!("(i) ψθ(χ^{s}({}/{l},1]) ≪ φ(χ^{s}({i}/{l},1]) fails", i + 1));
            }
        }
    }
    if !evaluate_multi(&f.theta, x)?.ll(&evaluate_multi(&f.theta, y)?)? {
        r.push("(ii) θ(x) ≪ θ(y) fails");
    }
    for (s, (p, c)) in phi.sources.iter().zip(&comp.sources).enumerate() {
        if p.unit != c.unit {
            r.push(format!("(iii) φ(1_{s}) = {} but ψθ(1_{s}) = {}", p.unit, c.unit));
        }
    }
    Ok(r)
}

fn terms(x: &GridBasicElement) -> Vec<Term> {
    let mut out = Vec::new();
    for (s, m) in x.counts.iter().enumerate() {
        for (&i, &c) in m {
            let idx = i.map_or(Omega::NegInf, |i| Omega::Fin(2 * i));
            out.extend(std::iter::repeat((idx, s)).take(c));
        }
    }
    out
}

/// The problem `z_{i,s} = φ_s(χ(i/2l,1])`, `p_s = φ(1_s)` with `I`, `J` read
/// off `x′` and `y` at even indices.
pub fn factorization_problem(
    phi: &MultiGridMorphism,
    l: u64,
    x_prime: &GridBasicElement,
    y: &GridBasicElement,
) -> Result<I0Problem> {
    let mut z = Vec::with_capacity(phi.sources.len());
    for src in &phi.sources {
        z.push((0..=2 * l).map(|i| at(src, i, 2 * l)).collect::<Result<Vec<_>>>()?);
    }
    Ok(I0Problem { z, p: phi.units(), i_terms: terms(x_prime), j_terms: terms(y) })
}

/// The pipeline: property-I witness on the half-grid problem, retraction of
/// its sequences, `θ_s` lifted from `f_{2i,s}` and `ψ = ⊕_k ρ_{m_k}`.
pub fn construct_factorization(
    phi: &MultiGridMorphism,
    l: u64,
    x: &GridBasicElement,
    x_prime: &GridBasicElement,
    y: &GridBasicElement,
) -> Result<(Factorization, IWitness)> {
    if l == 0 {
        return pre("construct_factorization: l ≥ 1");
    }
    phi.validate().into_result()?;
    for g in [x, x_prime, y] {
        if g.l != l {
            return pre(format!("grid element over l = {}, expected {l}", g.l));
        }
        if g.sources() != phi.sources.len() {
            return Err(Error::Signature(phi.sources.len(), g.sources()));
        }
        g.check()?;
    }
    if let Some(src) = phi.sources.iter().find(|s| s.n % (2 * l) != 0) {
        return Err(Error::Alignment(format!("2l = {} does not divide N = {}", 2 * l, src.n)));
    }
    if !x.to_elem().ll(&x_prime.to_elem())? {
        return pre("construct_factorization: x ≪ x′");
    }
    let prob = factorization_problem(phi, l, x_prime, y)?;
    prob.check()?;
    let wit = construct_i_witness(&prob)?;

    let big_l = 2 * l as usize;
    let k_count = wit.parts.len();
    let mut f: Vec<Vec<SemigroupElem>> = vec![vec![SemigroupElem::zero(k_count); big_l + 1]; phi.sources.len()];
    let mut psi = Vec::with_capacity(k_count);
    for (k, part) in wit.parts.iter().enumerate() {
        let n = part.chain.n;
        let mut family = Vec::new();
        for (s, row) in part.a_seqs.iter().enumerate() {
            for (i, a) in row.iter().enumerate() {
                let up = if i == 0 { XnElem::new(n, vec![XnPair::full(); part.ks[s]])? } else { row[i - 1].clone() };
                family.push((a.clone(), up));
            }
        }
        family.push((part.a.clone(), part.b.clone()));
        let conv = prec_convert(n, &family)?;
        let mut it = conv.pairs.into_iter();
        for row in f.iter_mut() {
            for cell in row.iter_mut().take(big_l) {
                let (g, _) = it.next().expect("one output per relation");
                cell.parts[k] = g;
            }
        }
        psi.push(rho_build(&part.chain, 3 * conv.m)?);
    }
    let mut theta = Vec::with_capacity(phi.sources.len());
    for (s, row) in f.iter().enumerate() {
        let ms: Vec<usize> = wit.parts.iter().map(|p| p.ks[s]).collect();
        let chain: Vec<SemigroupElem> = (0..l as usize).rev().map(|i| row[2 * i].clone()).collect();
        theta.push(lift_from_chain(&chain, &SemigroupElem::compact(&ms))?);
    }
    let out = Factorization { theta: MultiGridMorphism { sources: theta }, psi: MultiGridMorphism { sources: psi } };
    verify_factorization(phi, l, x, y, &out)?.into_result()?;
    Ok((out, wit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::fixtures::identity;

    fn one_source(l: u64) -> GridBasicElement {
        GridBasicElement::zero(l, 1)
    }

    #[test]
    fn identity_factorization() {
        let phi = MultiGridMorphism::single(identity(4));
        let x = one_source(2).with(0, Some(1), 1);
        let xp = one_source(2).with(0, Some(0), 1);
        let y = one_source(2).with(0, None, 1);
        let (f, _) = construct_factorization(&phi, 2, &x, &xp, &y).unwrap();
        assert!(verify_factorization(&phi, 2, &x, &y, &f).unwrap().ok());
    }

    #[test]
    fn trivial_triple() {
        let phi = MultiGridMorphism::single(identity(2));
        let z = one_source(1);
        let (f, _) = construct_factorization(&phi, 1, &z, &z, &z).unwrap();
        assert!(verify_factorization(&phi, 1, &z, &z, &f).unwrap().ok());
    }

    #[test]
    fn broken_outputs_are_flagged() {
        let phi = MultiGridMorphism::single(identity(4));
        let x = one_source(2).with(0, Some(1), 1);
        let xp = one_source(2).with(0, Some(0), 1);
        let y = one_source(2).with(0, None, 1);
        let (f, _) = construct_factorization(&phi, 2, &x, &xp, &y).unwrap();
        let r = verify_factorization(&phi, 2, &y, &x, &f).unwrap();
        assert!(r.violations.iter().any(|v| v.starts_with("(ii)")), "{r}");
        let mut other = phi.clone();
        other.sources[0] = crate::morphisms::fixtures::scaled(&identity(4), 2);
        let r = verify_factorization(&other, 2, &x, &y, &f).unwrap();
        assert!(r.violations.iter().any(|v| v.starts_with("(iii)")), "{r}");
    }
}
