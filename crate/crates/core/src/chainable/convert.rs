use serde::Serialize;

use crate::error::{pre, Error, Result};
use crate::exactset_stepfn::StepFn;
use crate::morphisms::{evaluate, Report};
use crate::rational::{fmt_q, Q};
use crate::semigroup::SemigroupElem;
use crate::xn_monoid::{feval, prec, XnElem};

use super::{rho_build, ChainableWitness};

/// `f_i = R_ε(G(q_i))`, `g_i = R_ε(G(t_i))` and the refinement `m` that
/// makes `ρ_m(f_i) ≪ F(q_i) ≪ ρ_m(g_i) ≪ F(t_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrecConvert {
    #[serde(with = "crate::format::qstr")]
    pub eps: Q,
    pub m: u64,
    pub pairs: Vec<(StepFn, StepFn)>,
}

/// `ε = 1/(4n+1)` and `m = 4n+1`, so every retracted endpoint lies on the
/// `1/(nm)` grid of `ρ_m`.
pub fn prec_convert(n: u64, family: &[(XnElem, XnElem)]) -> Result<PrecConvert> {
    if n == 0 {
        return pre("prec_convert: n ≥ 1");
    }
    for (k, (q, t)) in family.iter().enumerate() {
        if q.n() != n {
            return Err(Error::NMismatch(n, q.n()));
        }
        if t.n() != n {
            return Err(Error::NMismatch(n, t.n()));
        }
        if prec(q, t)?.is_none() {
            return pre(format!("prec_convert: relation {k} has q ⊀ t"));
        }
    }
    let m = 4 * n + 1;
    let eps = Q::new(1.into(), (m as i64).into());
    let pairs = family.iter().map(|(q, t)| (feval(q).retract(&eps), feval(t).retract(&eps))).collect();
    Ok(PrecConvert { eps, m, pairs })
}

/// Re-checks (i) `f ≪ g`, (ii) the sandwich against `ρ_m` of the canonical
/// witness and (iii) equal inputs giving equal outputs.
pub fn check_prec_convert(n: u64, family: &[(XnElem, XnElem)], out: &PrecConvert) -> Result<Report> {
    let mut r = Report::default();
    if out.pairs.len() != family.len() {
        r.push(format!("{} outputs for {} relations", out.pairs.len(), family.len()));
        return Ok(r);
    }
    let w = ChainableWitness::canonical(n);
    let rho = rho_build(&w, out.m)?;
    let single = |f: &StepFn| SemigroupElem::single(f.clone());
    for (k, ((q, t), (f, g))) in family.iter().zip(&out.pairs).enumerate() {
        if !f.ll(g) {
            r.push(format!("(i) relation {k}: f ≪ g fails"));
        }
        let (fq, ft) = (single(&feval(q)), single(&feval(t)));
        let (rf, rg) = (evaluate(&rho, f)?, evaluate(&rho, g)?);
        let chain = [(&rf, &fq, "ρ(f) ≪ F(q)"), (&fq, &rg, "F(q) ≪ ρ(g)"), (&rg, &ft, "ρ(g) ≪ F(t)")];
        for (a, b, what) in chain {
            if !a.ll(b)? {
                r.push(format!("(ii) relation {k}: {what} fails at ε = {}", fmt_q(&out.eps)));
            }
        }
    }
    let all: Vec<(&XnElem, &StepFn)> =
        family.iter().zip(&out.pairs).flat_map(|((q, t), (f, g))| [(q, f), (t, g)]).collect();
    for (i, (x, fx)) in all.iter().enumerate() {
        for (y, fy) in &all[i + 1..] {
            if x == y && fx != fy {
                r.push(format!("(iii) {x} is sent to two different functions"));
            }
        }
    }
    Ok(r)
}
