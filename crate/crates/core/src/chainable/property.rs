use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{pre, Error, Result};
use crate::exactset_stepfn::StepFn;
use crate::morphisms::{interpolate_with, Report};
use crate::rational::{to_u64, Q};
use crate::semigroup::{common_compact_divisor, SemigroupElem};
use crate::xn_monoid::{canonical_qf, in_ln0, prec, simeq, Omega, XnElem, XnPair};

use super::{verify_chainable, ChainableWitness, RefinementRule, Table};

/// An index `(i, s)` of the sums `r` and `t`; `i = −∞` stands for `p_s`.
pub type Term = (Omega, usize);

/// Decreasing sequences `0 = z_{l,s} ≪ … ≪ z_{0,s} ≪ p_s` and the multisets
/// `I`, `J` with `Σ_I z ≪ Σ_J z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct I0Problem {
    /// `z[s][i]` for `i = 0..=l`.
    pub z: Vec<Vec<SemigroupElem>>,
    pub p: Vec<SemigroupElem>,
    #[serde(rename = "I")]
    pub i_terms: Vec<Term>,
    #[serde(rename = "J")]
    pub j_terms: Vec<Term>,
}

impl I0Problem {
    pub fn sequences(&self) -> usize {
        self.z.len()
    }

    pub fn l(&self) -> usize {
        self.z.first().map_or(0, |row| row.len().saturating_sub(1))
    }

    pub fn arity(&self) -> usize {
        self.p.first().map_or(0, SemigroupElem::arity)
    }

    pub fn term(&self, t: &Term) -> Result<&SemigroupElem> {
        let (i, s) = *t;
        if s >= self.sequences() {
            return pre(format!("term ({i},{s}): no sequence {s}"));
        }
        match i {
            Omega::NegInf => Ok(&self.p[s]),
            Omega::Fin(i) if (i as usize) <= self.l() => Ok(&self.z[s][i as usize]),
            _ => pre(format!("term ({i},{s}) is outside -inf, 0..{}", self.l())),
        }
    }

    fn sum(&self, terms: &[Term]) -> Result<SemigroupElem> {
        let mut acc = SemigroupElem::zero(self.arity());
        for t in terms {
            acc = acc.add(self.term(t)?)?;
        }
        Ok(acc)
    }

    pub fn r(&self) -> Result<SemigroupElem> {
        self.sum(&self.i_terms)
    }

    pub fn t(&self) -> Result<SemigroupElem> {
        self.sum(&self.j_terms)
    }

    /// Shape, `z_{l,s} = 0`, `z_{i,s} ≪ z_{i−1,s}`, `z_{0,s} ≪ p_s`, compact `p_s`
    /// and `r ≪ t`.
    pub fn check(&self) -> Result<()> {
        let m = self.sequences();
        if m == 0 || self.p.len() != m {
            return pre(format!("problem has {m} sequences and {} compacts", self.p.len()));
        }
        let (l, arity) = (self.l(), self.arity());
        if l == 0 {
            return pre("problem needs l ≥ 1");
        }
        for (s, (row, p)) in self.z.iter().zip(&self.p).enumerate() {
            if row.len() != l + 1 {
                return pre(format!("sequence {s} has {} terms, expected {}", row.len(), l + 1));
            }
            if let Some(x) = row.iter().chain([p]).find(|x| x.arity() != arity) {
                return Err(Error::Signature(arity, x.arity()));
            }
            if !p.is_compact() {
                return pre(format!("p_{s} is not compact"));
            }
            if !row[l].is_zero() {
                return pre(format!("z_{{{l},{s}}} ≠ 0"));
            }
            for i in 1..=l {
                if !row[i].ll(&row[i - 1])? {
                    return pre(format!("z_{{{i},{s}}} ≪ z_{{{},{s}}} fails", i - 1));
                }
            }
            if !row[0].ll(p)? {
                return pre(format!("z_{{0,{s}}} ≪ p_{s} fails"));
            }
        }
        if !self.r()?.ll(&self.t()?)? {
            return pre("r ≪ t fails");
        }
        Ok(())
    }

    /// The problem in summand `c` alone.
    pub fn summand(&self, c: usize) -> I0Problem {
        let pick = |x: &SemigroupElem| SemigroupElem::single(x.parts[c].clone());
        I0Problem {
            z: self.z.iter().map(|row| row.iter().map(pick).collect()).collect(),
            p: self.p.iter().map(pick).collect(),
            i_terms: self.i_terms.clone(),
            j_terms: self.j_terms.clone(),
        }
    }
}

/// One chainable subset with its sequences: `a_seqs[s][i]` for `i < l`,
/// `p_s = k_s·e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct I0Witness {
    pub chain: ChainableWitness,
    pub ks: Vec<usize>,
    pub a_seqs: Vec<Vec<XnElem>>,
    pub a: XnElem,
    pub b: XnElem,
}

impl I0Witness {
    fn n(&self) -> u64 {
        self.chain.n
    }

    fn top(&self, s: usize) -> XnElem {
        XnElem::new(self.n(), vec![XnPair::full(); self.ks[s]]).expect("full pairs are valid")
    }

    /// `a_{i,s}` with `a_{l,s} = 0` and `a_{−∞,s} = k_s(−∞,∞)`.
    fn term(&self, t: &Term, l: usize) -> Result<XnElem> {
        let (i, s) = *t;
        match i {
            Omega::NegInf => Ok(self.top(s)),
            Omega::Fin(i) if i as usize == l => Ok(XnElem::zero(self.n())),
            Omega::Fin(i) => Ok(self.a_seqs[s][i as usize].clone()),
            Omega::PosInf => pre("term index ∞"),
        }
    }

    fn sum(&self, terms: &[Term], l: usize) -> Result<XnElem> {
        let mut acc = XnElem::zero(self.n());
        for t in terms {
            acc = acc.add(&self.term(t, l)?)?;
        }
        Ok(acc)
    }
}

/// Finitely many chainable subsets; `parts[k].ks[s]` is `m_{k,s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IWitness {
    pub parts: Vec<I0Witness>,
}

pub type IPart = I0Witness;

/// Built-in witness families are recognised by their closed form; anything
/// else goes through [`verify_chainable`].
fn check_chain(w: &ChainableWitness) -> Report {
    let known = match &w.rule {
        RefinementRule::ScaledCanonical => w
            .e
            .compact_vector()
            .filter(|ks| ks.iter().sum::<usize>() == 1)
            .map(|ks| ks.iter().position(|&k| k == 1).unwrap())
            .is_some_and(|c| w.table == Table::canonical(w.n, c, w.arity())),
        RefinementRule::ConstantMultiples => w.e.is_compact() && w.table == Table::constant_multiples(w.n, &w.e),
        RefinementRule::Explicit { .. } => false,
    };
    if known && w.table.n() == w.n {
        Report::default()
    } else {
        verify_chainable(w)
    }
}

fn verify_parts(prob: &I0Problem, parts: &[I0Witness]) -> Report {
    let mut r = Report::default();
    if let Err(e) = prob.check() {
        r.push(format!("problem: {e}"));
        return r;
    }
    let (m, l, arity) = (prob.sequences(), prob.l(), prob.arity());
    for (k, w) in parts.iter().enumerate() {
        let tag = if parts.len() == 1 { String::new() } else { format!("part {k}: ") };
        for v in check_chain(&w.chain).violations {
            r.push(format!("{tag}chain: {v}"));
        }
        if w.chain.arity() != arity {
            r.push(format!("{tag}chain arity {} ≠ {arity}", w.chain.arity()));
        }
        if w.ks.len() != m || w.a_seqs.len() != m || w.a_seqs.iter().any(|row| row.len() != l) {
            r.push(format!("{tag}expected {m} multiples and {m} sequences of length {l}"));
        }
        let n = w.n();
        let xs = w.a_seqs.iter().flatten().chain([&w.a, &w.b]);
        if let Some(bad) = xs.into_iter().find(|x| x.n() != n) {
            r.push(format!("{tag}element {bad} is over X_{}, chain is over X_{n}", bad.n()));
        }
    }
    if !r.ok() {
        return r;
    }
    for s in 0..m {
        let mut total = SemigroupElem::zero(arity);
        for w in parts {
            total = total.add(&w.chain.e.scale(w.ks[s])).unwrap();
        }
        if total != prob.p[s] {
            r.push(format!("(i) p_{s} = {} but the multiples give {total}", prob.p[s]));
        }
    }
    let run = |r: &mut Report| -> Result<()> {
        for (k, w) in parts.iter().enumerate() {
            let tag = if parts.len() == 1 { String::new() } else { format!(" part {k}") };
            for s in 0..m {
                let seq = &w.a_seqs[s];
                if prec(&seq[0], &w.top(s))?.is_none() {
                    r.push(format!("(ii){tag} a_{{0,{s}}} ≺ {}(-inf,inf) fails", w.ks[s]));
                }
                for i in 1..l {
                    if prec(&seq[i], &seq[i - 1])?.is_none() {
                        r.push(format!("(ii){tag} a_{{{i},{s}}} ≺ a_{{{},{s}}} fails", i - 1));
                    }
                }
            }
        }
        for s in 0..m {
            for i in 1..=l {
                let mut img = SemigroupElem::zero(arity);
                for w in parts {
                    img = img.add(&w.chain.eval(&w.a_seqs[s][i - 1])?)?;
                }
                if !prob.z[s][i].ll(&img)? {
                    r.push(format!("(ii) z_{{{i},{s}}} ≪ F(a_{{{},{s}}}) fails", i - 1));
                }
                if !img.ll(&prob.z[s][i - 1])? {
                    r.push(format!("(ii) F(a_{{{},{s}}}) ≪ z_{{{},{s}}} fails", i - 1, i - 1));
                }
            }
        }
        for (k, w) in parts.iter().enumerate() {
            let tag = if parts.len() == 1 { String::new() } else { format!(" part {k}") };
            if !simeq(&w.sum(&prob.i_terms, l)?, &w.a)? {
                r.push(format!("(iii){tag} Σ_I a ≃ a fails"));
            }
            if prec(&w.a, &w.b)?.is_none() {
                r.push(format!("(iii){tag} a ≺ b fails"));
            }
            if !simeq(&w.b, &w.sum(&prob.j_terms, l)?)? {
                r.push(format!("(iii){tag} b ≃ Σ_J a fails"));
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut r) {
        r.push(e.to_string());
    }
    r
}

/// Conditions (i)–(iii) of property I₀ for one chainable subset.
pub fn verify_i0_witness(prob: &I0Problem, wit: &I0Witness) -> Report {
    verify_parts(prob, std::slice::from_ref(wit))
}

/// Conditions (i)–(iii) of property I for several chainable subsets.
pub fn verify_i_witness(prob: &I0Problem, wit: &IWitness) -> Report {
    if wit.parts.is_empty() {
        let mut r = Report::default();
        r.push("no chainable subsets");
        return r;
    }
    verify_parts(prob, &wit.parts)
}

/// A compact `e` with `p_s = k_s·e` for all `s`, if one exists.
pub fn single_subset_header(p: &[SemigroupElem]) -> Result<Option<(SemigroupElem, Vec<usize>)>> {
    common_compact_divisor(p)
}

const MAX_HALVINGS: u32 = 48;

fn denominator_u64(fs: &[&StepFn]) -> Result<u64> {
    let d = fs.iter().fold(num_bigint::BigInt::from(1), |acc, f| acc.lcm(&f.common_denominator()));
    to_u64(&d).ok_or_else(|| Error::Bound("common denominator exceeds u64".into()))
}

/// Witness for a problem in one `Lsc` summand, using the canonical `L_n`.
///
/// Interpolants `f_{i,s}` between `z_{i+1,s}` and `z_{i,s}` are taken at
/// `δ = 1/(3D·2^k)` and then retracted by `ε = 1/(c·n₀)`, `c` in `1, 2, 3·2^j`,
/// growing until every required relation holds in `L_n⁰`, `n = c·n₀`.
pub fn construct_i0_witness_lsc(prob: &I0Problem) -> Result<I0Witness> {
    prob.check()?;
    if prob.arity() != 1 {
        return pre(format!("construct_i0_witness_lsc: arity 1, got {}", prob.arity()));
    }
    let (m, l) = (prob.sequences(), prob.l());
    let part = |x: &SemigroupElem| x.parts[0].clone();
    let z: Vec<Vec<StepFn>> = prob.z.iter().map(|row| row.iter().map(part).collect()).collect();
    let p: Vec<StepFn> = prob.p.iter().map(part).collect();
    let ks: Vec<usize> = p.iter().map(|f| f.max_value()).collect();

    let term = |fs: &[Vec<StepFn>], t: &Term| -> StepFn {
        match t.0 {
            Omega::NegInf => p[t.1].clone(),
            Omega::Fin(i) if i as usize == l => StepFn::zero(),
            Omega::Fin(i) => fs[t.1][i as usize].clone(),
            Omega::PosInf => unreachable!("checked by the problem"),
        }
    };
    let sum = |fs: &[Vec<StepFn>], terms: &[Term]| StepFn::sum(terms.iter().map(|t| term(fs, t)).collect::<Vec<_>>().iter());

    let zs: Vec<&StepFn> = z.iter().flatten().collect();
    let d = denominator_u64(&zs)?;
    let mut found = None;
    for k in 0..MAX_HALVINGS {
        let delta = Q::new(1.into(), num_bigint::BigInt::from(3 * d) << k);
        let f: Vec<Vec<StepFn>> =
            z.iter().map(|row| (0..l).map(|i| interpolate_with(&row[i + 1], &row[i], &delta)).collect()).collect();
        let between = (0..m).all(|s| (0..l).all(|i| z[s][i + 1].ll(&f[s][i]) && f[s][i].ll(&z[s][i])));
        if between && sum(&f, &prob.i_terms).ll(&sum(&f, &prob.j_terms)) {
            found = Some(f);
            break;
        }
    }
    let f = found.ok_or_else(|| Error::Bound("no interpolation margin found".into()))?;

    let fs: Vec<&StepFn> = f.iter().flatten().collect();
    let n0 = denominator_u64(&fs)?;
    let cs = (1..=2).map(Some).chain((0..MAX_HALVINGS).map(|j| 3u64.checked_shl(j)));
    for c in cs {
        let Some(n) = c.and_then(|c| c.checked_mul(n0)) else { break };
        let eps = Q::new(1.into(), (n as i64).into());
        let g: Vec<Vec<StepFn>> = f.iter().map(|row| row.iter().map(|x| x.retract(&eps)).collect()).collect();
        let (gi, gj) = (sum(&g, &prob.i_terms), sum(&g, &prob.j_terms));
        let ok = (0..m).all(|s| (0..l).all(|i| z[s][i + 1].ll(&g[s][i]) && in_ln0(&g[s][i], n)))
            && gi.ll(&gj)
            && in_ln0(&gi, n)
            && in_ln0(&gj, n);
        if !ok {
            continue;
        }
        let a_seqs = g.iter().map(|row| row.iter().map(|x| canonical_qf(x, n)).collect()).collect::<Result<_>>()?;
        let wit = I0Witness {
            chain: ChainableWitness::canonical(n),
            ks,
            a_seqs,
            a: canonical_qf(&gi, n)?,
            b: canonical_qf(&gj, n)?,
        };
        verify_i0_witness(prob, &wit).into_result()?;
        return Ok(wit);
    }
    Err(Error::Bound(format!("no retraction ε found below 1/{n0}")))
}

/// Witness for a problem whose terms are all compact multiples of one `e`,
/// with the constant-multiples subset over `X_1` and `a_{i,s} = k_{i,s}(−∞,∞)`.
pub fn construct_i0_witness_compact(prob: &I0Problem) -> Result<I0Witness> {
    prob.check()?;
    let Some((e, ks)) = single_subset_header(&prob.p)? else {
        return pre("no compact e with p_s = k_s·e for every s");
    };
    let e = if e.is_zero() { SemigroupElem::compact(&vec![1; prob.arity()]) } else { e };
    let multiple = |x: &SemigroupElem| -> Result<usize> {
        let k = x.compact_vector().ok_or_else(|| Error::Precondition(format!("{x} is not compact")))?;
        let ev = e.compact_vector().unwrap();
        let pivot = ev.iter().position(|&c| c > 0).unwrap();
        let q = k[pivot] / ev[pivot];
        if e.scale(q) != *x {
            return pre(format!("{x} is not a multiple of {e}"));
        }
        Ok(q)
    };
    let n = 1;
    let full = |k: usize| XnElem::new(n, vec![XnPair::full(); k]).unwrap();
    let mut a_seqs = Vec::with_capacity(prob.sequences());
    for row in &prob.z {
        a_seqs.push(row[..prob.l()].iter().map(|x| multiple(x).map(full)).collect::<Result<Vec<_>>>()?);
    }
    let count = |terms: &[Term]| -> Result<usize> { terms.iter().map(|t| multiple(prob.term(t)?)).sum() };
    let wit = I0Witness {
        chain: ChainableWitness::constant_multiples(n, e.clone()),
        ks,
        a_seqs,
        a: full(count(&prob.i_terms)?),
        b: full(count(&prob.j_terms)?),
    };
    verify_i0_witness(prob, &wit).into_result()?;
    Ok(wit)
}

fn embed_witness(w: &ChainableWitness, c: usize, arity: usize) -> ChainableWitness {
    let lift = |t: &Table| Table::from_fn(t.n(), arity, |p| SemigroupElem::embed(t.get(&p).parts[0].clone(), c, arity));
    let rule = match &w.rule {
        RefinementRule::Explicit { tables } => {
            RefinementRule::Explicit { tables: tables.iter().map(|(&m, t)| (m, lift(t))).collect() }
        }
        other => other.clone(),
    };
    ChainableWitness {
        n: w.n,
        e: SemigroupElem::embed(w.e.parts[0].clone(), c, arity),
        table: lift(&w.table),
        rule,
        m_check: w.m_check,
    }
}

/// One canonical subset per summand of `Lsc^arity`, each from
/// [`construct_i0_witness_lsc`] on that summand and embedded back.
pub fn construct_i_witness(prob: &I0Problem) -> Result<IWitness> {
    prob.check()?;
    let arity = prob.arity();
    let mut parts = Vec::with_capacity(arity);
    for c in 0..arity {
        let w = construct_i0_witness_lsc(&prob.summand(c))?;
        parts.push(I0Witness { chain: embed_witness(&w.chain, c, arity), ..w });
    }
    let wit = IWitness { parts };
    verify_i_witness(prob, &wit).into_result()?;
    Ok(wit)
}
