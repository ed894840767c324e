//! Chainable subsets given by finite witness tables, the morphisms `ρ_m`
//! they induce, and the constructions behind properties I₀ and I.
//!
//! A witness lists `g(α,β)` for every pair of `X_n`; the I-morphism is
//! `F(Σ pairs) = Σ g(pair)`.

mod convert;
mod factor;
mod property;

use std::collections::BTreeMap;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{pre, Error, Result};
use crate::exactset_stepfn::{Interval, StepFn};
use crate::morphisms::{evaluate, evaluate_elem, validate, GridMorphism, MultiGridMorphism, Report};
use crate::rational::{fmt_q, grid, grid_index, one, zero, Q};
use crate::semigroup::{subtract_from_compact, SemigroupElem};
use crate::xn_monoid::{Omega, XnElem, XnPair};

pub use convert::{check_prec_convert, prec_convert, PrecConvert};
pub use factor::{construct_factorization, verify_factorization, Factorization};
pub use property::{
    construct_i0_witness_compact, construct_i0_witness_lsc, construct_i_witness, single_subset_header, verify_i0_witness,
    verify_i_witness, I0Problem, I0Witness, IPart, IWitness, Term,
};

/// Refinements at `nm` are verified in full up to this resolution; beyond it
/// the closed-form rules are only checked on the embedded pairs.
pub const FULL_CHECK_LIMIT: u64 = 24;

pub const DEFAULT_M_CHECK: u64 = 4;

fn omega_at(n: u64, i: usize) -> Omega {
    match i {
        0 => Omega::NegInf,
        i if i as u64 == n + 2 => Omega::PosInf,
        i => Omega::Fin(i as u64 - 1),
    }
}

fn omega_index(o: Omega, n: u64) -> usize {
    match o {
        Omega::NegInf => 0,
        Omega::Fin(k) => k as usize + 1,
        Omega::PosInf => n as usize + 2,
    }
}

/// Every pair `α < β` of `Ω_n`.
pub fn all_pairs(n: u64) -> impl Iterator<Item = XnPair> {
    let len = n as usize + 3;
    (0..len).flat_map(move |a| (a + 1..len).map(move |b| XnPair { lo: omega_at(n, a), hi: omega_at(n, b) }))
}

/// `g` on `udiag(Ω_n × Ω_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    n: u64,
    arity: usize,
    values: Vec<SemigroupElem>,
}

impl Table {
    pub fn from_fn(n: u64, arity: usize, mut f: impl FnMut(XnPair) -> SemigroupElem) -> Table {
        let len = n as usize + 3;
        let mut values = vec![SemigroupElem::zero(arity); len * len];
        for p in all_pairs(n) {
            values[omega_index(p.lo, n) * len + omega_index(p.hi, n)] = f(p);
        }
        Table { n, arity, values }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn at(&self, a: usize, b: usize) -> &SemigroupElem {
        &self.values[a * (self.n as usize + 3) + b]
    }

    pub fn get(&self, p: &XnPair) -> &SemigroupElem {
        self.at(omega_index(p.lo, self.n), omega_index(p.hi, self.n))
    }

    pub fn set(&mut self, p: &XnPair, v: SemigroupElem) {
        let len = self.n as usize + 3;
        self.values[omega_index(p.lo, self.n) * len + omega_index(p.hi, self.n)] = v;
    }

    /// `F(x)`.
    pub fn eval(&self, x: &XnElem) -> Result<SemigroupElem> {
        if x.n() != self.n {
            return Err(Error::NMismatch(self.n, x.n()));
        }
        SemigroupElem::sum(self.arity, x.pairs().iter().map(|p| self.get(p)))
    }

    /// The table of `χ_{(α/n,β/n)}` placed in coordinate `coord`.
    pub fn canonical(n: u64, coord: usize, arity: usize) -> Table {
        Table::from_fn(n, arity, |p| match p.feval(n) {
            Some(i) => SemigroupElem::embed(StepFn::indicator(i), coord, arity),
            None => SemigroupElem::zero(arity),
        })
    }

    /// `g(α,∞) = e` and `0` elsewhere.
    pub fn constant_multiples(n: u64, e: &SemigroupElem) -> Table {
        Table::from_fn(n, e.arity(), |p| if p.hi == Omega::PosInf { e.clone() } else { SemigroupElem::zero(e.arity()) })
    }

    /// Every value pushed through `φ`.
    pub fn map(&self, phi: &MultiGridMorphism) -> Result<Table> {
        let mut out = Table::from_fn(self.n, phi.target_arity(), |_| SemigroupElem::zero(phi.target_arity()));
        for p in all_pairs(self.n) {
            out.set(&p, evaluate_elem(phi, self.get(&p))?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RefinementRule {
    /// `F′` is the canonical table of `X_{nm}` in the coordinate where `e = 1`.
    ScaledCanonical,
    /// `F′((α,∞)) = e`, zero elsewhere.
    ConstantMultiples,
    /// One table over `X_{nm}` per listed `m`.
    Explicit { tables: BTreeMap<u64, Table> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainableWitness {
    pub n: u64,
    pub e: SemigroupElem,
    pub table: Table,
    pub rule: RefinementRule,
    #[serde(default = "default_m_check")]
    pub m_check: u64,
}

fn default_m_check() -> u64 {
    DEFAULT_M_CHECK
}

impl ChainableWitness {
    /// `L_n` inside `Lsc`, with `e = 1`.
    pub fn canonical(n: u64) -> ChainableWitness {
        ChainableWitness::canonical_in(n, 0, 1)
    }

    /// `L_n` in summand `coord` of `Lsc^arity`.
    pub fn canonical_in(n: u64, coord: usize, arity: usize) -> ChainableWitness {
        let mut ks = vec![0; arity];
        ks[coord] = 1;
        ChainableWitness {
            n,
            e: SemigroupElem::compact(&ks),
            table: Table::canonical(n, coord, arity),
            rule: RefinementRule::ScaledCanonical,
            m_check: DEFAULT_M_CHECK,
        }
    }

    /// The additive span of a compact `e`.
    pub fn constant_multiples(n: u64, e: SemigroupElem) -> ChainableWitness {
        ChainableWitness {
            n,
            table: Table::constant_multiples(n, &e),
            e,
            rule: RefinementRule::ConstantMultiples,
            m_check: DEFAULT_M_CHECK,
        }
    }

    pub fn arity(&self) -> usize {
        self.e.arity()
    }

    /// `F(x)`.
    pub fn eval(&self, x: &XnElem) -> Result<SemigroupElem> {
        self.table.eval(x)
    }

    fn unit_coord(&self) -> Result<usize> {
        match self.e.compact_vector().as_deref() {
            Some(ks) if ks.iter().sum::<usize>() == 1 => Ok(ks.iter().position(|&k| k == 1).unwrap()),
            _ => pre("scaled_canonical needs e equal to 1 in one summand"),
        }
    }

    /// `F′(p)` for a pair of `X_{nm}`.
    pub fn refined_value(&self, m: u64, p: &XnPair) -> Result<SemigroupElem> {
        if m == 1 {
            return Ok(self.table.get(p).clone());
        }
        let big = self.n * m;
        match &self.rule {
            RefinementRule::ScaledCanonical => {
                let c = self.unit_coord()?;
                Ok(match p.feval(big) {
                    Some(i) => SemigroupElem::embed(StepFn::indicator(i), c, self.arity()),
                    None => SemigroupElem::zero(self.arity()),
                })
            }
            RefinementRule::ConstantMultiples => Ok(if p.hi == Omega::PosInf {
                self.e.clone()
            } else {
                SemigroupElem::zero(self.arity())
            }),
            RefinementRule::Explicit { tables } => match tables.get(&m) {
                Some(t) if t.n == big => Ok(t.get(p).clone()),
                Some(t) => Err(Error::NMismatch(big, t.n)),
                None => pre(format!("no refinement table for m = {m}")),
            },
        }
    }

    /// The whole table of `F′` on `X_{nm}`.
    pub fn refined(&self, m: u64) -> Result<Table> {
        if m == 1 {
            return Ok(self.table.clone());
        }
        if let RefinementRule::Explicit { tables } = &self.rule {
            return tables.get(&m).cloned().ok_or_else(|| Error::Precondition(format!("no refinement table for m = {m}")));
        }
        let mut err = None;
        let t = Table::from_fn(self.n * m, self.arity(), |p| {
            self.refined_value(m, &p).unwrap_or_else(|e| {
                err = Some(e);
                SemigroupElem::zero(self.arity())
            })
        });
        err.map_or(Ok(t), Err)
    }

    fn closed_form(&self) -> bool {
        !matches!(self.rule, RefinementRule::Explicit { .. })
    }
}

fn scale_omega(o: Omega, m: u64) -> Omega {
    match o {
        Omega::Fin(k) => Omega::Fin(k * m),
        other => other,
    }
}

fn prec_idx(a: usize, b: usize, last: usize) -> bool {
    a < b || (a == b && (a == 0 || a == last))
}

/// Test points: the sorted breakpoints with `0` and `1`, and the midpoints between them.
fn test_points(t: &Table) -> (Vec<Q>, Vec<Q>) {
    let mut bps = vec![zero(), one()];
    for v in &t.values {
        for p in &v.parts {
            bps.extend(p.endpoints());
        }
    }
    bps.sort();
    bps.dedup();
    let mids = bps.windows(2).map(|w| (&w[0] + &w[1]) / crate::rational::int(2)).collect();
    (bps, mids)
}

/// Heaviest interleaved chain inside targets `(a0, ·)` at one test point.
struct ChainDp {
    /// `best[b]`: heaviest chain `≺ (a0, b)`, with its last pair.
    best: Vec<(usize, Option<(usize, usize)>)>,
    pred: Vec<Option<(usize, usize)>>,
    len: usize,
}

impl ChainDp {
    fn run(weights: &[usize], len: usize, a0: usize) -> ChainDp {
        let last = len - 1;
        let mut pair_val = vec![0usize; len * len];
        let mut pred = vec![None; len * len];
        let mut best_end: Vec<Option<(usize, (usize, usize))>> = vec![None; len];
        let mut run: Option<(usize, (usize, usize))> = None;
        for l in 0..len {
            if l > 0 {
                if let Some(be) = best_end[l - 1] {
                    if run.map_or(true, |r| be.0 > r.0) {
                        run = Some(be);
                    }
                }
            }
            if !prec_idx(a0, l, last) || l == last {
                continue;
            }
            let (base, from) = match run {
                Some((v, p)) if v > 0 => (v, Some(p)),
                _ => (0, None),
            };
            for h in l + 1..len {
                let val = weights[l * len + h] + base;
                pair_val[l * len + h] = val;
                pred[l * len + h] = from;
                if best_end[h].map_or(true, |b| val > b.0) {
                    best_end[h] = Some((val, (l, h)));
                }
            }
        }
        let mut best = vec![(0, None); len];
        let mut acc: Option<(usize, (usize, usize))> = None;
        for b in 0..len {
            let mut cand = acc;
            if b == last {
                if let Some(be) = best_end[last] {
                    if cand.map_or(true, |c| be.0 > c.0) {
                        cand = Some(be);
                    }
                }
            }
            best[b] = cand.map_or((0, None), |(v, p)| (v, Some(p)));
            if let Some(be) = best_end[b] {
                if acc.map_or(true, |c| be.0 > c.0) {
                    acc = Some(be);
                }
            }
        }
        let _ = pair_val;
        ChainDp { best, pred, len }
    }

    fn chain(&self, last_pair: Option<(usize, usize)>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut cur = last_pair;
        while let Some((l, h)) = cur {
            out.push((l, h));
            cur = self.pred[l * self.len + h];
        }
        out.reverse();
        out
    }
}

fn fmt_chain(n: u64, chain: &[(usize, usize)]) -> String {
    if chain.is_empty() {
        return "0".into();
    }
    chain
        .iter()
        .map(|&(l, h)| XnPair { lo: omega_at(n, l), hi: omega_at(n, h) }.to_string())
        .collect::<Vec<_>>()
        .join("+")
}

/// Condition (iv): `Σ g(α_i,β_i) ≪ g(α,β)` whenever `Σ (α_i,β_i) ≺ (α,β)`.
///
/// Per summand and test point the heaviest interleaved chain is found by
/// dynamic programming; `≪` holds exactly when the upper envelope of every
/// chain stays below the target, which only needs the chain maxima at each
/// breakpoint and its two neighbouring midpoints.
fn check_way_below(t: &Table, r: &mut Report, label: &str) {
    let n = t.n;
    let len = n as usize + 3;
    let (bps, mids) = test_points(t);
    for s in 0..t.arity {
        let eval_at = |x: &Q| -> Vec<usize> { t.values.iter().map(|v| v.parts[s].value_at(x)).collect() };
        let dps = |x: &Q| -> Vec<ChainDp> {
            let w = eval_at(x);
            (0..len).map(|a0| ChainDp::run(&w, len, a0)).collect()
        };
        let at_b: Vec<Vec<ChainDp>> = bps.iter().map(|x| dps(x)).collect();
        let at_m: Vec<Vec<ChainDp>> = mids.iter().map(|x| dps(x)).collect();
        for a0 in 0..len {
            for b in a0 + 1..len {
                let target = &t.at(a0, b).parts[s];
                let mut bad: Option<(Q, usize, Option<(usize, usize)>, &ChainDp, usize)> = None;
                for (j, m) in mids.iter().enumerate() {
                    let (v, p) = at_m[j][a0].best[b];
                    if v > target.value_at(m) {
                        bad = Some((m.clone(), v, p, &at_m[j][a0], target.value_at(m)));
                        break;
                    }
                }
                if bad.is_none() {
                    for (j, x) in bps.iter().enumerate() {
                        let u = target.value_at(x);
                        let mut cands = vec![(&at_b[j][a0], at_b[j][a0].best[b])];
                        if j > 0 {
                            cands.push((&at_m[j - 1][a0], at_m[j - 1][a0].best[b]));
                        }
                        if j < mids.len() {
                            cands.push((&at_m[j][a0], at_m[j][a0].best[b]));
                        }
                        if let Some((dp, (v, p))) = cands.into_iter().find(|(_, (v, _))| *v > u) {
                            bad = Some((x.clone(), v, p, dp, u));
                            break;
                        }
                    }
                }
                if let Some((x, v, p, dp, u)) = bad {
                    let target_pair = XnPair { lo: omega_at(n, a0), hi: omega_at(n, b) };
                    r.push(format!(
                        "{label}(iv) {} ≺ {target_pair} but Σg ≪ g fails in summand {s} near {}: {v} > {u}",
                        fmt_chain(n, &dp.chain(p)),
                        fmt_q(&x)
                    ));
                    return;
                }
            }
        }
    }
}

/// Conditions (i)–(iv) for one table.
fn check_table(t: &Table, e: &SemigroupElem, r: &mut Report, label: &str) {
    let n = t.n;
    let len = n as usize + 3;
    let last = len - 1;
    if t.arity != e.arity() {
        r.push(format!("{label}table arity {} ≠ arity of e {}", t.arity, e.arity()));
        return;
    }
    if !e.is_compact() {
        r.push(format!("{label}(i) e is not compact"));
    }
    if t.at(0, last) != e {
        r.push(format!("{label}(i) g(-inf,inf) = {} ≠ e = {e}", t.at(0, last)));
    }
    for p in all_pairs(n) {
        if !t.get(&p).leq(e).unwrap_or(false) {
            r.push(format!("{label}(i) g{p} is not bounded by e"));
            return;
        }
    }
    for a in 0..len {
        for b in a + 1..last {
            let lhs = t.at(a, b).add(t.at(b, last)).unwrap();
            if !lhs.leq(t.at(a, last)).unwrap() {
                r.push(format!(
                    "{label}(ii) g({0},{1}) + g({1},inf) ≰ g({0},inf)",
                    omega_at(n, a),
                    omega_at(n, b)
                ));
                return;
            }
        }
    }
    for a in 0..len {
        for c in a + 1..len {
            for b in c + 1..len {
                for d in b + 1..len {
                    let lhs = t.at(a, b).add(t.at(c, d)).unwrap();
                    let rhs = t.at(a, d).add(t.at(c, b)).unwrap();
                    if lhs != rhs {
                        let o = |i| omega_at(n, i);
                        r.push(format!(
                            "{label}(iii) exchange fails at α={} γ={} β={} δ={}",
                            o(a),
                            o(c),
                            o(b),
                            o(d)
                        ));
                        return;
                    }
                }
            }
        }
    }
    check_way_below(t, r, label);
}

/// Checks the witness conditions (i)–(iv) and the refinement rule (v) for
/// every `m ≤ m_check`.
pub fn verify_chainable(w: &ChainableWitness) -> Report {
    let mut r = Report::default();
    if w.n == 0 || w.table.n != w.n {
        r.push(format!("table is over X_{} but n = {}", w.table.n, w.n));
        return r;
    }
    check_table(&w.table, &w.e, &mut r, "");
    for m in 1..=w.m_check {
        let label = format!("(v) m={m}: ");
        let mut moved = Vec::new();
        for p in all_pairs(w.n) {
            let q = XnPair { lo: scale_omega(p.lo, m), hi: scale_omega(p.hi, m) };
            match w.refined_value(m, &q) {
                Ok(v) if &v == w.table.get(&p) => {}
                Ok(v) => moved.push(format!("g′{q} = {v} ≠ g{p}")),
                Err(e) => {
                    r.push(format!("{label}{e}"));
                    break;
                }
            }
        }
        if let Some(first) = moved.first() {
            r.push(format!("{label}{first}"));
            continue;
        }
        if m > 1 && (!w.closed_form() || w.n * m <= FULL_CHECK_LIMIT) {
            match w.refined(m) {
                Ok(t) => check_table(&t, &w.e, &mut r, &label),
                Err(e) => r.push(format!("{label}{e}")),
            }
        }
    }
    r
}

/// The witness pushed through `φ`, with explicit refinements up to `m_check`.
pub fn map_witness(w: &ChainableWitness, phi: &MultiGridMorphism) -> Result<ChainableWitness> {
    let mut tables = BTreeMap::new();
    for m in 2..=w.m_check {
        tables.insert(m, w.refined(m)?.map(phi)?);
    }
    Ok(ChainableWitness {
        n: w.n,
        e: evaluate_elem(phi, &w.e)?,
        table: w.table.map(phi)?,
        rule: RefinementRule::Explicit { tables },
        m_check: w.m_check,
    })
}

/// `ρ_m` at resolution `nm`: `v_α = F′((α,∞))`, `w_β = e ⊖ v_β`, unit `e`.
///
/// `v_{nm}` is set to `0` as certificates require; the fullness condition
/// holds at `σ = 1`.
pub fn rho_build(w: &ChainableWitness, m: u64) -> Result<GridMorphism> {
    if m == 0 {
        return pre("rho_build: m ≥ 1");
    }
    if !w.closed_form() && m > 1 && m > w.m_check {
        return pre(format!("rho_build: no refinement for m = {m} beyond m_check = {}", w.m_check));
    }
    let big = w.n * m;
    let arity = w.arity();
    let mut v = Vec::with_capacity(big as usize + 1);
    for a in 0..big {
        v.push(w.refined_value(m, &XnPair { lo: Omega::Fin(a), hi: Omega::PosInf })?);
    }
    v.push(SemigroupElem::zero(arity));
    let mut ws = vec![SemigroupElem::zero(arity)];
    for b in 1..=big as usize {
        ws.push(subtract_from_compact(&w.e, &v[b])?);
    }
    let phi = GridMorphism { n: big, slack: 1, unit: w.e.clone(), v, w: ws };
    validate(&phi).into_result()?;
    Ok(phi)
}

fn indicator(lo: Q, lo_closed: bool, hi: Q, hi_closed: bool) -> StepFn {
    Interval::from_bounds(lo, lo_closed, hi, hi_closed).map_or_else(StepFn::zero, StepFn::indicator)
}

/// The three sandwich families around `F` for `ρ_m` and offset `ε`.
pub fn tebelow_check(w: &ChainableWitness, m: u64, eps: &Q) -> Result<Report> {
    if eps <= &zero() || eps * crate::rational::int(m as i64) < one() {
        return pre(format!("tebelow: needs m ≥ 1/ε, got m = {m}, ε = {}", fmt_q(eps)));
    }
    let big = w.n * m;
    if grid_index(eps, big).is_none() {
        return Err(Error::Alignment(format!("ε = {} is not a multiple of 1/{big}", fmt_q(eps))));
    }
    let rho = rho_build(w, m)?;
    let mut r = Report::default();
    let n = w.n;
    let mut check = |label: String, lo: StepFn, mid: &SemigroupElem, hi: StepFn| -> Result<()> {
        let (a, b) = (evaluate(&rho, &lo)?, evaluate(&rho, &hi)?);
        if !a.ll(mid)? {
            r.push(format!("{label}: ρ(inner) ≪ F fails"));
        }
        if !mid.ll(&b)? {
            r.push(format!("{label}: F ≪ ρ(outer) fails"));
        }
        Ok(())
    };
    for a in 0..=n {
        let x = grid(a, n);
        let f = w.table.get(&XnPair { lo: Omega::Fin(a), hi: Omega::PosInf });
        check(
            format!("(i) α={a}"),
            indicator(&x + eps, false, one(), true),
            f,
            indicator(&x - eps, false, one(), true),
        )?;
        for b in a + 1..=n {
            let y = grid(b, n);
            let f = w.table.get(&XnPair::fin(a, b));
            check(
                format!("(ii) α={a} β={b}"),
                indicator(&x + eps, false, &y - eps, false),
                f,
                indicator(&x - eps, false, &y + eps, false),
            )?;
        }
    }
    for b in 0..=n {
        let y = grid(b, n);
        let f = w.table.get(&XnPair { lo: Omega::NegInf, hi: Omega::Fin(b) });
        check(
            format!("(iii) β={b}"),
            indicator(zero(), true, &y - eps, false),
            f,
            indicator(zero(), true, &y + eps, false),
        )?;
    }
    Ok(r)
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    pair: XnPair,
    value: SemigroupElem,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    n: u64,
    arity: usize,
    entries: Vec<RawEntry>,
}

impl Serialize for Table {
    /// Zero values are omitted.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = all_pairs(self.n)
            .filter(|p| !self.get(p).is_zero())
            .map(|p| RawEntry { pair: p, value: self.get(&p).clone() })
            .collect();
        RawTable { n: self.n, arity: self.arity, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Table {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTable::deserialize(d)?;
        if raw.n == 0 || raw.arity == 0 {
            return Err(de::Error::custom("table needs n ≥ 1 and arity ≥ 1"));
        }
        let mut t = Table::from_fn(raw.n, raw.arity, |_| SemigroupElem::zero(raw.arity));
        for e in raw.entries {
            XnPair::new(e.pair.lo, e.pair.hi, raw.n).map_err(de::Error::custom)?;
            if e.value.arity() != raw.arity {
                return Err(de::Error::custom(format!("value for {} has arity {}", e.pair, e.value.arity())));
            }
            t.set(&e.pair, e.value);
        }
        Ok(t)
    }
}
