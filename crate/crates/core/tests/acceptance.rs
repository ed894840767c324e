//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the report is always printed.

mod support;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use lscu::chainable::{
    construct_factorization, construct_i0_witness_compact, construct_i0_witness_lsc, construct_i_witness,
    single_subset_header, tebelow_check, verify_chainable, verify_factorization, verify_i0_witness, verify_i_witness,
    ChainableWitness, I0Problem, RefinementRule, Table,
};
use lscu::exactset_stepfn::Interval;
use lscu::morphisms::fixtures::{identity, shifted};
use lscu::morphisms::{
    distance_bracket, evaluate, evaluate_indicators, evaluate_multi, lift_from_chain, retraction_distance_check,
    validate, MultiGridMorphism,
};
use lscu::rational::{grid, int, q};
use lscu::semigroup::common_compact_divisor;
use lscu::xn_monoid::{
    canonical_qf, certificate_target, check_exchange_certificate, feval, in_ln0, prec, prec_oracle,
    simeq_certificate,
};
use lscu::{Omega, SemigroupElem, StepFn, XnElem, XnPair};
use rand::Rng;
use support::*;

const BUDGET_ORACLE: Duration = Duration::from_secs(60);
const BUDGET_CANONICAL: Duration = Duration::from_secs(30);
const BUDGET_I0: Duration = Duration::from_secs(300);
const BUDGET_FACT: Duration = Duration::from_secs(600);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(failures: &[String], summary: String) -> Verdict {
    match failures.first() {
        None => Verdict { pass: true, detail: summary },
        Some(first) => Verdict { pass: false, detail: format!("{summary}; {} failure(s), first: {first}", failures.len()) },
    }
}

fn within(v: Verdict, took: Duration, budget: Duration) -> Verdict {
    if took <= budget {
        v
    } else {
        Verdict { pass: false, detail: format!("{} (over the {}s budget)", v.detail, budget.as_secs()) }
    }
}

fn x(n: u64, s: &str) -> XnElem {
    XnElem::parse(n, s).unwrap()
}

fn holds(w: &XnElem, v: &XnElem) -> bool {
    prec(w, v).unwrap().is_some()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let elems = all_elems(3, 3);
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let chunk = elems.len().div_ceil(threads);
    let failures: Vec<String> = std::thread::scope(|sc| {
        let handles: Vec<_> = elems
            .chunks(chunk)
            .map(|ws| {
                let elems = &elems;
                sc.spawn(move || {
                    let mut bad = Vec::new();
                    for w in ws {
                        for v in elems {
                            let cert = prec(w, v).unwrap();
                            if cert.is_some() != prec_oracle(w, v).unwrap() {
                                bad.push(format!("{w} vs {v}"));
                            }
                            if let Some(c) = cert {
                                if !c.check(w, v) {
                                    bad.push(format!("certificate for {w} ≺ {v} does not check"));
                                }
                            }
                        }
                    }
                    bad
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    });
    let took = start.elapsed();
    let cases = elems.len() * elems.len();
    within(verdict(&failures, format!("{cases} pairs over X_3 in {:.1}s", took.as_secs_f64())), took, BUDGET_ORACLE)
}

fn criterion_2() -> Verdict {
    let (w, v) = (x(4, "(1,2)+(2,3)"), x(4, "(0,4)"));
    let ll = feval(&w).ll(&feval(&v));
    let pr = holds(&w, &v);
    let pass = ll && !pr && !prec_oracle(&w, &v).unwrap();
    Verdict { pass, detail: format!("F(w) ≪ F(v) = {ll}, w ≺ v = {pr}") }
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let mut r = rng(3);
    let mut failures = Vec::new();
    let mut steps_total = 0;
    for _ in 0..1000 {
        let w = random_xn(&mut r, 4, 5);
        let steps = simeq_certificate(&w);
        steps_total += steps.len();
        if !check_exchange_certificate(&w, &steps) {
            failures.push(format!("certificate for {w} does not replay"));
            continue;
        }
        let f = feval(&w);
        let mut cur = w.clone();
        for s in &steps {
            let mut ps = cur.pairs().to_vec();
            for p in &s.from {
                let i = ps.iter().position(|x| x == p).unwrap();
                ps.remove(i);
            }
            ps.extend(s.to);
            cur = XnElem::new(4, ps).unwrap();
            if feval(&cur) != f {
                failures.push(format!("F changes along the certificate of {w} at {cur}"));
            }
        }
        let qf = canonical_qf(&f, 4).unwrap();
        if cur.nondegenerate_part() != qf || cur != certificate_target(&w) {
            failures.push(format!("{w} ends at {cur}, expected {qf} + {}", w.degenerate_part()));
        }
    }
    let took = start.elapsed();
    within(
        verdict(&failures, format!("1000 elements, {steps_total} exchanges in {:.1}s", took.as_secs_f64())),
        took,
        BUDGET_CANONICAL,
    )
}

fn criterion_4() -> Verdict {
    let mut r = rng(4);
    let mut failures = Vec::new();
    for _ in 0..10_000 {
        let n = r.gen_range(1..=4);
        let w = random_xn(&mut r, n, 3);
        let v = random_below(&mut r, &w);
        let u = random_below(&mut r, &v);
        if !holds(&v, &w) || !holds(&u, &v) {
            failures.push(format!("generator produced a non-relation {u} ≺ {v} ≺ {w}"));
        } else if !holds(&u, &w) {
            failures.push(format!("{u} ≺ {v} ≺ {w} but not {u} ≺ {w}"));
        }
    }
    let small = all_elems(2, 2);
    let full = XnElem::single(2, XnPair::full()).unwrap();
    let is_multiple = |w: &XnElem| w.pairs().iter().all(|p| *p == XnPair::full());
    for w in &small {
        for v in &small {
            if holds(w, v) && holds(v, w) && !(w == v && is_multiple(w)) {
                failures.push(format!("{w} ≺ {v} ≺ {w} without w = v = m(-inf,inf)"));
            }
            let (wf, vf) = (w.add(&full).unwrap(), v.add(&full).unwrap());
            if holds(&wf, &vf) != holds(w, v) {
                failures.push(format!("w+(-inf,inf) ≺ v+(-inf,inf) differs from w ≺ v at {w}, {v}"));
            }
        }
        if holds(&w.add(&full).unwrap(), &full) != w.is_empty() {
            failures.push(format!("w+(-inf,inf) ≺ (-inf,inf) wrong at w = {w}"));
        }
    }
    verdict(&failures, format!("10000 chains, {} elements of X_2 exhaustively", small.len()))
}

fn random_ln0(r: &mut rand_chacha::ChaCha8Rng, n: u64) -> StepFn {
    loop {
        let f = random_stepfn(r, n as i64, 3);
        if in_ln0(&f, n) {
            return f;
        }
    }
}

fn criterion_5() -> Verdict {
    let mut r = rng(5);
    let mut failures = Vec::new();
    let mut positive = 0;
    for _ in 0..1000 {
        let n = r.gen_range(2..=8);
        let f = random_ln0(&mut r, n);
        let g = if r.gen_bool(0.5) {
            let grown = f.neighborhood(&grid(1, n));
            let extra = StepFn::indicator(random_interval(&mut r, n as i64));
            let g = if r.gen_bool(0.5) { grown.add(&extra) } else { grown };
            if in_ln0(&g, n) {
                g
            } else {
                random_ln0(&mut r, n)
            }
        } else {
            random_ln0(&mut r, n)
        };
        let ll = f.ll(&g);
        positive += ll as usize;
        let (qf, qg) = (canonical_qf(&f, n).unwrap(), canonical_qf(&g, n).unwrap());
        if ll != holds(&qf, &qg) {
            failures.push(format!("n = {n}: f ≪ g is {ll} but q_f ≺ q_g is not, f = {f}, g = {g}"));
        }
    }
    verdict(&failures, format!("1000 pairs, {positive} with f ≪ g"))
}

fn criterion_6() -> Verdict {
    let mut r = rng(6);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let n = r.gen_range(1..=8u64);
        let (f, g) = (random_stepfn(&mut r, n as i64, 4), random_stepfn(&mut r, n as i64, 4));
        let m2 = r.gen_range(2 * n + 1..=8 * n) as i64;
        let m1 = r.gen_range(1..=(m2 - 1) / (2 * n as i64));
        let eps = q(m1, m2);
        assert!(eps < q(1, 2 * n as i64));
        let sum = f.add(&g).retract(&eps);
        if sum != f.retract(&eps).add(&g.retract(&eps)) {
            failures.push(format!("R_ε(f+g) ≠ R_ε f + R_ε g at n = {n}, ε = {eps}, f = {f}, g = {g}"));
        }
        let m = n * u64::try_from(eps.denom().clone()).unwrap();
        if !in_ln0(&f.retract(&eps), m) {
            failures.push(format!("R_ε f ∉ L_{m}⁰ at ε = {eps}, f = {f}"));
        }
    }
    verdict(&failures, "1000 elements of L_n, n ≤ 8".into())
}

fn criterion_7() -> Verdict {
    let mut r = rng(7);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let d = r.gen_range(1..=12);
        let (f, g) = (random_stepfn(&mut r, d, 4), random_stepfn(&mut r, d, 4));
        let (sup, inf) = f.sup_inf(&g);
        if f.add(&g) != sup.add(&inf) {
            failures.push(format!("f + g ≠ f∨g + f∧g at f = {f}, g = {g}"));
        }
    }
    verdict(&failures, "1000 pairs".into())
}

fn criterion_8() -> Verdict {
    let mut r = rng(8);
    let mut failures = Vec::new();
    for _ in 0..500 {
        let len = r.gen_range(1..=5);
        let arity = r.gen_range(1..=2);
        let ks: Vec<usize> = (0..arity).map(|_| r.gen_range(1..=2)).collect();
        let chain = random_chain(&mut r, len, 16, &ks);
        let phi = match lift_from_chain(&chain, &SemigroupElem::compact(&ks)) {
            Ok(phi) => phi,
            Err(e) => {
                failures.push(format!("lift failed: {e}"));
                continue;
            }
        };
        if !validate(&phi).ok() {
            failures.push(format!("lift does not validate: {}", validate(&phi)));
        }
        let nn = phi.n;
        for (k, s) in chain.iter().enumerate() {
            let i = 2 * (len - k - 1) as u64;
            let f = if i == nn { StepFn::zero() } else { StepFn::indicator(Interval::Right(grid(i, nn))) };
            if &evaluate(&phi, &f).unwrap() != s {
                failures.push(format!("φ(χ({i}/{nn},1]) ≠ s_{}", k + 1));
            }
        }
    }
    let mut decompositions = 0;
    for _ in 0..500 {
        let len = r.gen_range(1..=5);
        let phi = random_lift(&mut r, len, 16, &[2]);
        let items: Vec<Interval> = (0..r.gen_range(1..=4)).map(|_| random_interval(&mut r, len as i64)).collect();
        let f = StepFn::from_indicators(items.clone());
        let components: Vec<Interval> = f.components().map(|(_, c)| c.clone()).collect();
        let (a, b, c) = (
            evaluate_indicators(&phi, &items).unwrap(),
            evaluate_indicators(&phi, &components).unwrap(),
            evaluate(&phi, &f).unwrap(),
        );
        decompositions += 1;
        if a != b || b != c {
            failures.push(format!("two decompositions of {f} evaluate differently"));
        }
    }
    verdict(&failures, format!("500 lifts, {decompositions} decompositions"))
}

fn criterion_9() -> Verdict {
    let mut r = rng(9);
    let mut failures = Vec::new();
    let sample = |r: &mut rand_chacha::ChaCha8Rng| -> MultiGridMorphism {
        let len = r.gen_range(1..=4);
        let base = random_lift(r, len, 16, &[1]);
        let c = r.gen_range(0..=2);
        MultiGridMorphism::single(if c == 0 { base } else { shifted(&base, c) })
    };
    for _ in 0..500 {
        let (a, b, c) = (sample(&mut r), sample(&mut r), sample(&mut r));
        let ab = distance_bracket(&a, &b).unwrap();
        let ba = distance_bracket(&b, &a).unwrap();
        let bc = distance_bracket(&b, &c).unwrap();
        let ac = distance_bracket(&a, &c).unwrap();
        if distance_bracket(&a, &a).unwrap().lo != int(0) {
            failures.push("d(φ,φ) has positive lower bound".into());
        }
        if ab.lo > ab.hi {
            failures.push(format!("empty bracket [{}, {}]", ab.lo, ab.hi));
        }
        if ab != ba {
            failures.push(format!("asymmetric bracket {ab:?} vs {ba:?}"));
        }
        let g = ab.grid.min(bc.grid).min(ac.grid);
        if ac.hi > &ab.hi + &bc.hi + q(2, g as i64) {
            failures.push(format!("triangle: {} > {} + {} + 2/{g}", ac.hi, ab.hi, bc.hi));
        }
    }
    let mut checks = 0;
    for nn in [2u64, 4, 6, 8] {
        let bases = [identity(nn), random_lift(&mut r, (nn / 2) as usize, 16, &[1])];
        for base in bases {
            for c in 0..=2 {
                let phi = MultiGridMorphism::single(base.clone());
                let psi = MultiGridMorphism::single(shifted(&base, c));
                let eps = distance_bracket(&phi, &psi).unwrap().hi;
                let cells = (&eps * int(nn as i64)).to_integer();
                let shrink = 2 * u64::try_from(cells).unwrap() + u64::from(base.slack);
                for i in 0..=nn {
                    for j in i..=nn {
                        let mut fs = vec![StepFn::indicator(Interval::Right(grid(i, nn)))];
                        if j > 0 {
                            fs.push(StepFn::indicator(Interval::Left(grid(j, nn))));
                        }
                        if j >= i + shrink {
                            fs.push(StepFn::indicator(Interval::Open(grid(i, nn), grid(j, nn))));
                        }
                        for f in fs {
                            checks += 1;
                            match retraction_distance_check(&phi, &psi, &eps, 0, &f) {
                                Ok(true) => {}
                                Ok(false) => failures.push(format!("N = {nn}, shift {c}: fails at {f}")),
                                Err(e) => failures.push(format!("N = {nn}, shift {c}, {f}: {e}")),
                            }
                        }
                    }
                }
            }
        }
    }
    verdict(&failures, format!("500 triples, {checks} retraction checks on shift fixtures"))
}

fn mutants() -> Vec<(&'static str, ChainableWitness)> {
    let mut out = Vec::new();
    let one = |f: StepFn| SemigroupElem::single(f);
    let fin_inf = |a| XnPair { lo: Omega::Fin(a), hi: Omega::PosInf };

    for n in [1, 2] {
        let mut w = ChainableWitness::canonical(n);
        w.e = SemigroupElem::compact(&[2]);
        out.push(("(i)", w));
    }
    let mut w = ChainableWitness::canonical(3);
    w.e = one(StepFn::indicator(Interval::Right(q(1, 3))));
    out.push(("(i)", w));
    let mut w = ChainableWitness::canonical(2);
    w.table.set(&XnPair::fin(0, 1), one(StepFn::constant(2)));
    out.push(("(i)", w));
    let mut w = ChainableWitness::canonical(3);
    w.table.set(&XnPair::full(), SemigroupElem::zero(1));
    out.push(("(i)", w));

    for (n, a) in [(2, 0), (3, 1), (3, 2), (4, 2), (5, 0)] {
        let mut w = ChainableWitness::canonical(n);
        w.table.set(&fin_inf(a), SemigroupElem::zero(1));
        out.push(("(ii)", w));
    }

    for (n, a, b) in [(3, 0, 1), (3, 1, 2), (4, 0, 2), (4, 1, 3), (5, 0, 5)] {
        let mut w = ChainableWitness::canonical(n);
        w.table.set(&XnPair::fin(a, b), SemigroupElem::zero(1));
        out.push(("(iii)", w));
    }

    let mut w = ChainableWitness::canonical(2);
    w.rule = RefinementRule::ConstantMultiples;
    out.push(("(v)", w));
    let mut w = ChainableWitness::canonical(3);
    w.rule = RefinementRule::Explicit { tables: BTreeMap::new() };
    out.push(("(v)", w));
    let mut w = ChainableWitness::canonical(3);
    let mut t6 = Table::canonical(6, 0, 1);
    t6.set(&XnPair::fin(1, 2), SemigroupElem::zero(1));
    w.rule = RefinementRule::Explicit { tables: BTreeMap::from([(2, t6)]) };
    w.m_check = 2;
    out.push(("(v)", w));
    let mut w = ChainableWitness::constant_multiples(2, SemigroupElem::compact(&[2]));
    w.rule = RefinementRule::ScaledCanonical;
    out.push(("(v)", w));
    let mut w = ChainableWitness::canonical(3);
    w.rule = RefinementRule::Explicit { tables: BTreeMap::from([(2, Table::canonical(5, 0, 1))]) };
    w.m_check = 2;
    out.push(("(v)", w));
    out
}

fn criterion_10() -> Verdict {
    let mut failures = Vec::new();
    for n in 1..=5 {
        let r = verify_chainable(&ChainableWitness::canonical(n));
        if !r.ok() {
            failures.push(format!("canonical L_{n}: {r}"));
        }
        for ks in [[1usize], [2], [3]] {
            let r = verify_chainable(&ChainableWitness::constant_multiples(n, SemigroupElem::compact(&ks)));
            if !r.ok() {
                failures.push(format!("constant multiples of {ks:?} over X_{n}: {r}"));
            }
        }
    }
    let two = ChainableWitness::constant_multiples(3, SemigroupElem::compact(&[1, 2]));
    if !verify_chainable(&two).ok() {
        failures.push("constant multiples of (1,2)".into());
    }
    for n in 1..=3 {
        for m in [4u64, 8] {
            match tebelow_check(&ChainableWitness::canonical(n), m, &q(1, m as i64)) {
                Ok(r) if r.ok() => {}
                Ok(r) => failures.push(format!("sandwich n = {n}, m = {m}: {r}")),
                Err(e) => failures.push(format!("sandwich n = {n}, m = {m}: {e}")),
            }
        }
    }
    let ms = mutants();
    for (k, (want, w)) in ms.iter().enumerate() {
        let r = verify_chainable(w);
        match r.violations.first() {
            None => failures.push(format!("mutant {k} ({want}) accepted")),
            Some(v) if v.starts_with(want) => {}
            Some(v) => failures.push(format!("mutant {k} expected {want}, got {v}")),
        }
    }
    verdict(&failures, format!("canonical and constant witnesses n ≤ 5, {} mutants", ms.len()))
}

fn criterion_11() -> Verdict {
    let start = Instant::now();
    let mut r = rng(11);
    let mut failures = Vec::new();
    for k in 0..200 {
        let prob = random_problem(&mut r, 1, 4, 12);
        match construct_i0_witness_lsc(&prob) {
            Ok(w) => {
                let rep = verify_i0_witness(&prob, &w);
                if !rep.ok() {
                    failures.push(format!("problem {k}: {rep}"));
                }
            }
            Err(e) => failures.push(format!("problem {k}: {e}")),
        }
    }
    for k in 0..100 {
        let prob = random_problem(&mut r, 2, 4, 12);
        match construct_i_witness(&prob) {
            Ok(w) => {
                let rep = verify_i_witness(&prob, &w);
                if !rep.ok() {
                    failures.push(format!("arity-2 problem {k}: {rep}"));
                }
            }
            Err(e) => failures.push(format!("arity-2 problem {k}: {e}")),
        }
    }
    let took = start.elapsed();
    within(verdict(&failures, format!("200 + 100 problems in {:.1}s", took.as_secs_f64())), took, BUDGET_I0)
}

fn criterion_12() -> Verdict {
    let ps = [SemigroupElem::compact(&[1, 0]), SemigroupElem::compact(&[0, 1])];
    let divisor = common_compact_divisor(&ps).unwrap();
    let header = single_subset_header(&ps).unwrap();
    let prob = I0Problem {
        z: ps.iter().map(|_| vec![SemigroupElem::zero(2), SemigroupElem::zero(2)]).collect(),
        p: ps.to_vec(),
        i_terms: vec![],
        j_terms: vec![],
    };
    let refused = construct_i0_witness_compact(&prob).is_err();
    Verdict {
        pass: divisor.is_none() && header.is_none() && refused,
        detail: format!("divisor {divisor:?}, header {header:?}, single-subset construction refused: {refused}"),
    }
}

fn criterion_13() -> Verdict {
    let start = Instant::now();
    let mut r = rng(13);
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for k in 0..50 {
        let arity = r.gen_range(1..=2);
        let inst = random_instance(&mut r, 4, arity);
        let pre = evaluate_multi(&inst.phi, &inst.x_prime).unwrap().ll(&evaluate_multi(&inst.phi, &inst.y).unwrap()).unwrap();
        if !pre {
            failures.push(format!("instance {k}: generator broke φ(x′) ≪ φ(y)"));
            continue;
        }
        match construct_factorization(&inst.phi, inst.l, &inst.x, &inst.x_prime, &inst.y) {
            Ok((f, _)) => {
                sizes.push(f.psi.sources.iter().map(|s| s.n).max().unwrap_or(0));
                match verify_factorization(&inst.phi, inst.l, &inst.x, &inst.y, &f) {
                    Ok(rep) if rep.ok() => {}
                    Ok(rep) => failures.push(format!("instance {k}: {rep}")),
                    Err(e) => failures.push(format!("instance {k}: {e}")),
                }
            }
            Err(e) => failures.push(format!("instance {k}: {e}")),
        }
    }
    let took = start.elapsed();
    let top = sizes.iter().max().copied().unwrap_or(0);
    within(
        verdict(&failures, format!("50 instances in {:.1}s, largest ρ grid N = {top}", took.as_secs_f64())),
        took,
        BUDGET_FACT,
    )
}

fn worked_factorization() -> bool {
    let phi = MultiGridMorphism::single(identity(8));
    let g = |i| lscu::morphisms::GridBasicElement::zero(4, 1).with(0, i, 1);
    let (x, xp, y) = (g(Some(2)), g(Some(1)), g(None));
    construct_factorization(&phi, 4, &x, &xp, &y).is_ok_and(|(f, _)| verify_factorization(&phi, 4, &x, &y, &f).unwrap().ok())
}

fn main() {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [(usize, &str, fn() -> Verdict); 13] = [
        (1, "≺ agrees with the exhaustive oracle", criterion_1),
        (2, "F-images way below while ≺ fails", criterion_2),
        (3, "exchange certificates reach q_F", criterion_3),
        (4, "≺ transitivity, antisymmetry, maximal elements", criterion_4),
        (5, "f ≪ g iff q_f ≺ q_g on L_n⁰", criterion_5),
        (6, "retraction additivity and L⁰ membership", criterion_6),
        (7, "f + g = f∨g + f∧g", criterion_7),
        (8, "lifting certificates", criterion_8),
        (9, "distance brackets", criterion_9),
        (10, "chainable witnesses and mutants", criterion_10),
        (11, "I₀ and I witness construction", criterion_11),
        (12, "no common compact divisor for (1,0),(0,1)", criterion_12),
        (13, "end-to-end factorization", criterion_13),
    ];
    let mut failed = 0;
    for (k, name, run) in criteria {
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let mut v = run();
        if k == 13 {
            let example = worked_factorization();
            v.pass &= example;
            v.detail = format!("{}; l = 4 example verified: {example}", v.detail);
        }
        println!("criterion {k:>2} {} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += !v.pass as usize;
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
