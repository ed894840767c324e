use lscu::format::{elem_text, from_json, parse_elem, parse_stepfn, stepfn_text, to_json};
use lscu::rational::q;
use lscu::xn_monoid::{canonical_qf, feval, in_ln, prec, prec_oracle};
use lscu::{Interval, Omega, SemigroupElem, StepFn, XnElem, XnPair};
use proptest::prelude::*;

const D: i64 = 12;

fn interval() -> impl Strategy<Value = Interval> {
    prop_oneof![
        1 => Just(Interval::Full),
        2 => (1..=D).prop_map(|b| Interval::Left(q(b, D))),
        2 => (0..D).prop_map(|a| Interval::Right(q(a, D))),
        5 => (0..D, 1..=D).prop_filter_map("empty", |(a, b)| (a < b).then(|| Interval::Open(q(a, D), q(b, D)))),
    ]
}

fn stepfn() -> impl Strategy<Value = StepFn> {
    prop::collection::vec(interval(), 0..4).prop_map(StepFn::from_indicators)
}

fn elem(arity: usize) -> impl Strategy<Value = SemigroupElem> {
    prop::collection::vec(stepfn(), arity).prop_map(|ps| SemigroupElem::new(ps).unwrap())
}

fn omega(n: u64) -> impl Strategy<Value = Omega> {
    (0..n + 3).prop_map(move |i| match i {
        0 => Omega::NegInf,
        i if i == n + 2 => Omega::PosInf,
        i => Omega::Fin(i - 1),
    })
}

fn xn(n: u64, max: usize) -> impl Strategy<Value = XnElem> {
    prop::collection::vec((omega(n), omega(n)).prop_filter_map("lo < hi", |(a, b)| (a < b).then_some(XnPair { lo: a, hi: b })), 0..=max)
        .prop_map(move |ps| XnElem::new(n, ps).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn stepfn_text_and_json_round_trip(f in stepfn()) {
        prop_assert_eq!(parse_stepfn(&stepfn_text(&f)).unwrap(), f.clone());
        prop_assert_eq!(from_json::<StepFn>(&to_json(&f)).unwrap(), f);
    }

    #[test]
    fn elem_text_round_trip(x in elem(2)) {
        prop_assert_eq!(parse_elem(&elem_text(&x)).unwrap(), x);
    }

    #[test]
    fn xn_json_round_trip(x in xn(3, 3)) {
        prop_assert_eq!(from_json::<XnElem>(&to_json(&x)).unwrap(), x);
    }

    #[test]
    fn addition_is_commutative_and_monotone(f in stepfn(), g in stepfn(), h in stepfn()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert!(f.leq(&f.add(&g)));
        if f.leq(&g) {
            prop_assert!(f.add(&h).leq(&g.add(&h)));
        }
        if f.ll(&g) {
            prop_assert!(f.add(&h).leq(&g.add(&h)));
        }
    }

    #[test]
    fn way_below_laws(f in stepfn(), g in stepfn(), h in stepfn()) {
        prop_assert!(f.leq(&f));
        if f.ll(&g) {
            prop_assert!(f.leq(&g));
            if g.leq(&h) {
                prop_assert!(f.ll(&h));
            }
        }
        if f.leq(&g) && g.ll(&h) {
            prop_assert!(f.ll(&h));
        }
        if f.leq(&g) && g.leq(&f) {
            prop_assert_eq!(f.clone(), g.clone());
        }
        prop_assert_eq!(f.ll(&f), f.is_compact());
    }

    #[test]
    fn sup_inf_bounds(f in stepfn(), g in stepfn()) {
        let (sup, inf) = f.sup_inf(&g);
        prop_assert!(f.leq(&sup) && g.leq(&sup));
        prop_assert!(inf.leq(&f) && inf.leq(&g));
        prop_assert_eq!(sup.add(&inf), f.add(&g));
    }

    #[test]
    fn retraction_properties(f in stepfn(), a in 1..4i64, b in 1..4i64) {
        let (ea, eb) = (q(a, 4 * D), q(b, 4 * D));
        let r = f.retract(&ea);
        prop_assert!(r.ll(&f));
        prop_assert_eq!(r.retract(&eb), f.retract(&(ea.clone() + eb.clone())));
        prop_assert!(f.leq(&f.neighborhood(&ea)));
        prop_assert!(r.neighborhood(&ea).leq(&f));
    }

    #[test]
    fn prec_agrees_with_oracle(w in xn(2, 3), v in xn(2, 2)) {
        let cert = prec(&w, &v).unwrap();
        prop_assert_eq!(cert.is_some(), prec_oracle(&w, &v).unwrap());
        if let Some(c) = cert {
            prop_assert!(c.check(&w, &v));
        }
    }

    #[test]
    fn prec_implies_way_below_image(w in xn(3, 3), v in xn(3, 3)) {
        if prec(&w, &v).unwrap().is_some() {
            prop_assert!(feval(&w).ll(&feval(&v)));
        }
    }

    #[test]
    fn canonical_qf_evaluates_back(x in xn(4, 3)) {
        let f = feval(&x);
        prop_assert!(in_ln(&f, 4));
        let c = canonical_qf(&f, 4).unwrap();
        prop_assert_eq!(feval(&c), f);
    }
}
