//! Witnesses for properties I₀ and I: a single `Lsc` summand, compact data,
//! and a problem in `Lsc^2` that needs one chainable subset per summand.

use lscu::chainable::{
    construct_i0_witness_compact, construct_i0_witness_lsc, construct_i_witness, verify_i0_witness,
    verify_i_witness, I0Problem,
};
use lscu::format::parse_elem;
use lscu::{Omega, SemigroupElem};

fn main() -> lscu::Result<()> {
    let z = |s: &str| parse_elem(s).unwrap();
    let prob = I0Problem {
        z: vec![vec![z("(1/4,1]"), z("(1/2,1]"), z("0")]],
        p: vec![SemigroupElem::compact(&[1])],
        i_terms: vec![(Omega::Fin(1), 0)],
        j_terms: vec![(Omega::Fin(0), 0)],
    };
    let w = construct_i0_witness_lsc(&prob)?;
    println!("I₀ over X_{}: a = {}, b = {}; {}", w.chain.n, w.a, w.b, verify_i0_witness(&prob, &w));

    let compact = I0Problem {
        z: vec![vec![SemigroupElem::compact(&[2]), SemigroupElem::compact(&[0])]],
        p: vec![SemigroupElem::compact(&[2])],
        i_terms: vec![(Omega::Fin(0), 0)],
        j_terms: vec![(Omega::NegInf, 0)],
    };
    let w = construct_i0_witness_compact(&compact)?;
    println!("compact data: a = {}, b = {}; {}", w.a, w.b, verify_i0_witness(&compact, &w));

    let two = I0Problem {
        z: vec![vec![z("(1/2,1] | [0,1/2)"), z("0 | 0")]],
        p: vec![SemigroupElem::compact(&[1, 1])],
        i_terms: vec![(Omega::Fin(0), 0)],
        j_terms: vec![(Omega::NegInf, 0)],
    };
    let w = construct_i_witness(&two)?;
    println!("property I in Lsc^2: {} subsets; {}", w.parts.len(), verify_i_witness(&two, &w));
    Ok(())
}
