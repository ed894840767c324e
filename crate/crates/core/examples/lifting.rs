//! A chain `s_1 ≪ … ≪ s_j ≤ p` lifted to a grid certificate of a morphism
//! `Lsc([0,1], N̄) → Lsc^2`.

use lscu::format::{elem_text, parse_elem, parse_stepfn};
use lscu::morphisms::{evaluate, lift_from_chain, validate};
use lscu::SemigroupElem;

fn main() -> lscu::Result<()> {
    let chain = ["(3/4,1] | 0", "(1/2,1] | [0,1/4)", "(1/4,1] | [0,1/2)"]
        .iter()
        .map(|s| parse_elem(s))
        .collect::<lscu::Result<Vec<_>>>()?;
    let phi = lift_from_chain(&chain, &SemigroupElem::compact(&[1, 1]))?;
    println!("N = {}, slack = {}, valid: {}", phi.n, phi.slack, validate(&phi).ok());
    for (i, v) in phi.v.iter().enumerate() {
        println!("  v_{i} = {}", elem_text(v));
    }
    for f in ["(1/3,1]", "[0,2/3)", "(1/3,2/3) + [0,1]"] {
        let g = parse_stepfn(f)?;
        println!("φ({f}) = {}", elem_text(&evaluate(&phi, &g)?));
    }
    Ok(())
}
