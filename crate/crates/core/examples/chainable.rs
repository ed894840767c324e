//! Chainable witnesses: the canonical `L_n`, constant multiples, images under
//! a morphism, `ρ_m` and the sandwich relations.

use lscu::chainable::{map_witness, rho_build, tebelow_check, verify_chainable, ChainableWitness};
use lscu::morphisms::fixtures::identity;
use lscu::morphisms::MultiGridMorphism;
use lscu::rational::q;
use lscu::SemigroupElem;

fn main() -> lscu::Result<()> {
    for n in 1..=4 {
        println!("L_{n}: {}", verify_chainable(&ChainableWitness::canonical(n)));
    }
    let constant = ChainableWitness::constant_multiples(3, SemigroupElem::compact(&[2, 1]));
    println!("multiples of (2,1): {}", verify_chainable(&constant));

    let image = map_witness(&ChainableWitness::canonical(2), &MultiGridMorphism::single(identity(24)))?;
    println!("image of L_2: {}", verify_chainable(&image));

    let w = ChainableWitness::canonical(2);
    let rho = rho_build(&w, 4)?;
    println!("ρ_4 at N = {}", rho.n);
    println!("sandwich at ε = 1/4: {}", tebelow_check(&w, 4, &q(1, 4))?);
    Ok(())
}
