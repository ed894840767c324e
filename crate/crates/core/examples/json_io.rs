//! The exchange format: exact rationals as strings, round-tripping every value.

use lscu::chainable::ChainableWitness;
use lscu::format::{from_json, parse_stepfn, to_json};
use lscu::morphisms::fixtures::identity;
use lscu::morphisms::GridMorphism;
use lscu::{StepFn, XnElem};

fn main() -> lscu::Result<()> {
    let f = parse_stepfn("2*(1/3,1] + [0,1/2)")?;
    let text = to_json(&f);
    println!("{text}");
    assert_eq!(from_json::<StepFn>(&text)?, f);

    let x = XnElem::parse(3, "(-inf,1)+(0,inf)")?;
    println!("{}", to_json(&x));

    let phi = identity(2);
    assert_eq!(from_json::<GridMorphism>(&to_json(&phi))?, phi);

    let w = ChainableWitness::canonical(1);
    let back: ChainableWitness = from_json(&to_json(&w))?;
    println!("witness round trip: {}", back == w);

    match from_json::<StepFn>("{\"levels\": [[{\"kind\": \"open\", \"a\": \"1/2\"}]]}") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
