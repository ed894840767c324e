//! Distance brackets, margins for a way-below pair, composition moduli and
//! the bound from a Cauchy prefix to its limit.

use lscu::format::{parse_stepfn, stepfn_text};
use lscu::morphisms::fixtures::{identity, shifted};
use lscu::morphisms::{cauchy_limit_bound, composition_modulus, distance_bracket, margin_for_pair, EpsSchedule, MultiGridMorphism};
use lscu::rational::{fmt_q, q};

fn main() -> lscu::Result<()> {
    let phi = identity(8);
    for c in 0..3 {
        let b = distance_bracket(&MultiGridMorphism::single(phi.clone()), &MultiGridMorphism::single(shifted(&phi, c)))?;
        println!("shift {c}: {} ≤ d ≤ {}", fmt_q(&b.lo), fmt_q(&b.hi));
    }

    let m = margin_for_pair(&phi, &parse_stepfn("(3/4,1]")?, &parse_stepfn("(1/4,1]")?)?;
    println!("margin ε = {}, f″ = {}", fmt_q(&m.eps), stepfn_text(&m.mid));
    println!("modulus for ε = 1/2: {}", fmt_q(&composition_modulus(&phi, &q(1, 2))?));

    let prefix: Vec<_> = [identity(4), identity(8), identity(16)].into_iter().map(MultiGridMorphism::single).collect();
    let eps = EpsSchedule::geometric(q(1, 2), q(1, 2), 2)?;
    let (_, bound) = cauchy_limit_bound(&prefix, &eps)?;
    println!("distance to the limit ≤ {}", fmt_q(&bound));
    Ok(())
}
