//! Level sets, `≤` and `≪`, retractions and the lattice operations.

use lscu::format::{parse_stepfn, stepfn_text};
use lscu::rational::q;
use lscu::exactset_stepfn::basic_reduce;

fn main() -> lscu::Result<()> {
    let f = parse_stepfn("(1/4,1] + (1/2,3/4)")?;
    let g = parse_stepfn("[0,1] + (1/8,7/8)")?;
    println!("f = {}", stepfn_text(&f));
    println!("g = {}", stepfn_text(&g));
    println!("f ≤ g: {}, f ≪ g: {}", f.leq(&g), f.ll(&g));

    println!("f + g = {}", stepfn_text(&f.add(&g)));
    let (sup, inf) = f.sup_inf(&g);
    println!("f ∨ g = {}, f ∧ g = {}", stepfn_text(&sup), stepfn_text(&inf));

    let eps = q(1, 16);
    println!("R_ε f = {}", stepfn_text(&f.retract(&eps)));
    println!("N_ε f = {}", stepfn_text(&f.neighborhood(&eps)));

    let (x, y) = basic_reduce(&f, &g)?;
    println!("basic reduction: {} ≪ {}", stepfn_text(&x), stepfn_text(&y));
    Ok(())
}
