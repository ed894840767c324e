//! The discrete factorization: `φ` on the grid `1/l` approximated by `ψθ`
//! through a finite direct sum, with `θ(x) ≪ θ(y)`.

use lscu::chainable::{construct_factorization, verify_factorization};
use lscu::morphisms::fixtures::identity;
use lscu::morphisms::{GridBasicElement, MultiGridMorphism};

fn main() -> lscu::Result<()> {
    let l = 2;
    let phi = MultiGridMorphism::single(identity(4));
    let elem = |i| GridBasicElement::zero(l, 1).with(0, i, 1);
    let (x, x_prime, y) = (elem(Some(1)), elem(Some(0)), elem(None));
    let (f, w) = construct_factorization(&phi, l, &x, &x_prime, &y)?;
    println!("θ: Lsc → Lsc^{}", f.theta.target_arity());
    for (k, part) in w.parts.iter().enumerate() {
        println!("  subset {k} over X_{}, ψ_{k} at N = {}", part.chain.n, f.psi.sources[k].n);
    }
    println!("conditions (i)–(iii): {}", verify_factorization(&phi, l, &x, &y, &f)?);
    Ok(())
}
