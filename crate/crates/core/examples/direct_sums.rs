//! Tuples of step functions, compacts and common compact divisors.

use lscu::format::{elem_text, parse_elem};
use lscu::semigroup::{common_compact_divisor, subtract_from_compact};
use lscu::SemigroupElem;

fn main() -> lscu::Result<()> {
    let x = parse_elem("(1/2,1] | [0,1/3)")?;
    let y = parse_elem("[0,1] | [0,1/2)")?;
    println!("x = {}, y = {}", elem_text(&x), elem_text(&y));
    println!("x ≪ y: {}", x.ll(&y)?);

    let p = SemigroupElem::compact(&[2, 1]);
    println!("p = {}, compact: {}", elem_text(&p), p.is_compact());
    println!("p ⊖ x = {}", elem_text(&subtract_from_compact(&p, &x)?));

    for list in [vec![[2, 4], [1, 2]], vec![[1, 0], [0, 1]]] {
        let ps: Vec<_> = list.iter().map(|k| SemigroupElem::compact(k)).collect();
        match common_compact_divisor(&ps)? {
            Some((e, ks)) => println!("{list:?}: e = {}, multiples {ks:?}", elem_text(&e)),
            None => println!("{list:?}: no common compact divisor"),
        }
    }
    Ok(())
}
