//! Relations `q ≺ t` in `X_n` turned into step functions `f ≪ g` that `ρ_m`
//! maps around `F(q)` and `F(t)`.

use lscu::chainable::{check_prec_convert, prec_convert};
use lscu::format::stepfn_text;
use lscu::rational::fmt_q;
use lscu::XnElem;

fn main() -> lscu::Result<()> {
    let n = 4;
    let fam = vec![
        (XnElem::parse(n, "(1,2)")?, XnElem::parse(n, "(0,3)")?),
        (XnElem::parse(n, "(1,2)+(3,4)")?, XnElem::parse(n, "(0,inf)")?),
    ];
    let out = prec_convert(n, &fam)?;
    println!("ε = {}, m = {}", fmt_q(&out.eps), out.m);
    for ((q, t), (f, g)) in fam.iter().zip(&out.pairs) {
        println!("{q} ≺ {t}: f = {}, g = {}", stepfn_text(f), stepfn_text(g));
    }
    println!("post-check: {}", check_prec_convert(n, &fam, &out)?);
    Ok(())
}
