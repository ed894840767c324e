//! Exchange certificates: every element of `X_n` rewrites to the canonical
//! `q_F` of its image.

use lscu::format::stepfn_text;
use lscu::xn_monoid::{canonical_qf, check_exchange_certificate, feval, simeq_certificate, simeq_path};
use lscu::XnElem;

fn main() -> lscu::Result<()> {
    let w = XnElem::parse(4, "(0,2)+(1,3)+(-inf,1)+(2,inf)")?;
    let f = feval(&w);
    println!("w = {w}, F(w) = {}", stepfn_text(&f));
    let steps = simeq_certificate(&w);
    for s in &steps {
        println!("  {}+{} ≈ {}+{}", s.from[0], s.from[1], s.to[0], s.to[1]);
    }
    println!("certificate valid: {}", check_exchange_certificate(&w, &steps));
    println!("q_F = {}", canonical_qf(&f, 4)?);

    let (a, b) = (XnElem::parse(4, "(0,2)+(1,3)")?, XnElem::parse(4, "(0,3)+(1,2)")?);
    let path = simeq_path(&a, &b)?.expect("equal images");
    println!("{a} ≃ {b} in {} step(s)", path.len());
    Ok(())
}
