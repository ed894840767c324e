//! The order `≺` on `X_n` with partition certificates, and the pair whose
//! images are way below each other although `≺` fails.

use lscu::format::stepfn_text;
use lscu::xn_monoid::{feval, prec, prec_oracle};
use lscu::XnElem;

fn main() -> lscu::Result<()> {
    let cases = [("(1,2)+(2,3)", "(0,4)"), ("(1,2)", "(0,3)+(0,4)"), ("(1,2)+(3,4)", "(0,5)"), ("(-inf,inf)", "(-inf,inf)")];
    for (w, v) in cases {
        let (w, v) = (XnElem::parse(5, w)?, XnElem::parse(5, v)?);
        match prec(&w, &v)? {
            Some(cert) => {
                println!("{w} ≺ {v}");
                for (t, g) in cert.targets.iter().zip(&cert.groups) {
                    let g: Vec<String> = g.iter().map(|p| p.to_string()).collect();
                    println!("  {t} ⊃ {}", if g.is_empty() { "∅".into() } else { g.join(" ≺ ") });
                }
            }
            None => println!("{w} ⊀ {v} (oracle agrees: {})", !prec_oracle(&w, &v)?),
        }
    }

    let w = XnElem::parse(4, "(1,2)+(2,3)")?;
    let v = XnElem::parse(4, "(0,4)")?;
    println!(
        "F(w) = {} ≪ F(v) = {}: {}, yet w ≺ v: {}",
        stepfn_text(&feval(&w)),
        stepfn_text(&feval(&v)),
        feval(&w).ll(&feval(&v)),
        prec(&w, &v)?.is_some()
    );
    Ok(())
}
