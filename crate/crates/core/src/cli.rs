//! The `lscu` command line: one verb per operation, inputs inline or from
//! files, a single report per invocation.
//!
//! Exit codes: `0` the relation holds or the object verifies, `1` it fails,
//! `2` the input could not be parsed or violates a precondition.

use std::ffi::OsString;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chainable::{
    check_prec_convert, construct_factorization, construct_i0_witness_compact, construct_i0_witness_lsc,
    construct_i_witness, prec_convert, rho_build, single_subset_header, tebelow_check, verify_chainable,
    verify_factorization, verify_i0_witness, verify_i_witness, ChainableWitness, Factorization, I0Problem,
    I0Witness, IWitness,
};
use crate::error::{Error, Result};
use crate::exactset_stepfn::StepFn;
use crate::format::{elem_text, from_json, parse_compact_list, parse_elem, parse_stepfn, stepfn_text};
use crate::morphisms::{
    cauchy_limit_bound, composition_modulus, distance_bracket, lift_from_chain, margin_for_pair, validate,
    EpsSchedule, GridBasicElement, MultiGridMorphism, Report,
};
use crate::rational::{fmt_q, parse_q, Q};
use crate::semigroup::SemigroupElem;
use crate::xn_monoid::{
    canonical_qf, check_exchange_certificate, feval, in_ln0, prec, prec_oracle, replay_certificate, simeq_path,
    ExchangeStep, PartitionCert, XnElem, XnPair,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rel {
    Leq,
    Ll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Lsc,
    Compact,
}

/// Operands are inline text, a path to an existing file, or `@path`.
#[derive(Parser, Debug)]
#[command(name = "lscu", version, about = "Exact step-function Cuntz semigroups, X_n and chainable witnesses")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// f ≤ g and f ≪ g for step functions or tuples
    Relate {
        f: String,
        g: String,
        #[arg(long, value_enum, default_value_t = Rel::Ll)]
        rel: Rel,
    },
    /// Sum of elements
    Add {
        #[arg(required = true)]
        items: Vec<String>,
    },
    /// R_ε (or N_ε with --grow) of every level
    Retract {
        f: String,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        grow: bool,
    },
    /// Canonical q_f in X_n
    Qf {
        #[arg(long)]
        n: u64,
        f: String,
    },
    /// F(x) in L_n
    Feval {
        #[arg(long)]
        n: u64,
        x: String,
    },
    /// w ≺ v with a partition certificate
    Prec {
        #[arg(long)]
        n: u64,
        w: String,
        v: String,
    },
    /// w ≺ v by exhaustive search
    PrecOracle {
        #[arg(long)]
        n: u64,
        w: String,
        v: String,
    },
    /// w ≃ v with an exchange certificate
    Simeq {
        #[arg(long)]
        n: u64,
        w: String,
        v: String,
    },
    /// Checks an exchange (list of steps) or partition certificate
    CheckCert {
        #[arg(long)]
        n: u64,
        w: String,
        cert: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Grid morphism with v_{2(j-k)} = s_k for a chain s_1 ≪ … ≪ s_j ≤ unit
    Lift {
        #[arg(long)]
        unit: String,
        #[arg(required = true)]
        chain: Vec<String>,
    },
    /// Certificate conditions (a)–(d)
    ValidateMorphism { phi: String },
    /// Bracket on the distance between two morphisms
    Dist {
        phi: String,
        psi: String,
        #[arg(long)]
        eps: Option<String>,
    },
    /// ε and f″ for a pair f′ ≪ f
    Margin {
        phi: String,
        #[arg(long, default_value_t = 0)]
        source: usize,
        f_in: String,
        f: String,
    },
    /// ε′ with d(θ,θ′) < ε′ ⟹ d(φθ,φθ′) < ε
    CompModulus {
        theta: String,
        #[arg(long)]
        eps: String,
    },
    /// outer ∘ inner
    Compose { outer: String, inner: String },
    /// Distance bound from a prefix of a Cauchy sequence to its limit
    CauchyBound {
        #[arg(long, value_delimiter = ',')]
        eps: Vec<String>,
        #[arg(long, default_value = "0")]
        tail: String,
        #[arg(required = true)]
        prefix: Vec<String>,
    },
    /// Witness conditions (i)–(v)
    VerifyChainable { witness: String },
    /// ρ_m for a witness
    BuildRho {
        witness: String,
        #[arg(long)]
        m: u64,
    },
    /// The sandwich relations around F for ρ_m
    Tebelow {
        witness: String,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        eps: String,
    },
    /// Retractions f_i, g_i for relations q_i ≺ t_i, given as `q < t; …`
    PrecConvert {
        #[arg(long)]
        n: u64,
        family: String,
    },
    VerifyI0 { problem: String, witness: String },
    ConstructI0 {
        problem: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    VerifyI { problem: String, witness: String },
    ConstructI { problem: String },
    /// Common compact e with p_s = k_s·e
    Divisor { compacts: String },
    /// Conditions (i)–(iii) of a factorization for an instance
    VerifyFact { instance: String, factorization: String },
    ConstructFact { instance: String },
}

/// `φ`, `l` and `x ≪ x′`, `φ(x′) ≪ φ(y)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactInstance {
    pub phi: MultiGridMorphism,
    pub l: u64,
    pub x: GridBasicElement,
    pub x_prime: GridBasicElement,
    pub y: GridBasicElement,
}

struct Outcome {
    holds: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn done(text: impl Into<String>, json: Value) -> Outcome {
        Outcome { holds: true, text: text.into(), json }
    }

    fn decide(holds: bool, text: impl Into<String>, json: Value) -> Outcome {
        Outcome { holds, text: text.into(), json }
    }

    fn report(r: &Report, what: &str) -> Outcome {
        let text = if r.ok() { format!("{what}: ok") } else { format!("{what}: FAILED\n{r}") };
        Outcome { holds: r.ok(), text, json: json!({ "violations": r.violations }) }
    }
}

fn input(arg: &str) -> Result<String> {
    let path = arg.strip_prefix('@').map(Path::new).or_else(|| Some(Path::new(arg)).filter(|p| p.is_file()));
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::Parse { pos: p.display().to_string(), msg: e.to_string() }),
        None => Ok(arg.to_string()),
    }
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn elem(arg: &str) -> Result<SemigroupElem> {
    let t = input(arg)?;
    if !is_json(&t) {
        return parse_elem(&t);
    }
    let v: Value = from_json(&t)?;
    if v.get("levels").is_some() {
        Ok(SemigroupElem::single(from_json(&t)?))
    } else {
        from_json(&t)
    }
}

fn stepfn(arg: &str) -> Result<StepFn> {
    let t = input(arg)?;
    if is_json(&t) {
        from_json(&t)
    } else {
        parse_stepfn(&t)
    }
}

fn xn(n: u64, arg: &str) -> Result<XnElem> {
    let t = input(arg)?;
    if !is_json(&t) {
        return XnElem::parse(n, &t);
    }
    let x: XnElem = from_json(&t)?;
    if x.n() != n {
        return Err(Error::NMismatch(n, x.n()));
    }
    Ok(x)
}

fn rational(arg: &str) -> Result<Q> {
    parse_q(arg).map_err(|msg| Error::Parse { pos: format!("{arg:?}"), msg })
}

fn json_file<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T> {
    from_json(&input(arg)?)
}

/// A multi-source certificate, or a single one.
fn morphism(arg: &str) -> Result<MultiGridMorphism> {
    let t = input(arg)?;
    let v: Value = from_json(&t)?;
    if v.get("sources").is_some() {
        from_json(&t)
    } else {
        Ok(MultiGridMorphism::single(from_json(&t)?))
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("values serialize")
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    targets: Vec<XnPair>,
    groups: Vec<Vec<XnPair>>,
}

fn partition_json(c: &PartitionCert) -> Value {
    to_value(&RawPartition { targets: c.targets.clone(), groups: c.groups.clone() })
}

fn pair_list(ps: &[XnPair]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ≺ ")
}

fn steps_text(steps: &[ExchangeStep]) -> String {
    steps
        .iter()
        .enumerate()
        .map(|(k, s)| format!("  {}. {}+{} ≈ {}+{}", k + 1, s.from[0], s.from[1], s.to[0], s.to[1]))
        .collect::<Vec<_>>()
        .join("\n")
}

fn family(n: u64, text: &str) -> Result<Vec<(XnElem, XnElem)>> {
    let t = input(text)?;
    if t.trim_start().starts_with('[') {
        let raw: Vec<(XnElem, XnElem)> = from_json(&t)?;
        if let Some((q, _)) = raw.iter().find(|(q, t)| q.n() != n || t.n() != n) {
            return Err(Error::NMismatch(n, q.n()));
        }
        return Ok(raw);
    }
    t.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|rel| {
            let (q, t) = rel.split_once('<').ok_or_else(|| Error::Parse {
                pos: format!("{rel:?}"),
                msg: "expected q < t".into(),
            })?;
            Ok((XnElem::parse(n, q)?, XnElem::parse(n, t)?))
        })
        .collect()
}

fn execute(verb: &Verb) -> Result<Outcome> {
    Ok(match verb {
        Verb::Relate { f, g, rel } => {
            let (f, g) = (elem(f)?, elem(g)?);
            let (leq, ll) = (f.leq(&g)?, f.ll(&g)?);
            let holds = match rel {
                Rel::Leq => leq,
                Rel::Ll => ll,
            };
            Outcome::decide(holds, format!("f ≤ g: {leq}\nf ≪ g: {ll}"), json!({ "leq": leq, "ll": ll }))
        }
        Verb::Add { items } => {
            let xs = items.iter().map(|a| elem(a)).collect::<Result<Vec<_>>>()?;
            let sum = SemigroupElem::sum(xs[0].arity(), &xs)?;
            Outcome::done(elem_text(&sum), to_value(&sum))
        }
        Verb::Retract { f, eps, grow } => {
            let (f, eps) = (elem(f)?, rational(eps)?);
            if eps <= crate::rational::zero() {
                return Err(Error::Precondition("ε > 0".into()));
            }
            let parts = f.parts.iter().map(|p| if *grow { p.neighborhood(&eps) } else { p.retract(&eps) }).collect();
            let out = SemigroupElem { parts };
            Outcome::done(elem_text(&out), to_value(&out))
        }
        Verb::Qf { n, f } => {
            let f = stepfn(f)?;
            let q = canonical_qf(&f, *n)?;
            let l0 = in_ln0(&f, *n);
            Outcome::done(format!("{q}\nin L_{n}^0: {l0}"), json!({ "qf": to_value(&q), "in_l0": l0 }))
        }
        Verb::Feval { n, x } => {
            let f = feval(&xn(*n, x)?);
            Outcome::done(stepfn_text(&f), to_value(&f))
        }
        Verb::Prec { n, w, v } => {
            let (w, v) = (xn(*n, w)?, xn(*n, v)?);
            match prec(&w, &v)? {
                Some(c) => {
                    let lines: Vec<String> = c
                        .targets
                        .iter()
                        .zip(&c.groups)
                        .map(|(t, g)| format!("  {t}: {}", if g.is_empty() { "∅".into() } else { pair_list(g) }))
                        .collect();
                    Outcome::decide(true, format!("w ≺ v\n{}", lines.join("\n")), partition_json(&c))
                }
                None => Outcome::decide(false, "no partition", json!({ "certificate": null })),
            }
        }
        Verb::PrecOracle { n, w, v } => {
            let holds = prec_oracle(&xn(*n, w)?, &xn(*n, v)?)?;
            Outcome::decide(holds, format!("w ≺ v: {holds}"), json!({ "prec": holds }))
        }
        Verb::Simeq { n, w, v } => {
            let (w, v) = (xn(*n, w)?, xn(*n, v)?);
            match simeq_path(&w, &v)? {
                Some(steps) => Outcome::decide(
                    true,
                    format!("w ≃ v in {} step(s)\n{}", steps.len(), steps_text(&steps)),
                    json!({ "certificate": to_value(&steps) }),
                ),
                None => Outcome::decide(false, "not equivalent", json!({ "certificate": null })),
            }
        }
        Verb::CheckCert { n, w, cert, target } => {
            let w = xn(*n, w)?;
            let t = input(cert)?;
            let v: Value = from_json(&t)?;
            if v.is_array() {
                let steps: Vec<ExchangeStep> = from_json(&t)?;
                let valid = check_exchange_certificate(&w, &steps);
                let end = replay_certificate(&w, &steps);
                let reaches = match (target, &end) {
                    (Some(t), Some(e)) => Some(&xn(*n, t)? == e),
                    _ => None,
                };
                let holds = valid && reaches != Some(false);
                let end_text = end.as_ref().map_or("-".to_string(), |e| e.to_string());
                Outcome::decide(
                    holds,
                    format!("exchange certificate valid: {valid}\nends at {end_text}"),
                    json!({ "valid": valid, "end": end.as_ref().map(to_value), "reaches_target": reaches }),
                )
            } else {
                let raw: RawPartition = from_json(&t)?;
                let target = target.as_ref().ok_or_else(|| Error::Precondition("partition certificates need --target".into()))?;
                let c = PartitionCert { targets: raw.targets, groups: raw.groups };
                let holds = c.check(&w, &xn(*n, target)?);
                Outcome::decide(holds, format!("partition certificate valid: {holds}"), json!({ "valid": holds }))
            }
        }
        Verb::Lift { unit, chain } => {
            let chain = chain.iter().map(|a| elem(a)).collect::<Result<Vec<_>>>()?;
            let phi = lift_from_chain(&chain, &elem(unit)?)?;
            Outcome::done(format!("N = {}, slack = {}, validated", phi.n, phi.slack), to_value(&phi))
        }
        Verb::ValidateMorphism { phi } => {
            let m = morphism(phi)?;
            let r = if m.sources.len() == 1 { validate(&m.sources[0]) } else { m.validate() };
            Outcome::report(&r, "certificate")
        }
        Verb::Dist { phi, psi, eps } => {
            let b = distance_bracket(&morphism(phi)?, &morphism(psi)?)?;
            let text = format!("{} ≤ d ≤ {} (grid 1/{})", fmt_q(&b.lo), fmt_q(&b.hi), b.grid);
            match eps {
                Some(e) => {
                    let e = rational(e)?;
                    Outcome::decide(b.hi < e, format!("{text}\nd < {}: {}", fmt_q(&e), b.hi < e), to_value(&b))
                }
                None => Outcome::done(text, to_value(&b)),
            }
        }
        Verb::Margin { phi, source, f_in, f } => {
            let m = morphism(phi)?;
            let src = m.sources.get(*source).ok_or_else(|| Error::Precondition(format!("no source {source}")))?;
            let out = margin_for_pair(src, &stepfn(f_in)?, &stepfn(f)?)?;
            Outcome::done(format!("ε = {}\nf″ = {}", fmt_q(&out.eps), stepfn_text(&out.mid)), to_value(&out))
        }
        Verb::CompModulus { theta, eps } => {
            let m = morphism(theta)?;
            let eps = rational(eps)?;
            let mut best = eps.clone();
            for src in &m.sources {
                best = best.min(composition_modulus(src, &eps)?);
            }
            Outcome::done(format!("ε′ = {}", fmt_q(&best)), json!({ "eps": fmt_q(&best) }))
        }
        Verb::Compose { outer, inner } => {
            let c = crate::morphisms::compose(&morphism(outer)?, &morphism(inner)?)?;
            Outcome::done(format!("{} source(s), validated", c.sources.len()), to_value(&c))
        }
        Verb::CauchyBound { eps, tail, prefix } => {
            let terms = eps.iter().map(|e| rational(e)).collect::<Result<Vec<_>>>()?;
            let schedule = EpsSchedule { terms, tail: rational(tail)? };
            let prefix = prefix.iter().map(|a| morphism(a)).collect::<Result<Vec<_>>>()?;
            let (last, bound) = cauchy_limit_bound(&prefix, &schedule)?;
            Outcome::done(
                format!("d(φ_k, lim) ≤ {}", fmt_q(&bound)),
                json!({ "bound": fmt_q(&bound), "last": to_value(&last) }),
            )
        }
        Verb::VerifyChainable { witness } => {
            let w: ChainableWitness = json_file(witness)?;
            Outcome::report(&verify_chainable(&w), "chainable witness")
        }
        Verb::BuildRho { witness, m } => {
            let w: ChainableWitness = json_file(witness)?;
            let rho = rho_build(&w, *m)?;
            Outcome::done(format!("ρ_{m} at resolution {}, validated", rho.n), to_value(&rho))
        }
        Verb::Tebelow { witness, m, eps } => {
            let w: ChainableWitness = json_file(witness)?;
            Outcome::report(&tebelow_check(&w, *m, &rational(eps)?)?, "sandwich relations")
        }
        Verb::PrecConvert { n, family: fam } => {
            let fam = family(*n, fam)?;
            let out = prec_convert(*n, &fam)?;
            let r = check_prec_convert(*n, &fam, &out)?;
            let mut text = format!("ε = {}, m = {}", fmt_q(&out.eps), out.m);
            for (k, (f, g)) in out.pairs.iter().enumerate() {
                text += &format!("\n  {k}: f = {}  g = {}", stepfn_text(f), stepfn_text(g));
            }
            if !r.ok() {
                text += &format!("\n{r}");
            }
            Outcome::decide(r.ok(), text, json!({ "result": to_value(&out), "violations": r.violations }))
        }
        Verb::VerifyI0 { problem, witness } => {
            let p: I0Problem = json_file(problem)?;
            let w: I0Witness = json_file(witness)?;
            Outcome::report(&verify_i0_witness(&p, &w), "I0 witness")
        }
        Verb::ConstructI0 { problem, method } => {
            let p: I0Problem = json_file(problem)?;
            let compact = p.z.iter().flatten().all(SemigroupElem::is_compact);
            let w = match method {
                Method::Lsc => construct_i0_witness_lsc(&p)?,
                Method::Compact => construct_i0_witness_compact(&p)?,
                Method::Auto if compact || p.arity() != 1 => construct_i0_witness_compact(&p)?,
                Method::Auto => construct_i0_witness_lsc(&p)?,
            };
            Outcome::done(format!("witness over X_{}, k = {:?}, verified", w.chain.n, w.ks), to_value(&w))
        }
        Verb::VerifyI { problem, witness } => {
            let p: I0Problem = json_file(problem)?;
            let w: IWitness = json_file(witness)?;
            Outcome::report(&verify_i_witness(&p, &w), "I witness")
        }
        Verb::ConstructI { problem } => {
            let p: I0Problem = json_file(problem)?;
            let w = construct_i_witness(&p)?;
            let ns: Vec<u64> = w.parts.iter().map(|x| x.chain.n).collect();
            Outcome::done(format!("{} chainable subset(s) over X_n, n = {ns:?}, verified", w.parts.len()), to_value(&w))
        }
        Verb::Divisor { compacts } => {
            let ps = parse_compact_list(&input(compacts)?)?;
            match single_subset_header(&ps)? {
                Some((e, ks)) => {
                    Outcome::decide(true, format!("e = {e}, k = {ks:?}"), json!({ "e": to_value(&e), "ks": ks }))
                }
                None => Outcome::decide(false, "none", json!({ "e": null })),
            }
        }
        Verb::VerifyFact { instance, factorization } => {
            let inst: FactInstance = json_file(instance)?;
            let f: Factorization = json_file(factorization)?;
            Outcome::report(&verify_factorization(&inst.phi, inst.l, &inst.x, &inst.y, &f)?, "factorization")
        }
        Verb::ConstructFact { instance } => {
            let inst: FactInstance = json_file(instance)?;
            let (f, w) = construct_factorization(&inst.phi, inst.l, &inst.x, &inst.x_prime, &inst.y)?;
            Outcome::done(
                format!("θ into Lsc^{}, ψ with {} source(s), verified", f.theta.target_arity(), f.psi.sources.len()),
                json!({ "theta": to_value(&f.theta), "psi": to_value(&f.psi), "witness": to_value(&w) }),
            )
        }
    })
}

/// Parses arguments, runs the verb and prints one report; returns the exit code.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.verb) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => {
                    let doc = json!({ "holds": out.holds, "result": out.json });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("values serialize"));
                }
            }
            if out.holds {
                0
            } else {
                1
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", json!({ "error": e.to_string() })),
            }
            2
        }
    }
}
