//! JSON exchange format and the short text syntax shared with the CLI.
//!
//! Rationals are `"p/q"` strings. Intervals are
//! `{"kind":"open","a":"1/4","b":"1/2"}`, step functions `{"levels":[[…],…]}`,
//! elements `{"parts":[…]}`, and `X_n` elements `{"n":4,"pairs":[["-inf","2"]]}`.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactset_stepfn::{Interval, OpenSet, StepFn};
use crate::rational::{fmt_q, parse_q, Q};
use crate::semigroup::SemigroupElem;
use crate::xn_monoid::{Omega, XnElem, XnPair};

/// Serde adapter for `Q` as a `"p/q"` string.
pub mod qstr {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_q(&s).map_err(de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(crate::rational::int(n.as_i64().unwrap())),
            other => Err(de::Error::custom(format!("expected a rational string, found {other}"))),
        }
    }
}

pub mod qvec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| parse_q(s).map_err(de::Error::custom)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<String>,
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = match self {
            Interval::Full => RawInterval { kind: "full".into(), a: None, b: None },
            Interval::Left(b) => RawInterval { kind: "left".into(), a: None, b: Some(fmt_q(b)) },
            Interval::Right(a) => RawInterval { kind: "right".into(), a: Some(fmt_q(a)), b: None },
            Interval::Open(a, b) => RawInterval { kind: "open".into(), a: Some(fmt_q(a)), b: Some(fmt_q(b)) },
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawInterval::deserialize(d)?;
        let get = |x: &Option<String>, name: &str| -> std::result::Result<Q, D::Error> {
            let s = x.as_ref().ok_or_else(|| de::Error::custom(format!("{} interval needs {name:?}", raw.kind)))?;
            parse_q(s).map_err(de::Error::custom)
        };
        let i = match raw.kind.as_str() {
            "full" => Interval::Full,
            "left" => Interval::Left(get(&raw.b, "b")?),
            "right" => Interval::Right(get(&raw.a, "a")?),
            "open" => Interval::Open(get(&raw.a, "a")?, get(&raw.b, "b")?),
            k => return Err(de::Error::custom(format!("unknown interval kind {k:?}"))),
        };
        i.check().map_err(de::Error::custom)?;
        Ok(i)
    }
}

impl Serialize for OpenSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.components())
    }
}

impl<'de> Deserialize<'de> for OpenSet {
    /// Components may be given in any order and may overlap; they are united.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let comps: Vec<Interval> = Vec::deserialize(d)?;
        Ok(OpenSet::from_intervals(comps))
    }
}

#[derive(Serialize, Deserialize)]
struct RawStepFn {
    levels: Vec<OpenSet>,
}

impl Serialize for StepFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawStepFn { levels: self.levels().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StepFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawStepFn::deserialize(d)?;
        StepFn::from_levels(raw.levels).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawElem {
    parts: Vec<StepFn>,
}

impl Serialize for SemigroupElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawElem { parts: self.parts.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SemigroupElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawElem::deserialize(d)?;
        SemigroupElem::new(raw.parts).map_err(de::Error::custom)
    }
}

impl Serialize for Omega {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Omega {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => Omega::parse(&s).map_err(de::Error::custom),
            serde_json::Value::Number(n) if n.is_u64() => Ok(Omega::Fin(n.as_u64().unwrap())),
            other => Err(de::Error::custom(format!("expected an Ω element, found {other}"))),
        }
    }
}

impl Serialize for XnPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

impl<'de> Deserialize<'de> for XnPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[Omega; 2]>::deserialize(d)?;
        if lo >= hi {
            return Err(de::Error::custom(format!("({lo},{hi}) is not a pair")));
        }
        Ok(XnPair { lo, hi })
    }
}

#[derive(Serialize, Deserialize)]
struct RawXn {
    n: u64,
    pairs: Vec<XnPair>,
}

impl Serialize for XnElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawXn { n: self.n(), pairs: self.pairs().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for XnElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawXn::deserialize(d)?;
        XnElem::new(raw.n, raw.pairs).map_err(de::Error::custom)
    }
}

/// Parses JSON, reporting line and column on failure.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: format!("line {}, column {}", e.line(), e.column()),
        msg: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("values serialize")
}

/// Compact vectors in the text syntax `"[(1,0),(0,1)]"`.
pub fn parse_compact_list(text: &str) -> Result<Vec<SemigroupElem>> {
    let err = |pos: usize, msg: &str| Error::Parse { pos: format!("column {}", pos + 1), msg: msg.into() };
    let t = text.trim();
    let body = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| err(0, "expected [ … ]"))?;
    let mut out = Vec::new();
    let mut rest = body;
    let mut pos = text.find('[').unwrap_or(0) + 1;
    loop {
        let skip = rest.len() - rest.trim_start().len();
        rest = rest.trim_start();
        pos += skip;
        if rest.is_empty() {
            break;
        }
        let close = rest.find(')').ok_or_else(|| err(pos, "unclosed tuple"))?;
        let tuple = rest[..close].strip_prefix('(').ok_or_else(|| err(pos, "expected ("))?;
        let ks = tuple
            .split(',')
            .map(|k| k.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| err(pos, "entries must be non-negative integers"))?;
        out.push(SemigroupElem::new(ks.iter().map(|&k| StepFn::constant(k)).collect())?);
        rest = &rest[close + 1..];
        pos += close + 1;
        let skip = rest.len() - rest.trim_start().len();
        rest = rest.trim_start();
        pos += skip;
        if let Some(r) = rest.strip_prefix(',') {
            rest = r;
            pos += 1;
        } else if !rest.is_empty() {
            return Err(err(pos, "expected , between tuples"));
        }
    }
    Ok(out)
}

/// One interval in the text syntax: `[0,1]`, `[0,b)`, `(a,1]` or `(a,b)`.
pub fn parse_interval(text: &str) -> std::result::Result<Interval, String> {
    let t = text.trim();
    let (open_lo, rest) = match t.chars().next() {
        Some('(') => (true, &t[1..]),
        Some('[') => (false, &t[1..]),
        _ => return Err(format!("expected ( or [ in {t:?}")),
    };
    let (open_hi, body) = match rest.chars().last() {
        Some(')') => (true, &rest[..rest.len() - 1]),
        Some(']') => (false, &rest[..rest.len() - 1]),
        _ => return Err(format!("expected ) or ] in {t:?}")),
    };
    let (a, b) = body.split_once(',').ok_or_else(|| format!("expected a comma in {t:?}"))?;
    let (a, b) = (parse_q(a)?, parse_q(b)?);
    let i = match (open_lo, open_hi) {
        (false, false) if a == crate::rational::zero() && b == crate::rational::one() => Interval::Full,
        (false, true) if a == crate::rational::zero() => Interval::Left(b),
        (true, false) if b == crate::rational::one() => Interval::Right(a),
        (true, true) => Interval::Open(a, b),
        _ => return Err(format!("{t:?}: closed ends are only allowed at 0 and 1")),
    };
    i.check()?;
    Ok(i)
}

/// `"0"` or a sum of intervals with optional multiplicities, `"2*(1/4,1] + [0,1/2)"`.
pub fn parse_stepfn(text: &str) -> Result<StepFn> {
    let err = |pos: usize, msg: String| Error::Parse { pos: format!("column {}", pos + 1), msg };
    let t = text.trim();
    if t.is_empty() || t == "0" {
        return Ok(StepFn::zero());
    }
    let mut f = StepFn::zero();
    let mut offset = text.len() - text.trim_start().len();
    for term in t.split('+') {
        let lead = term.len() - term.trim_start().len();
        let s = term.trim();
        let digits = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
        let (k, body) = if digits == 0 {
            (1, s)
        } else {
            let k = s[..digits].parse::<usize>().map_err(|e| err(offset + lead, e.to_string()))?;
            (k, s[digits..].trim_start().strip_prefix('*').unwrap_or(&s[digits..]).trim())
        };
        let i = parse_interval(body).map_err(|m| err(offset + lead, m))?;
        f = f.add(&StepFn::indicator(i).scale(k));
        offset += term.len() + 1;
    }
    Ok(f)
}

/// Parts separated by `|`; a tuple of integers `"(2,1)"` is a compact.
pub fn parse_elem(text: &str) -> Result<SemigroupElem> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
        if !inner.is_empty() && inner.split(',').all(|k| k.trim().parse::<usize>().is_ok()) {
            let ks: Vec<usize> = inner.split(',').map(|k| k.trim().parse().unwrap()).collect();
            return Ok(SemigroupElem::compact(&ks));
        }
    }
    let parts = t.split('|').map(parse_stepfn).collect::<Result<Vec<_>>>()?;
    SemigroupElem::new(parts)
}

/// Inverse of [`parse_stepfn`]: one term per level component.
pub fn stepfn_text(f: &StepFn) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.components().map(|(_, c)| c.to_string()).collect::<Vec<_>>().join(" + ")
}

pub fn elem_text(x: &SemigroupElem) -> String {
    x.parts.iter().map(stepfn_text).collect::<Vec<_>>().join(" | ")
}
