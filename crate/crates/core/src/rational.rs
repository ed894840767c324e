//! Exact rationals. Everything in the crate is built on [`Q`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = num_rational::BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `i / n` as a rational.
pub fn grid(i: u64, n: u64) -> Q {
    Q::new(BigInt::from(i), BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// If `x * n` is an integer in `0..=n`, returns it.
pub fn grid_index(x: &Q, n: u64) -> Option<u64> {
    let y = x * Q::from_integer(BigInt::from(n));
    if !y.denom().is_one() || y.is_negative() {
        return None;
    }
    y.numer().to_u64().filter(|&k| k <= n)
}

pub fn lcm_of_denoms<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn to_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}

/// Smallest positive difference between distinct values, if any.
pub fn min_gap(values: &mut Vec<Q>) -> Option<Q> {
    values.sort();
    values.dedup();
    values
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
}

pub fn half(x: &Q) -> Q {
    x / int(2)
}
