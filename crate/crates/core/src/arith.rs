//! Exact integer and rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(x: i64) -> Int {
    BigInt::from(x)
}

pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(x: &Int) -> Rat {
    BigRational::from_integer(x.clone())
}

/// Parses `p/q` or `p` into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected a rational `p/q` or `p`, got `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical `p/q` rendering; the denominator is always printed.
pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Canonical rendering without a unit denominator, for tables.
pub fn fmt_rat_short(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        fmt_rat(x)
    }
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Int>) -> Int {
    xs.into_iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Integer quotient if `den` divides `num` exactly.
pub fn exact_div(num: &Int, den: &Int) -> Option<Int> {
    if den.is_zero() {
        return None;
    }
    let (q, r) = num.div_rem(den);
    r.is_zero().then_some(q)
}

/// Returns the integer part of a rational that happens to be integral.
pub fn as_int(x: &Rat) -> Option<Int> {
    x.is_integer().then(|| x.to_integer())
}

/// `floor(sqrt(x))` for a non-negative rational.
pub fn floor_sqrt(x: &Rat) -> Int {
    if !x.is_positive() {
        return Int::zero();
    }
    x.floor().to_integer().sqrt()
}

/// Exact square root when `x` is a perfect square.
pub fn exact_sqrt(x: &Int) -> Option<Int> {
    if x.is_negative() {
        return None;
    }
    let s = x.sqrt();
    (&s * &s == *x).then_some(s)
}

pub fn sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn sign_int(x: &Int) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
