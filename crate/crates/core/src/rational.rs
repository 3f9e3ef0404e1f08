//! Exact rational numbers and the handful of integer combinatorics helpers
//! the rest of the crate builds on.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Error returned when a fraction string cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed fraction {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"num/den"` rendering; the denominator is always written,
/// even when it is 1.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Compact rendering for tables: integers drop the `/1`.
pub struct Compact<'a>(pub &'a Rational);

impl fmt::Display for Compact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `n!` as a bignum.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient via the multiplicative formula. Returns 0 for
/// `k < 0` or `k > n` (with `n >= 0`), matching the usual convention for
/// sums that run past the edge of Pascal's triangle.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i) before the update
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Natural logarithm of a positive rational, accurate for values far
/// outside the `f64` range.
pub fn ln_rational(x: &Rational) -> f64 {
    debug_assert!(x.is_positive());
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

pub fn ln_bigint(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 1000 {
        return to_f64_int(x).ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    to_f64_int(&top).ln() + shift as f64 * std::f64::consts::LN_2
}

fn to_f64_int(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Nearest `f64` to a rational, or infinity when out of range.
pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if x.is_zero() {
        return 0.0;
    }
    match x.to_f64() {
        Some(v) if v.is_finite() && v != 0.0 => v,
        _ => {
            let sign = if x.is_negative() { -1.0 } else { 1.0 };
            sign * ln_rational(&x.abs()).exp()
        }
    }
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
