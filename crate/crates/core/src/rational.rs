//! The exact scalar type and its textual form.
//!
//! Rationals serialize as reduced `"a/b"` strings. Integers are accepted as
//! bare `"a"` on input but are always written back as `"a/1"`.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_integer(s: &str, what: &str, original: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad {what} in rational {original:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad {what} in rational {original:?}")))
}

/// Parses `"a/b"` or `"a"`. The denominator must be a positive integer;
/// the value is reduced to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_integer(t, "integer", s)?)),
        Some((n, d)) => {
            let numer = parse_integer(n, "numerator", s)?;
            if d.starts_with('-') {
                return Err(Error::Parse(format!("negative denominator in {s:?}")));
            }
            let denom = parse_integer(d, "denominator", s)?;
            if denom.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Least common multiple of the reduced denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction. Returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let l = denominator_lcm(v);
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = scaled
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(scaled.into_iter().map(|x| x / &g).collect())
}

pub fn dot_int(a: &[BigInt], x: &[Rational]) -> Rational {
    a.iter()
        .zip(x)
        .fold(Rational::zero(), |acc, (ai, xi)| acc + xi * ai)
}

pub fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter()
        .zip(x)
        .fold(Rational::zero(), |acc, (ai, xi)| acc + ai * xi)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
