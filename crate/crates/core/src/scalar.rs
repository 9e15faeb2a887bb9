//! Exact rational scalars shared by every symbolic path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den`; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, k| acc * int(k as i64))
}

pub fn to_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails when numerator or denominator overflows
        let n = s.numer().to_f64().unwrap_or(f64::NAN);
        let d = s.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::Semantic(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Scalar::new(num, den))
}

/// Serialized form used by the JSON interfaces: always `"p/q"`.
pub fn to_pq(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Human-readable form: `p` for integers, `p/q` otherwise.
pub fn display(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}
