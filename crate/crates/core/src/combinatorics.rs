//! Exact integer helpers shared by the enumerative modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational used for every bound and average.
pub type Rational = BigRational;

/// `C(n, k)`, zero when `k > n`. Fails on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = acc.gcd(&den);
        let (a, d) = (acc / g, den / g);
        acc = a
            .checked_mul(num / d)
            .ok_or(Error::Overflow("binomial"))?;
    }
    Ok(acc)
}

/// `C(n, k)` with the convention that it vanishes for negative `n` or `k`.
pub fn binomial_signed(n: i64, k: i64) -> Result<u128> {
    if n < 0 || k < 0 {
        return Ok(0);
    }
    binomial(n as u64, k as u64)
}

/// Size of the multiset space: `C(n+q-1, q-1)`.
pub fn simplex_size(n: u64, q: u64) -> Result<u128> {
    if q == 0 {
        return Ok(u128::from(n == 0));
    }
    binomial(n + q - 1, q - 1)
}

pub(crate) fn checked_add(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

pub(crate) fn checked_mul(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

pub fn rational(num: u128, den: u128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(v: u128) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// `num/den` in lowest terms; integers are rendered as `num/1`.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn to_f64(x: &Rational) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // huge operands: scale down before dividing
        let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
        let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}

pub fn one() -> Rational {
    Rational::one()
}
