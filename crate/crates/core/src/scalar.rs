//! Exact scalar abstraction.
//!
//! Every quantity in the model (item sizes, loads, profits) is carried by a
//! type implementing [`Scalar`]. The solvers compare loads against the unit
//! capacity and deduplicate states by load multisets, so the scalar must be
//! exact, totally ordered and hashable. Any `Ratio<T>` over a signed integer
//! type qualifies; floating point types deliberately do not.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub trait Scalar: Num + Clone + Ord + Hash + Debug + Display + Send + Sync + 'static {
    /// Builds `numer / denom`. Panics if `denom == 0` or the value does not
    /// fit the backing integer type.
    fn from_fraction(numer: i64, denom: i64) -> Self;

    /// Builds `numer / denom` from arbitrary-precision parts, or `None` when
    /// the value does not fit.
    fn from_big_fraction(numer: BigInt, denom: BigInt) -> Option<Self>;

    /// Largest integer not exceeding `self`.
    fn floor_big(&self) -> BigInt;

    /// Reduced numerator and (positive) denominator.
    fn to_big_fraction(&self) -> (BigInt, BigInt);

    fn to_f64(&self) -> f64;

    fn from_integer(value: i64) -> Self {
        Self::from_fraction(value, 1)
    }

    fn ceil_big(&self) -> BigInt {
        let neg = Self::zero() - self.clone();
        -neg.floor_big()
    }

    /// Parses `"p/q"`, an integer, or an exact decimal literal such as
    /// `"0.375"` or `"-2.5"`.
    fn parse_exact(text: &str) -> Result<Self, Error> {
        let (numer, denom) = parse_big_fraction(text)?;
        Self::from_big_fraction(numer, denom)
            .ok_or_else(|| Error::Parse(format!("rational `{text}` does not fit the scalar type")))
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + Hash
        + Debug
        + Display
        + ToPrimitive
        + Send
        + Sync
        + 'static
        + Into<BigInt>
        + TryFrom<BigInt>
        + TryFrom<i64>,
{
    fn from_fraction(numer: i64, denom: i64) -> Self {
        let n = T::try_from(numer).ok().expect("numerator out of range");
        let d = T::try_from(denom).ok().expect("denominator out of range");
        Ratio::new(n, d)
    }

    fn from_big_fraction(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        let reduced = Ratio::new(numer, denom);
        let (n, d) = reduced.into_raw();
        Some(Ratio::new_raw(T::try_from(n).ok()?, T::try_from(d).ok()?))
    }

    fn floor_big(&self) -> BigInt {
        self.floor().to_integer().into()
    }

    fn to_big_fraction(&self) -> (BigInt, BigInt) {
        (self.numer().clone().into(), self.denom().clone().into())
    }

    fn to_f64(&self) -> f64 {
        let (n, d) = self.to_big_fraction();
        ToPrimitive::to_f64(&Ratio::new(n, d)).unwrap_or(f64::NAN)
    }
}

fn parse_big_fraction(text: &str) -> Result<(BigInt, BigInt), Error> {
    let bad = || Error::Parse(format!("invalid rational literal `{text}`"));
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let numer = parse_integer(n.trim()).ok_or_else(bad)?;
        let denom = parse_integer(d.trim()).ok_or_else(bad)?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        return Ok((numer, denom));
    }
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(whole) || !digits_ok(frac) {
        return Err(bad());
    }
    let joined = format!("{whole}{frac}");
    let mut numer: BigInt = joined.parse().map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let denom = num_traits::pow(BigInt::from(10u8), frac.len());
    Ok((numer, denom))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    #[test]
    fn parses_fractions_and_decimals() {
        let q = |s: &str| Rational64::parse_exact(s).unwrap();
        assert_eq!(q("3/5"), Rational64::new(3, 5));
        assert_eq!(q("6/10"), Rational64::new(3, 5));
        assert_eq!(q("0.6"), Rational64::new(3, 5));
        assert_eq!(q("-2.5"), Rational64::new(-5, 2));
        assert_eq!(q("7"), Rational64::from_integer(7));
        assert_eq!(q(".25"), Rational64::new(1, 4));
        assert_eq!(q(" 1 / 3 "), Rational64::new(1, 3));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "abc", "1.2.3", "1e5", "/3", "-", "1/-"] {
            assert!(BigRational::parse_exact(s).is_err(), "{s}");
        }
    }

    #[test]
    fn overflow_reported_for_narrow_types() {
        assert!(Rational64::parse_exact("123456789012345678901234567890").is_err());
        assert!(BigRational::parse_exact("123456789012345678901234567890").is_ok());
    }

    #[test]
    fn floor_and_ceil() {
        let x = Rational64::new(-7, 2);
        assert_eq!(x.floor_big(), BigInt::from(-4));
        assert_eq!(x.ceil_big(), BigInt::from(-3));
        let y = BigRational::from_fraction(12, 3);
        assert_eq!(y.floor_big(), BigInt::from(4));
        assert_eq!(y.ceil_big(), BigInt::from(4));
    }
}
