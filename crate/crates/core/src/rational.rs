//! Exact rational scalars.
//!
//! The field is `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator. This module adds the bit-complexity measure
//! and a strict `p/q` parser used by the text and JSON formats.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Integer bit-complexity: the least `t` with `max(|p|, q) <= 2^t`.
///
/// This is the ceiling of `log2(max(|p|, q))`, so `bit(0) = bit(±1) = 0`.
pub fn bit(r: &Rational) -> u64 {
    let num = r.numer().abs();
    let den = r.denom().clone();
    let m = if num > den { num } else { den };
    int_bit(&m)
}

/// Least `t` with `m <= 2^t` for a positive integer `m` (0 for `m <= 1`).
pub fn int_bit(m: &BigInt) -> u64 {
    if m <= &BigInt::one() {
        return 0;
    }
    let shifted: BigInt = m - 1;
    shifted.bits()
}

pub fn from_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn from_frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `[-]digits` or `[-]digits/digits`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::parse(0, format!("malformed rational `{s}`"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let valid = |x: &str, signed: bool| {
        let digits = if signed { x.strip_prefix('-').unwrap_or(x) } else { x };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n, true) {
        return Err(bad());
    }
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = match d {
        Some(d) => {
            if !valid(d, false) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::parse(0, format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// `p` or `p/q`, matching the form accepted by [`parse_rational`].
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_matches_definition() {
        assert_eq!(bit(&from_int(0)), 0);
        assert_eq!(bit(&from_int(1)), 0);
        assert_eq!(bit(&from_int(-1)), 0);
        assert_eq!(bit(&from_int(2)), 1);
        assert_eq!(bit(&from_int(7)), 3);
        assert_eq!(bit(&from_int(8)), 3);
        assert_eq!(bit(&from_int(9)), 4);
        assert_eq!(bit(&from_frac(1, 9)), 4);
        assert_eq!(bit(&from_frac(-3, 2)), 2);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/2").unwrap(), from_frac(3, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), from_frac(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), from_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&from_frac(-3, 2)), "-3/2");
        assert_eq!(format_rational(&from_int(5)), "5");
    }
}
