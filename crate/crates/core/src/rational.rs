//! Exact rational scalars.
//!
//! All arithmetic in the crate is done over `BigRational`; this module adds the
//! text format (`"p/q"` or `"p"`), generalized binomials and a few helpers.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

use crate::error::{Error, Result};

/// Builds `p/q` in lowest terms. Panics on `q == 0`.
pub fn q(p: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(den))
}

/// Builds the integer `p` as a rational.
pub fn qi(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Surrounding whitespace is ignored.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    if text.is_empty() {
        return Err(bad());
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `binom(mu, k) = mu (mu - 1) ... (mu - k + 1) / k!` for rational `mu`.
pub fn binomial(mu: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= mu - qi(i as i64);
        acc /= qi(i as i64 + 1);
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * qi(i as i64))
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Returns `Some(k)` when `r` is an integer that fits in `i64`.
pub fn as_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// True when `r` is a non-negative even integer.
pub fn is_nonneg_even(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative() && r.numer().is_even()
}

/// True when `r` is an even integer (any sign).
pub fn is_even_integer(r: &Rational) -> bool {
    r.is_integer() && r.numer().is_even()
}

/// Least common multiple of the denominators of `row`.
pub fn denominator_lcm<'a>(row: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    row.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("-2/3").unwrap(), q(-2, 3));
        assert_eq!(parse("4/6").unwrap(), q(2, 3));
        assert_eq!(parse(" 7 ").unwrap(), qi(7));
        assert_eq!(format(&q(-2, 3)), "-2/3");
        assert_eq!(format(&qi(5)), "5");
        assert_eq!(format(&q(0, 5)), "0");
        assert!(parse("1/0").is_err());
        assert!(parse("a/2").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = q(0, -7);
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(&q(2, 3), 0), qi(1));
        assert_eq!(binomial(&q(2, 3), 2), q(-1, 9));
        assert_eq!(binomial(&q(2, 3), 3), q(4, 81));
        assert_eq!(binomial(&qi(5), 2), qi(10));
        assert_eq!(binomial(&qi(2), 3), qi(0));
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let x = q(a, b);
            let y = q(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(parse(&format(&x)).unwrap(), x);
        }
    }
}
