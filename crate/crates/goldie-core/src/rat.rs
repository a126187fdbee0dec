//! Arbitrary-precision rationals and small helpers.
//!
//! `Rat` is `num_rational::BigRational`, which already maintains the
//! canonical-form invariants we rely on everywhere: always in lowest terms,
//! denominator strictly positive, equality is equality of canonical forms.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;

pub use num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// A dense rational vector.
pub type RatVector = Vec<Rat>;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// `n/d` in lowest terms. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with optional surrounding whitespace.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let t = s.trim();
    match t.split_once('/') {
        None => t
            .parse::<BigInt>()
            .map(Rat::from_integer)
            .map_err(|_| Error::Parse(alloc::format!("bad rational literal {t:?}"))),
        Some((n, d)) => {
            let numer = n
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(alloc::format!("bad numerator in {t:?}")))?;
            let denom = d
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(alloc::format!("bad denominator in {t:?}")))?;
            if denom.is_zero() {
                return Err(Error::Parse(alloc::format!("zero denominator in {t:?}")));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Canonical display form, `"p"` or `"p/q"`.
pub fn fmt_rat(r: &Rat) -> alloc::string::String {
    r.to_string()
}

pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

/// Exact floor as a big integer.
pub fn floor_big(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Exact ceiling as a big integer.
pub fn ceil_big(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// Least common multiple of the denominators of the given rationals (1 when
/// the iterator is empty).
pub fn lcm_denominators<'a>(it: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for r in it {
        acc = acc.lcm(r.denom());
    }
    acc
}
