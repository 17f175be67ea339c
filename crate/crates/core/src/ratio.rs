//! Exact rational scalars.
//!
//! `BigRational` already guarantees the invariants the rest of the crate
//! relies on (lowest terms, positive denominator, total order, hashability);
//! this module pins the textual interface: rationals travel as `p/q` or `p`
//! strings, never as decimals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rat = BigRational;

/// Shorthand constructor used pervasively in tests.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q` with arbitrary-precision components.
/// Decimal notation is rejected: thresholds are exact by contract.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::invalid("empty rational"));
    }
    if s.contains('.') {
        return Err(Error::invalid(format!(
            "`{s}`: decimal notation is not accepted; write an exact fraction like 3/4"
        )));
    }
    let parse_int = |part: &str| -> Result<BigInt, Error> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::invalid(format!("`{part}` is not an integer")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::invalid(format!("`{s}` has zero denominator")));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
    }
}

/// Canonical `p/q` (or bare `p`) rendering.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Largest integer ≤ r.
pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Smallest integer ≥ r.
pub fn ceil_int(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// Floor as i64; flat exponents stay tiny, so overflow is a hard error.
pub fn floor_i64(r: &Rat) -> Result<i64, Error> {
    i64::try_from(&floor_int(r)).map_err(|_| Error::invalid("floor out of i64 range"))
}

pub fn ceil_i64(r: &Rat) -> Result<i64, Error> {
    i64::try_from(&ceil_int(r)).map_err(|_| Error::invalid("ceiling out of i64 range"))
}

/// A strictly positive rational, as required for threshold parameters.
pub fn require_positive(r: &Rat, what: &str) -> Result<(), Error> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{what} must be positive, got {}", fmt_rat(r))))
    }
}
