//! Exact rational scalars.
//!
//! Every quantity in this crate is a `Rational` backed by arbitrary-precision
//! integers. Nothing is ever rounded; equality is exact structural equality of
//! the canonical (reduced, positive-denominator) form maintained by
//! `num_rational`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Largest integer `<= q`.
pub fn floor_int(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// Smallest integer `>= q`.
pub fn ceil_int(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

/// Canonical text form: `p/q`, or just `p` when the denominator is 1.
pub fn fmt_rat(q: &Rational) -> String {
    if is_integer(q) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse the canonical text form produced by [`fmt_rat`].
///
/// Accepts optional leading `-`, an integer, or `p/q` with nonzero `q`.
pub fn parse_rat(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".to_string());
    }
    let mut parts = s.splitn(2, '/');
    let numer = parts.next().unwrap();
    let n: BigInt = numer
        .parse()
        .map_err(|_| format!("bad numerator in {s:?}"))?;
    match parts.next() {
        None => Ok(Rational::from_integer(n)),
        Some(d) => {
            let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Sign as -1, 0, 1.
pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
