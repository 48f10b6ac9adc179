//! Exact scalars: rationals, unit phases, cyclotomic sums and multivariate
//! polynomials with a small text grammar.

mod cyclo;
mod parse;
mod phase;
mod poly;

pub use cyclo::{cyclotomic_polynomial, sum_all, CyclotomicSum};
pub use parse::{parse_polynomial, ParseError};
pub use phase::{phase_mul, phase_sqrt, UnitPhase};
pub use poly::{Monomial, Polynomial};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d`; panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q`, or just `p` for integers.
pub fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, `p/q` with optional surrounding whitespace.
pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Representative of `r` in `[0,1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    num_integer::Integer::lcm(&a, &b)
}

/// Denominator of a reduced rational as a machine integer.
pub fn denom_u64(r: &Rational) -> u64 {
    use num_traits::ToPrimitive;
    r.denom().abs().to_u64().expect("denominator fits in u64")
}

pub fn is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}
