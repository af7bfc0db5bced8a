//! Exact arithmetic over `Q[e0, e1]` and its localisation at powers of
//! `r = 1 - e0 - e1`.

mod parse;
mod poly;
mod ratfn;

pub use parse::{parse_poly, parse_ratfn};
pub use poly::{Monomial, PolyQ};
pub use ratfn::{geom_mass, geom_sum, RatFnQ};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Q = BigRational;

/// Shorthand for the rational `num/den`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub use poly::fmt_q;
