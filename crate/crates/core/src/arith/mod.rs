//! Exact arithmetic: rationals, Laurent polynomials in `q`, truncated series,
//! sparse multivariate polynomials and rational functions, and linear algebra
//! over exact fields.

mod laurent;
mod linalg;
mod mpoly;
mod ratfunc;
mod series;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use laurent::{quantum_binomial, quantum_factorial, quantum_integer, LaurentPoly};
pub use linalg::{fraction_free_rank, Echelon, Field};
pub use mpoly::{MPoly, Monomial};
pub use ratfunc::{order_of_zero, RatFunc, SignedQPower};
pub use series::{series_inverse, TruncatedSeries};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series is not invertible: lowest coefficient vanishes")]
    NotInvertible,
    #[error("order of zero of the zero function")]
    ZeroFunction,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-2/5"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}
