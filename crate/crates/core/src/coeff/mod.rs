//! Exact scalar arithmetic: integers, Laurent polynomials, rational
//! functions in `s = q^{1/2}`, `u = t^{1/2}`, `b = sqrt(beta)`, and
//! truncated power series over them.

pub mod gcd;
pub mod int;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod series;

pub use int::Int;
pub use num_rational::BigRational as Rat;
pub use parse::parse_ratfunc;
pub use poly::{Mono, Poly};
pub use ratfunc::{RatFunc, RatFuncB, RatFuncQT};
pub use scalar::Scalar;
pub use series::{to_hbar, HbarSeries, Series, XSeries, EXACT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("specialization pole")]
    SpecializationPole,
    #[error("series: {0}")]
    Series(String),
    #[error("parse error: {0}")]
    Parse(String),
}
