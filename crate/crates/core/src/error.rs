use crate::arith_core::Natural;
use crate::cr_sum::{CrsQuery, Method};
use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{name} must be a positive integer")]
    ZeroArgument { name: &'static str },

    #[error("{0} is not prime")]
    NotPrime(Natural),

    #[error("table covers 1..={len} but k = {index} was requested")]
    TableTooShort { index: usize, len: usize },

    #[error("direct evaluation of {query} needs q^s = {modulus} terms, above the limit {limit}")]
    DirectTooLarge {
        query: Box<CrsQuery>,
        modulus: Natural,
        limit: u64,
    },

    /// The floating-point exponential sum did not land near an integer.
    #[error("direct sum for {query} is not certifiably an integer: {re} + {im}i")]
    NotIntegral { query: Box<CrsQuery>, re: f64, im: f64 },

    #[error("evaluators disagree on {query}: {first:?} gives {first_value}, {second:?} gives {second_value}")]
    Disagreement {
        query: Box<CrsQuery>,
        first: Method,
        first_value: BigInt,
        second: Method,
        second_value: BigInt,
    },

    #[error("spec line {line}: {message}")]
    SpecParse { line: usize, message: String },
}
