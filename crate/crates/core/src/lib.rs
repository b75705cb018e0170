//! Exact evaluation of Cohen-Ramanujan sums `c_q^{(s)}(n)` and the divisor-sum
//! identities and series expansions built on them.
//!
//! Every quantity is an exact integer or rational. The only floating point in
//! the crate is the direct exponential-sum evaluator in [`cr_sum::crs_direct`],
//! which certifies its own rounding.
//!
//! ```
//! use cohen_ramanujan::cr_sum::{crs, CrsQuery};
//!
//! let query = CrsQuery::new(2u32, 4u32, 2).unwrap();
//! assert_eq!(crs(&query).value, 3.into());
//! ```

pub mod arith_core;
pub mod cli;
pub mod cr_sum;
mod error;
pub mod expansions;
pub mod identities;

pub use arith_core::{Factorization, Natural, Rational};
pub use error::{Error, Result};
