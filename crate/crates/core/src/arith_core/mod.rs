//! Integer primitives shared by every other module: factorization, divisors,
//! the Möbius function, Jordan's totient, the generalized gcd `(a, b)_s` and
//! the Möbius transform pair.

pub(crate) mod factor;
pub(crate) mod functions;
mod natural;
mod transform;

pub use factor::{divisors, factorize, is_prime, Factorization};
pub use functions::{
    generalized_gcd, jordan_totient, mobius, omega, prime_exponent, radical, s_exponent,
};
pub use natural::Natural;
pub use transform::{inverse_mobius_transform, mobius_transform};

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;
