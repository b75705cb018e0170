use std::fmt;
use std::ops::{Add, Div, Mul, Rem};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, ParseBigIntError};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
///
/// Zero is representable; operations that need a positive argument check for
/// it through [`Natural::positive`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(BigUint);

impl Natural {
    pub fn new(value: BigUint) -> Self {
        Natural(value)
    }

    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn one() -> Self {
        Natural(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Returns `self` unchanged, or `ZeroArgument` naming the parameter.
    pub fn positive(&self, name: &'static str) -> Result<&Self> {
        if self.is_zero() {
            Err(Error::ZeroArgument { name })
        } else {
            Ok(self)
        }
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn pow(&self, exp: u32) -> Natural {
        Natural(self.0.pow(exp))
    }

    pub fn divides(&self, other: &Natural) -> bool {
        !self.is_zero() && (&other.0 % &self.0).is_zero()
    }
}

macro_rules! natural_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Natural {
            fn from(v: $t) -> Self {
                Natural(BigUint::from(v))
            }
        }
    )*};
}

natural_from!(u8, u16, u32, u64, u128, usize);

impl From<BigUint> for Natural {
    fn from(v: BigUint) -> Self {
        Natural(v)
    }
}

impl From<Natural> for BigUint {
    fn from(v: Natural) -> Self {
        v.0
    }
}

impl From<Natural> for BigInt {
    fn from(v: Natural) -> Self {
        BigInt::from(v.0)
    }
}

impl FromStr for Natural {
    type Err = ParseBigIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse().map(Natural)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

macro_rules! natural_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Natural> for &Natural {
            type Output = Natural;
            fn $method(self, rhs: &Natural) -> Natural {
                Natural($trait::$method(&self.0, &rhs.0))
            }
        }

        impl $trait for Natural {
            type Output = Natural;
            fn $method(self, rhs: Natural) -> Natural {
                Natural($trait::$method(self.0, rhs.0))
            }
        }
    };
}

natural_binop!(Add, add);
natural_binop!(Mul, mul);
natural_binop!(Div, div);
natural_binop!(Rem, rem);

impl std::iter::Product for Natural {
    fn product<I: Iterator<Item = Natural>>(iter: I) -> Self {
        iter.fold(Natural::one(), |acc, x| acc * x)
    }
}

impl std::iter::Sum for Natural {
    fn sum<I: Iterator<Item = Natural>>(iter: I) -> Self {
        iter.fold(Natural::zero(), |acc, x| acc + x)
    }
}
