use num_integer::Integer;
use num_traits::Zero;

use super::factor::{factorize, is_prime, Factorization};
use super::Natural;
use crate::error::{Error, Result};

/// The Möbius function μ(n).
pub fn mobius(n: &Natural) -> Result<i8> {
    Ok(mobius_of(&factorize(n)?))
}

pub(crate) fn mobius_of(f: &Factorization) -> i8 {
    if f.is_squarefree() {
        if f.omega().is_multiple_of(2) {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// Number of distinct prime divisors; `omega(1) = 0`.
pub fn omega(n: &Natural) -> Result<u32> {
    Ok(factorize(n)?.omega())
}

/// Product of the distinct primes dividing `n`; `radical(1) = 1`.
pub fn radical(n: &Natural) -> Result<Natural> {
    Ok(factorize(n)?.radical())
}

/// Jordan's totient `J_s(n) = n^s ∏_{p|n} (1 - p^{-s})`, evaluated as
/// `∏ p^{s(e-1)} (p^s - 1)` over the factorization of `n`.
pub fn jordan_totient(s: u32, n: &Natural) -> Result<Natural> {
    if s == 0 {
        return Err(Error::ZeroArgument { name: "s" });
    }
    Ok(jordan_of(s, &factorize(n)?))
}

pub(crate) fn jordan_of(s: u32, f: &Factorization) -> Natural {
    f.iter()
        .map(|(p, e)| {
            let ps = p.pow(s);
            let reduced = Natural::new(ps.as_biguint() - 1u32);
            ps.pow(e - 1) * reduced
        })
        .product()
}

/// Largest `e` with `p^e | n`. `n` must be positive and `p > 1`.
pub(crate) fn valuation(p: &Natural, n: &Natural) -> u32 {
    let p = p.as_biguint();
    let mut rest = n.as_biguint().clone();
    let mut e = 0;
    loop {
        let (quot, rem) = rest.div_rem(p);
        if !rem.is_zero() {
            return e;
        }
        rest = quot;
        e += 1;
    }
}

/// Exponent of the prime `p` in `k`, written `e_p(k)`.
pub fn prime_exponent(p: &Natural, k: &Natural) -> Result<u32> {
    k.positive("k")?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(valuation(p, k))
}

/// Largest `a` with `p^{as} | n`, i.e. `floor(e_p(n) / s)`.
pub fn s_exponent(p: &Natural, n: &Natural, s: u32) -> Result<u32> {
    if s == 0 {
        return Err(Error::ZeroArgument { name: "s" });
    }
    Ok(prime_exponent(p, n)? / s)
}

/// The generalized gcd `(a, b)_s`: the largest s-th power `d^s` dividing both
/// `a` and `b`. Returns `d^s`, not `d`.
pub fn generalized_gcd(a: &Natural, b: &Natural, s: u32) -> Result<Natural> {
    a.positive("a")?;
    b.positive("b")?;
    if s == 0 {
        return Err(Error::ZeroArgument { name: "s" });
    }
    let g = Natural::new(a.as_biguint().gcd(b.as_biguint()));
    Ok(s_power_part(&factorize(&g)?, s))
}

/// `∏ p^{s·floor(e/s)}`: the largest s-th power dividing the factored number.
pub(crate) fn s_power_part(f: &Factorization, s: u32) -> Natural {
    f.iter().map(|(p, e)| p.pow(s * (e / s))).product()
}
