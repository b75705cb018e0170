//! Divisor sums of `|c_q^{(s)}(n)|` and the identities they satisfy.
//!
//! For positive `k, n, s`, with `h_n(k) = Σ_{q|k} |c_q^{(s)}(n)|`:
//!
//! * `h_n(k) <= n · 2^{ω(k)}` ([`delange_bound`]),
//! * `h_n(k) = 2^{ω(k^s / g)} · g` with `g = (k^s, n)_s` ([`grytczuk_value`]),
//! * the bound is attained when `n = m^s` and `m · rad(m) | k`,
//! * `Σ_{q|k} c_q^{(s)}(n^s) = k^s` if `k | n`, else 0,
//! * Möbius inversion of the exact value recovers `|c_k^{(s)}(n)|`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith_core::factor::{divisors_of, factorize};
use crate::arith_core::functions::mobius_of;
use crate::arith_core::{generalized_gcd, omega, Natural};
use crate::cr_sum::{crs, totient_ratio, CrsQuery, GcdReading};
use crate::error::{Error, Result};

fn check_s(s: u32) -> Result<()> {
    if s == 0 {
        Err(Error::ZeroArgument { name: "s" })
    } else {
        Ok(())
    }
}

fn two_pow(e: u32) -> Natural {
    Natural::from(2u8).pow(e)
}

/// `h_n(k) = Σ_{q|k} |c_q^{(s)}(n)|`.
pub fn divisor_abs_sum(k: &Natural, n: &Natural, s: u32) -> Result<Natural> {
    k.positive("k")?;
    let mut total = BigInt::zero();
    for q in divisors_of(&factorize(k)?) {
        total += crs(&CrsQuery::new(q, n.clone(), s)?).value.abs();
    }
    Ok(Natural::new(total.to_biguint().expect("sum of absolute values")))
}

/// `n · 2^{ω(k)}`.
pub fn delange_bound(k: &Natural, n: &Natural, s: u32) -> Result<Natural> {
    check_s(s)?;
    n.positive("n")?;
    Ok(n * &two_pow(omega(k)?))
}

/// `2^{ω(k^s / (k^s, n)_s)} · (k^s, n)_s`.
pub fn grytczuk_value(k: &Natural, n: &Natural, s: u32) -> Result<Natural> {
    k.positive("k")?;
    let ks = k.pow(s);
    let g = generalized_gcd(&ks, n, s)?;
    Ok(two_pow(omega(&(&ks / &g))?) * g)
}

/// One row of the divisor-sum identities at `(k, n, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSumRecord {
    pub k: Natural,
    pub n: Natural,
    pub s: u32,
    pub h_value: Natural,
    pub delange_bound: Natural,
    pub grytczuk_value: Natural,
}

impl DivisorSumRecord {
    pub fn compute(k: &Natural, n: &Natural, s: u32) -> Result<Self> {
        Ok(DivisorSumRecord {
            k: k.clone(),
            n: n.clone(),
            s,
            h_value: divisor_abs_sum(k, n, s)?,
            delange_bound: delange_bound(k, n, s)?,
            grytczuk_value: grytczuk_value(k, n, s)?,
        })
    }

    pub fn bound_holds(&self) -> bool {
        self.h_value <= self.delange_bound
    }

    pub fn equality_holds(&self) -> bool {
        self.h_value == self.grytczuk_value
    }

    /// The bound is attained exactly.
    pub fn is_tight(&self) -> bool {
        self.h_value == self.delange_bound
    }
}

/// Whether `m · rad(m)` divides `k`, the hypothesis under which
/// `h_{m^s}(k) = m^s · 2^{ω(k)}`.
pub fn equality_case_holds(m: &Natural, k: &Natural, s: u32) -> Result<bool> {
    check_s(s)?;
    k.positive("k")?;
    let step = m * &factorize(m)?.radical();
    Ok(step.divides(k))
}

/// `None` when [`equality_case_holds`] is false; otherwise whether
/// `divisor_abs_sum(k, m^s, s) = m^s · 2^{ω(k)}`.
pub fn verify_equality_case(m: &Natural, k: &Natural, s: u32) -> Result<Option<bool>> {
    if !equality_case_holds(m, k, s)? {
        return Ok(None);
    }
    let n = m.pow(s);
    Ok(Some(divisor_abs_sum(k, &n, s)? == delange_bound(k, &n, s)?))
}

/// `Σ_{q|k} c_q^{(s)}(n^s)`.
pub fn orthogonality_sum(k: &Natural, n: &Natural, s: u32) -> Result<BigInt> {
    k.positive("k")?;
    let ns = n.pow(s);
    let mut total = BigInt::zero();
    for q in divisors_of(&factorize(k)?) {
        total += crs(&CrsQuery::new(q, ns.clone(), s)?).value;
    }
    Ok(total)
}

/// `Σ_{d|k} 2^{ω(d^s/(d^s,n)_s)} (d^s,n)_s μ(k/d)`, the Möbius inversion of
/// [`grytczuk_value`] in `k`. Equals `|c_k^{(s)}(n)|`.
pub fn s_kn_mobius(k: &Natural, n: &Natural, s: u32) -> Result<BigInt> {
    k.positive("k")?;
    let mut total = BigInt::zero();
    for d in divisors_of(&factorize(k)?) {
        let mu = mobius_of(&factorize(&(k / &d))?);
        if mu != 0 {
            total += grytczuk_value(&d, n, s)?.to_bigint() * mu;
        }
    }
    Ok(total)
}

/// `J_s(k) / J_s(k/d)` when `k/d` is squarefree, else 0, with `d` read as
/// [`GcdReading::SPower`].
pub fn s_kn_closed_form(k: &Natural, n: &Natural, s: u32) -> Result<BigInt> {
    s_kn_closed_form_with(k, n, s, GcdReading::SPower)
}

pub fn s_kn_closed_form_with(
    k: &Natural,
    n: &Natural,
    s: u32,
    reading: GcdReading,
) -> Result<BigInt> {
    check_s(s)?;
    let d = reading.common_part(k, n, s)?;
    let m_fact = factorize(&(k / &d))?;
    let sign = if m_fact.is_squarefree() { 1 } else { 0 };
    Ok(totient_ratio(s, &factorize(k)?, &m_fact, sign))
}

/// Whether every exponent in `n` is a multiple of `s`.
pub fn is_perfect_power(n: &Natural, s: u32) -> Result<bool> {
    check_s(s)?;
    Ok(factorize(n)?.iter().all(|(_, e)| e % s == 0))
}

/// Cells where the bound is attained although `n` is not an s-th power.
pub fn tight_without_power(k: &Natural, n: &Natural, s: u32) -> Result<bool> {
    let rec = DivisorSumRecord::compute(k, n, s)?;
    Ok(rec.is_tight() && !is_perfect_power(n, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr_sum::crs_direct;
    use proptest::prelude::*;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    fn abs_sum_oracle(k: u64, n: u64, s: u32) -> u64 {
        (1..=k)
            .filter(|q| k.is_multiple_of(*q))
            .map(|q| {
                let v = crs_direct(&CrsQuery::new(q, n, s).unwrap()).unwrap().value;
                u64::try_from(v.abs()).unwrap()
            })
            .sum::<u64>()
    }

    #[test]
    fn abs_sum_examples() {
        assert_eq!(divisor_abs_sum(&nat(1), &nat(9), 2).unwrap(), nat(1));
        assert_eq!(divisor_abs_sum(&nat(2), &nat(4), 2).unwrap(), nat(4));
        assert_eq!(abs_sum_oracle(2, 4, 2), 4);
        assert_eq!(divisor_abs_sum(&nat(4), &nat(2), 1).unwrap(), nat(4));
        assert_eq!(abs_sum_oracle(4, 2, 1), 4);
    }

    #[test]
    fn abs_sum_matches_direct_oracle() {
        for s in 1..=2u32 {
            for k in 1..=24u64 {
                for n in 1..=30u64 {
                    assert_eq!(
                        divisor_abs_sum(&nat(k), &nat(n), s).unwrap(),
                        nat(abs_sum_oracle(k, n, s)),
                        "k={k} n={n} s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(delange_bound(&nat(1), &nat(1), 1).unwrap(), nat(1));
        assert_eq!(delange_bound(&nat(2), &nat(4), 2).unwrap(), nat(8));
        assert_eq!(delange_bound(&nat(6), &nat(1), 1).unwrap(), nat(4));
        assert_eq!(divisor_abs_sum(&nat(6), &nat(1), 1).unwrap(), nat(4));
        assert!(delange_bound(&nat(6), &nat(1), 0).is_err());
    }

    #[test]
    fn grytczuk_examples() {
        assert_eq!(grytczuk_value(&nat(2), &nat(4), 2).unwrap(), nat(4));
        assert_eq!(grytczuk_value(&nat(4), &nat(2), 1).unwrap(), nat(4));
        for (n, s) in [(1, 1), (17, 2), (64, 3)] {
            assert_eq!(grytczuk_value(&nat(1), &nat(n), s).unwrap(), nat(1));
        }
    }

    #[test]
    fn equality_case_examples() {
        assert!(equality_case_holds(&nat(2), &nat(4), 2).unwrap());
        assert_eq!(verify_equality_case(&nat(2), &nat(4), 2).unwrap(), Some(true));
        assert_eq!(divisor_abs_sum(&nat(4), &nat(4), 2).unwrap(), nat(8));
        assert!(!equality_case_holds(&nat(2), &nat(2), 1).unwrap());
        assert_eq!(verify_equality_case(&nat(2), &nat(2), 1).unwrap(), None);
        for k in 1..=30 {
            assert!(equality_case_holds(&nat(1), &nat(k), 3).unwrap());
            assert_eq!(verify_equality_case(&nat(1), &nat(k), 3).unwrap(), Some(true));
        }
    }

    #[test]
    fn orthogonality_examples() {
        assert_eq!(orthogonality_sum(&nat(2), &nat(2), 1).unwrap(), 2.into());
        assert_eq!(orthogonality_sum(&nat(2), &nat(3), 1).unwrap(), 0.into());
        assert_eq!(orthogonality_sum(&nat(1), &nat(1), 3).unwrap(), 1.into());
    }

    #[test]
    fn orthogonality_on_grid() {
        for s in 1..=3u32 {
            for k in 1..=60u64 {
                for n in 1..=60u64 {
                    let expected = if n % k == 0 { BigInt::from(k).pow(s) } else { BigInt::zero() };
                    assert_eq!(orthogonality_sum(&nat(k), &nat(n), s).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn s_kn_examples() {
        assert_eq!(s_kn_mobius(&nat(2), &nat(1), 1).unwrap(), 1.into());
        assert_eq!(s_kn_mobius(&nat(4), &nat(1), 1).unwrap(), 0.into());
        assert_eq!(s_kn_mobius(&nat(1), &nat(7), 2).unwrap(), 1.into());
        assert_eq!(s_kn_closed_form(&nat(2), &nat(1), 1).unwrap(), 1.into());
        assert_eq!(s_kn_closed_form(&nat(4), &nat(1), 1).unwrap(), 0.into());
        assert_eq!(s_kn_closed_form(&nat(3), &nat(3), 1).unwrap(), 2.into());
    }

    #[test]
    fn ordinary_gcd_reading_fails_for_s_above_one() {
        // |c_2^{(2)}(2)| = 1, the ordinary gcd reading gives J_2(2) = 3.
        let (k, n) = (nat(2), nat(2));
        assert_eq!(s_kn_mobius(&k, &n, 2).unwrap(), 1.into());
        assert_eq!(s_kn_closed_form(&k, &n, 2).unwrap(), 1.into());
        assert_eq!(s_kn_closed_form_with(&k, &n, 2, GcdReading::Ordinary).unwrap(), 3.into());
    }

    #[test]
    fn perfect_powers() {
        assert!(is_perfect_power(&nat(64), 3).unwrap());
        assert!(is_perfect_power(&nat(64), 2).unwrap());
        assert!(!is_perfect_power(&nat(32), 2).unwrap());
        assert!(is_perfect_power(&nat(1), 5).unwrap());
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    proptest! {
        #[test]
        fn exact_value_and_bound(k in 1u64..=300, n in 1u64..=5000, s in 1u32..=3) {
            let rec = DivisorSumRecord::compute(&nat(k), &nat(n), s).unwrap();
            prop_assert!(rec.bound_holds());
            prop_assert!(rec.equality_holds());
        }

        #[test]
        fn grytczuk_multiplicative_in_k(
            (k1, k2) in (1u64..=60, 1u64..=60).prop_filter("coprime", |(a, b)| gcd(*a, *b) == 1),
            n in 1u64..=200,
            s in 1u32..=3,
        ) {
            prop_assert_eq!(
                grytczuk_value(&nat(k1 * k2), &nat(n), s).unwrap(),
                grytczuk_value(&nat(k1), &nat(n), s).unwrap() * grytczuk_value(&nat(k2), &nat(n), s).unwrap()
            );
        }

        #[test]
        fn s_kn_inverts_to_abs_crs(k in 1u64..=120, n in 1u64..=500, s in 1u32..=3) {
            let abs = crs(&CrsQuery::new(k, n, s).unwrap()).value.abs();
            prop_assert_eq!(s_kn_mobius(&nat(k), &nat(n), s).unwrap(), abs.clone());
            prop_assert_eq!(s_kn_closed_form(&nat(k), &nat(n), s).unwrap(), abs);
        }
    }
}
