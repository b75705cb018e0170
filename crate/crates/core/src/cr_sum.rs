//! Four evaluators for the Cohen-Ramanujan sum
//!
//! ```text
//! c_q^{(s)}(n) = Σ_{1 <= h <= q^s, (h, q^s)_s = 1} e^{2πi n h / q^s}
//! ```
//!
//! * [`crs_direct`] sums the roots of unity in floating point and certifies
//!   that the result rounds to an integer. Ground truth, `O(q^s)`.
//! * [`crs_mobius`] uses `Σ_{d|q, d^s|n} μ(q/d) d^s`. Reference oracle.
//! * [`crs_multiplicative`] multiplies the prime-power values. Default path.
//! * [`crs_hoelder`] uses the totient closed form `J_s(q) μ(m) / J_s(m)`.
//!
//! The Hölder-type closed form is only correct with `m = q/d` where `d` is the
//! largest divisor of `q` whose s-th power divides `n` ([`GcdReading::SPower`]).
//! Writing `m = n/(q, n)` instead, or using the ordinary gcd for `s > 1`, gives
//! wrong values; [`crs_hoelder_as_printed`] and [`GcdReading::Ordinary`] keep
//! those variants around so the discrepancy can be demonstrated.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith_core::factor::{divisors_of, factorize};
use crate::arith_core::functions::{jordan_of, mobius_of, valuation};
use crate::arith_core::{Factorization, Natural};
use crate::error::{Error, Result};

/// Default cap on `q^s` for [`crs_direct`].
pub const DIRECT_LIMIT: u64 = 1_000_000;

/// [`crs_checked`] only runs the direct sum when `q^s` is at most this.
pub const CHECKED_DIRECT_LIMIT: u64 = 10_000;

/// Maximum distance from an integer accepted from the direct sum.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;

/// Addresses one value `c_q^{(s)}(n)`. All three parameters are positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrsQuery {
    q: Natural,
    n: Natural,
    s: u32,
}

impl CrsQuery {
    pub fn new(q: impl Into<Natural>, n: impl Into<Natural>, s: u32) -> Result<Self> {
        let (q, n) = (q.into(), n.into());
        q.positive("q")?;
        n.positive("n")?;
        if s == 0 {
            return Err(Error::ZeroArgument { name: "s" });
        }
        Ok(CrsQuery { q, n, s })
    }

    pub fn q(&self) -> &Natural {
        &self.q
    }

    pub fn n(&self) -> &Natural {
        &self.n
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `q^s`, the length of the defining sum and the period in `n`.
    pub fn modulus(&self) -> Natural {
        self.q.pow(self.s)
    }
}

impl fmt::Display for CrsQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, n={}, s={})", self.q, self.n, self.s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Mobius,
    Multiplicative,
    Hoelder,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Direct,
        Method::Mobius,
        Method::Multiplicative,
        Method::Hoelder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Mobius => "mobius",
            Method::Multiplicative => "multiplicative",
            Method::Hoelder => "hoelder",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrsValue {
    pub value: BigInt,
    pub method: Method,
}

/// How the "common part" `d` of `q` and `n` is read in the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GcdReading {
    /// `d` = the largest divisor of `q` with `d^s | n`. Equals `gcd(q, n)`
    /// when `s = 1`.
    SPower,
    /// `d = gcd(q, n)` regardless of `s`.
    Ordinary,
}

impl GcdReading {
    pub fn common_part(self, q: &Natural, n: &Natural, s: u32) -> Result<Natural> {
        q.positive("q")?;
        n.positive("n")?;
        Ok(match self {
            GcdReading::SPower => s_power_common_part(&factorize(q)?, n, s),
            GcdReading::Ordinary => Natural::new(q.as_biguint().gcd(n.as_biguint())),
        })
    }
}

// ∏_{p^e || q} p^{min(e, floor(e_p(n)/s))}
pub(crate) fn s_power_common_part(q: &Factorization, n: &Natural, s: u32) -> Natural {
    q.iter()
        .map(|(p, e)| p.pow(e.min(valuation(p, n) / s)))
        .product()
}

#[derive(Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    // Neumaier's variant of Kahan summation.
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sums `e^{2πi n h / q^s}` over `1 <= h <= q^s` with `(h, q^s)_s = 1`.
pub fn crs_direct(query: &CrsQuery) -> Result<CrsValue> {
    crs_direct_with_limit(query, DIRECT_LIMIT)
}

/// [`crs_direct`] with a caller-chosen cap on `q^s`.
pub fn crs_direct_with_limit(query: &CrsQuery, limit: u64) -> Result<CrsValue> {
    let modulus_nat = query.modulus();
    let modulus = match modulus_nat.to_u64() {
        Some(m) if m <= limit => m,
        _ => {
            return Err(Error::DirectTooLarge {
                query: Box::new(query.clone()),
                modulus: modulus_nat,
                limit,
            })
        }
    };
    let residue = (query.n.as_biguint() % modulus)
        .to_u64()
        .expect("residue below a u64 modulus");

    // (h, q^s)_s = 1 exactly when no prime p | q has p^s | h.
    let blockers: Vec<u64> = factorize(&query.q)?
        .primes()
        .map(|p| p.pow(query.s).to_u64().expect("p^s <= q^s"))
        .collect();

    let mut re = Compensated::default();
    let mut im = Compensated::default();
    for h in 1..=modulus {
        if blockers.iter().any(|b| h % b == 0) {
            continue;
        }
        let turns = (residue as u128 * h as u128 % modulus as u128) as f64 / modulus as f64;
        let (sin, cos) = (TAU * turns).sin_cos();
        re.add(cos);
        im.add(sin);
    }
    let (re, im) = (re.value(), im.value());
    let nearest = re.round();
    if im.abs() >= INTEGRALITY_TOLERANCE || (re - nearest).abs() >= INTEGRALITY_TOLERANCE {
        return Err(Error::NotIntegral {
            query: Box::new(query.clone()),
            re,
            im,
        });
    }
    Ok(CrsValue {
        value: BigInt::from(nearest as i64),
        method: Method::Direct,
    })
}

/// `c_q^{(s)}(n) = Σ_{d|q, d^s|n} μ(q/d) d^s`.
pub fn crs_mobius(query: &CrsQuery) -> CrsValue {
    let q_fact = factorize(&query.q).expect("q is positive");
    let mut value = BigInt::zero();
    for d in divisors_of(&q_fact) {
        let ds = d.pow(query.s);
        if !ds.divides(&query.n) {
            continue;
        }
        let cofactor = factorize(&(&query.q / &d)).expect("cofactor is positive");
        match mobius_of(&cofactor) {
            0 => {}
            1 => value += ds.to_bigint(),
            _ => value -= ds.to_bigint(),
        }
    }
    CrsValue {
        value,
        method: Method::Mobius,
    }
}

/// Value at a prime power `q = p^j`:
///
/// * `p^{sj} - p^{s(j-1)}` if `p^{sj} | n`,
/// * `-p^{s(j-1)}` if `p^{s(j-1)} | n` but `p^{sj} ∤ n`,
/// * `0` otherwise.
pub fn crs_prime_power(p: &Natural, j: u32, n: &Natural, s: u32) -> BigInt {
    let a = valuation(p, n) / s;
    let lower = p.pow(s * (j - 1)).to_bigint();
    if a >= j {
        p.pow(s * j).to_bigint() - lower
    } else if a + 1 == j {
        -lower
    } else {
        BigInt::zero()
    }
}

/// Product of [`crs_prime_power`] over the factorization of `q`.
pub fn crs_multiplicative(query: &CrsQuery) -> CrsValue {
    let q_fact = factorize(&query.q).expect("q is positive");
    let mut value = BigInt::from(1);
    for (p, j) in q_fact.iter() {
        value *= crs_prime_power(p, j, &query.n, query.s);
        if value.is_zero() {
            break;
        }
    }
    CrsValue {
        value,
        method: Method::Multiplicative,
    }
}

/// `J_s(q) μ(m) / J_s(m)` with `m = q/d` and `d` read as [`GcdReading::SPower`].
pub fn crs_hoelder(query: &CrsQuery) -> CrsValue {
    crs_hoelder_with(query, GcdReading::SPower)
}

pub fn crs_hoelder_with(query: &CrsQuery, reading: GcdReading) -> CrsValue {
    let q_fact = factorize(&query.q).expect("q is positive");
    let d = match reading {
        GcdReading::SPower => s_power_common_part(&q_fact, &query.n, query.s),
        GcdReading::Ordinary => Natural::new(query.q.as_biguint().gcd(query.n.as_biguint())),
    };
    let m_fact = factorize(&(&query.q / &d)).expect("q/d is positive");
    CrsValue {
        value: totient_ratio(query.s, &q_fact, &m_fact, mobius_of(&m_fact)),
        method: Method::Hoelder,
    }
}

/// `J_s(top) · sign / J_s(bottom)` where `bottom | top`, so the division is exact.
pub(crate) fn totient_ratio(
    s: u32,
    top: &Factorization,
    bottom: &Factorization,
    sign: i8,
) -> BigInt {
    if sign == 0 {
        return BigInt::zero();
    }
    let (quot, rem) = jordan_of(s, top)
        .to_bigint()
        .div_rem(&jordan_of(s, bottom).to_bigint());
    debug_assert!(rem.is_zero(), "J_s preserves divisibility");
    quot * sign
}

/// The closed form with the roles of `q` and `n` as written in the classical
/// source: `J_s(n) μ(m) / J_s(m)` with `m = n / gcd(q, n)`. Kept only to
/// exhibit counterexamples such as `c_2(1) = -1` where this gives `1`.
pub fn crs_hoelder_as_printed(query: &CrsQuery) -> BigInt {
    let n_fact = factorize(&query.n).expect("n is positive");
    let g = Natural::new(query.q.as_biguint().gcd(query.n.as_biguint()));
    let m_fact = factorize(&(&query.n / &g)).expect("n/g is positive");
    totient_ratio(query.s, &n_fact, &m_fact, mobius_of(&m_fact))
}

/// Evaluates with the named method. Only [`Method::Direct`] can fail.
pub fn crs_by(query: &CrsQuery, method: Method, direct_limit: u64) -> Result<CrsValue> {
    match method {
        Method::Direct => crs_direct_with_limit(query, direct_limit),
        Method::Mobius => Ok(crs_mobius(query)),
        Method::Multiplicative => Ok(crs_multiplicative(query)),
        Method::Hoelder => Ok(crs_hoelder(query)),
    }
}

/// Default evaluator: the multiplicative formula.
pub fn crs(query: &CrsQuery) -> CrsValue {
    crs_multiplicative(query)
}

/// [`crs`] cross-checked against [`crs_mobius`] and, when
/// `q^s <= CHECKED_DIRECT_LIMIT`, against [`crs_direct`].
pub fn crs_checked(query: &CrsQuery) -> Result<CrsValue> {
    let fast = crs_multiplicative(query);
    let mut others = vec![crs_mobius(query)];
    if query
        .modulus()
        .to_u64()
        .is_some_and(|m| m <= CHECKED_DIRECT_LIMIT)
    {
        others.push(crs_direct_with_limit(query, CHECKED_DIRECT_LIMIT)?);
    }
    for other in others {
        if other.value != fast.value {
            return Err(Error::Disagreement {
                query: Box::new(query.clone()),
                first: fast.method,
                first_value: fast.value,
                second: other.method,
                second_value: other.value,
            });
        }
    }
    Ok(fast)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith_core::generalized_gcd;
    use proptest::prelude::*;

    fn query(q: u64, n: u64, s: u32) -> CrsQuery {
        CrsQuery::new(q, n, s).unwrap()
    }

    fn all_methods(q: u64, n: u64, s: u32) -> Vec<BigInt> {
        let query = query(q, n, s);
        Method::ALL
            .into_iter()
            .map(|m| crs_by(&query, m, DIRECT_LIMIT).unwrap().value)
            .collect()
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    // Classical Ramanujan sum by summing e^{2πimn/q} over m coprime to q.
    fn ramanujan_brute(q: u64, n: u64) -> i64 {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for m in (1..=q).filter(|&m| gcd(m, q) == 1) {
            let angle = TAU * ((m * n) % q) as f64 / q as f64;
            re += angle.cos();
            im += angle.sin();
        }
        assert!(im.abs() < 1e-9);
        re.round() as i64
    }

    #[test]
    fn query_rejects_zero() {
        assert_eq!(
            CrsQuery::new(0u8, 1u8, 1),
            Err(Error::ZeroArgument { name: "q" })
        );
        assert!(CrsQuery::new(1u8, 0u8, 1).is_err());
        assert!(CrsQuery::new(1u8, 1u8, 0).is_err());
    }

    #[test]
    fn direct_examples() {
        assert_eq!(crs_direct(&query(1, 5, 3)).unwrap().value, 1.into());
        assert_eq!(crs_direct(&query(2, 1, 1)).unwrap().value, (-1).into());
        assert_eq!(crs_direct(&query(2, 4, 2)).unwrap().value, 3.into());
    }

    #[test]
    fn direct_guard() {
        let err = crs_direct(&query(1001, 1, 2)).unwrap_err();
        assert!(matches!(err, Error::DirectTooLarge { limit: DIRECT_LIMIT, .. }));
        assert!(crs_direct_with_limit(&query(11, 1, 2), 100).is_err());
        assert!(crs_direct_with_limit(&query(10, 1, 2), 100).is_ok());
    }

    #[test]
    fn direct_handles_huge_n() {
        let n = Natural::from(u64::MAX) * Natural::from(u64::MAX);
        let q = CrsQuery::new(6u8, n, 1).unwrap();
        assert_eq!(crs_direct(&q).unwrap().value, crs_mobius(&q).value);
    }

    #[test]
    fn s_coprime_filter_matches_generalized_gcd() {
        for s in 1..=3u32 {
            for q in 1..=12u64 {
                let qs = q.pow(s);
                let primes: Vec<u64> = (2..=q)
                    .filter(|p| q % p == 0 && (2..*p).all(|d| p % d != 0))
                    .collect();
                for h in 1..=qs {
                    let by_filter = primes.iter().all(|p| h % p.pow(s) != 0);
                    let by_ggcd = generalized_gcd(&Natural::from(h), &Natural::from(qs), s)
                        .unwrap()
                        .is_one();
                    assert_eq!(by_filter, by_ggcd, "h={h} q={q} s={s}");
                }
            }
        }
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(crs_mobius(&query(4, 2, 1)).value, (-2).into());
        assert_eq!(crs_mobius(&query(1, 7, 2)).value, 1.into());
        assert_eq!(crs_mobius(&query(4, 16, 2)).value, 12.into());
    }

    #[test]
    fn multiplicative_examples() {
        assert_eq!(crs_multiplicative(&query(6, 1, 1)).value, 1.into());
        assert_eq!(crs_multiplicative(&query(8, 2, 1)).value, 0.into());
        for (p, s) in [(2u64, 1u32), (3, 2), (5, 3), (7, 1)] {
            let n = p.pow(s) * 11;
            assert_eq!(
                crs_multiplicative(&query(p, n, s)).value,
                BigInt::from(p.pow(s) - 1)
            );
        }
    }

    #[test]
    fn hoelder_examples() {
        assert_eq!(crs_hoelder(&query(2, 4, 2)).value, 3.into());
        // d = gcd(4, 2) = 2 and m = 2, so J_1(4)μ(2)/J_1(2) = -2.
        assert_eq!(crs_hoelder(&query(4, 2, 1)).value, (-2).into());
        assert_eq!(crs_hoelder(&query(3, 3, 1)).value, 2.into());
    }

    #[test]
    fn rejected_closed_forms_have_counterexamples() {
        let q = query(2, 1, 1);
        assert_eq!(crs_mobius(&q).value, (-1).into());
        assert_eq!(crs_hoelder_as_printed(&q), 1.into());

        let q = query(2, 2, 2);
        assert_eq!(crs_mobius(&q).value, (-1).into());
        assert_eq!(crs_hoelder_with(&q, GcdReading::Ordinary).value, 3.into());
        assert_eq!(crs_hoelder_with(&q, GcdReading::SPower).value, (-1).into());
    }

    #[test]
    fn dispatch_examples() {
        assert_eq!(crs(&query(1, 1, 1)).value, 1.into());
        assert_eq!(crs_checked(&query(2, 4, 2)).unwrap().value, 3.into());
        let q = query(12, 9, 1);
        assert_eq!(crs_checked(&q).unwrap().value, crs_mobius(&q).value);
        assert_eq!(crs(&q).method, Method::Multiplicative);
    }

    #[test]
    fn four_methods_agree_on_small_grid() {
        for s in 1..=3u32 {
            for q in (1..=12u64).filter(|q| q.pow(s) <= 2000) {
                for n in 1..=40u64 {
                    let values = all_methods(q, n, s);
                    assert!(values.windows(2).all(|w| w[0] == w[1]), "q={q} n={n} s={s}: {values:?}");
                }
            }
        }
    }

    #[test]
    fn s_one_is_classical_ramanujan_sum() {
        for q in 1..=30u64 {
            for n in 1..=60u64 {
                assert_eq!(
                    crs(&query(q, n, 1)).value,
                    BigInt::from(ramanujan_brute(q, n)),
                    "q={q} n={n}"
                );
            }
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("auto".parse::<Method>().is_err());
    }

    fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
        (1u64..=50, 1u64..=50).prop_filter("coprime", |(a, b)| gcd(*a, *b) == 1)
    }

    proptest! {
        #[test]
        fn multiplicative_in_q((q1, q2) in coprime_pair(), n in 1u64..=200, s in 1u32..=3) {
            prop_assert_eq!(
                crs(&query(q1 * q2, n, s)).value,
                crs(&query(q1, n, s)).value * crs(&query(q2, n, s)).value
            );
        }

        #[test]
        fn periodic_in_n(q in 1u64..=30, n in 1u64..=200, s in 1u32..=3) {
            let period = q.pow(s);
            prop_assert_eq!(crs(&query(q, n, s)).value, crs(&query(q, n + period, s)).value);
        }

        #[test]
        fn mobius_matches_multiplicative_on_large_arguments(
            q in 1u64..=5000,
            n in 1u64..=1_000_000_000,
            s in 1u32..=4,
        ) {
            let q = query(q, n, s);
            prop_assert_eq!(crs_mobius(&q).value, crs_multiplicative(&q).value);
            prop_assert_eq!(crs_hoelder(&q).value, crs_multiplicative(&q).value);
        }
    }
}
