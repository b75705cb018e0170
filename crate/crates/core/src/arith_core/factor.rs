use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Natural;
use crate::error::Result;

/// Prime factorization of a positive integer.
///
/// Primes are strictly increasing and every exponent is at least one. The
/// factorization of 1 has no pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(Natural, u32)>,
    source: Natural,
}

impl Factorization {
    pub fn pairs(&self) -> &[(Natural, u32)] {
        &self.pairs
    }

    pub fn source(&self) -> &Natural {
        &self.source
    }

    pub fn primes(&self) -> impl Iterator<Item = &Natural> + '_ {
        self.pairs.iter().map(|(p, _)| p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Natural, u32)> + '_ {
        self.pairs.iter().map(|(p, e)| (p, *e))
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.pairs.len() as u32
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> Natural {
        self.primes().cloned().product()
    }

    /// Multiplies the prime powers back together.
    pub fn product(&self) -> Natural {
        self.iter().map(|(p, e)| p.pow(e)).product()
    }

    /// Exponent of `p` in the factored number; 0 when `p` does not divide it.
    pub fn exponent_of(&self, p: &Natural) -> u32 {
        self.pairs
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.pairs[i].1)
            .unwrap_or(0)
    }
}

const WHEEL_STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut p = 7u64;
    let mut step = 0;
    while p.checked_mul(p).is_some_and(|sq| sq <= n) {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += WHEEL_STEPS[step];
        step = (step + 1) % WHEEL_STEPS.len();
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// Same wheel as the u64 path; only reached for inputs wider than 64 bits.
fn factorize_big(mut n: BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    let divide_out = |n: &mut BigUint, p: &BigUint, out: &mut Vec<(BigUint, u32)>| {
        let mut e = 0;
        loop {
            let (quot, rem) = n.div_rem(p);
            if !rem.is_zero() {
                break;
            }
            *n = quot;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
    };
    for p in [2u32, 3, 5] {
        divide_out(&mut n, &BigUint::from(p), &mut out);
    }
    let mut p = BigUint::from(7u32);
    let mut step = 0;
    while &p * &p <= n {
        if let Some(small) = n.to_u64() {
            out.extend(
                factorize_u64(small)
                    .into_iter()
                    .map(|(q, e)| (BigUint::from(q), e)),
            );
            return out;
        }
        divide_out(&mut n, &p, &mut out);
        p += WHEEL_STEPS[step];
        step = (step + 1) % WHEEL_STEPS.len();
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Factorizes `n` by deterministic trial division over a 2·3·5 wheel.
///
/// Intended for inputs up to about 10^12; larger values work but cost
/// `O(sqrt(p))` in their second-largest prime factor.
pub fn factorize(n: &Natural) -> Result<Factorization> {
    n.positive("n")?;
    let pairs = match n.to_u64() {
        Some(small) => factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (Natural::from(p), e))
            .collect(),
        None => factorize_big(n.as_biguint().clone())
            .into_iter()
            .map(|(p, e)| (Natural::from(p), e))
            .collect(),
    };
    Ok(Factorization {
        pairs,
        source: n.clone(),
    })
}

pub fn is_prime(n: &Natural) -> bool {
    if n.is_zero() || n.is_one() {
        return false;
    }
    match factorize(n) {
        Ok(f) => f.pairs.len() == 1 && f.pairs[0].1 == 1,
        Err(_) => false,
    }
}

/// All divisors of `n` in increasing order.
pub fn divisors(n: &Natural) -> Result<Vec<Natural>> {
    let f = factorize(n)?;
    Ok(divisors_of(&f))
}

pub(crate) fn divisors_of(f: &Factorization) -> Vec<Natural> {
    let mut out = vec![Natural::one()];
    for (p, e) in f.iter() {
        let len = out.len();
        let mut power = Natural::one();
        for _ in 0..e {
            power = &power * p;
            for i in 0..len {
                out.push(&out[i] * &power);
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn pairs(n: u64) -> Vec<(u64, u32)> {
        factorize(&Natural::from(n))
            .unwrap()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), e))
            .collect()
    }

    fn trial_division_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while n > 1 {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        out
    }

    #[test]
    fn small_examples() {
        assert_eq!(pairs(1), vec![]);
        assert_eq!(pairs(12), vec![(2, 2), (3, 1)]);
        assert_eq!(pairs(97), trial_division_oracle(97));
        assert_eq!(pairs(97), vec![(97, 1)]);
    }

    #[test]
    fn rejects_zero() {
        assert_eq!(
            factorize(&Natural::zero()),
            Err(Error::ZeroArgument { name: "n" })
        );
        assert!(divisors(&Natural::zero()).is_err());
    }

    #[test]
    fn reconstructs_up_to_ten_thousand() {
        for n in 1..=10_000u64 {
            let f = factorize(&Natural::from(n)).unwrap();
            assert_eq!(f.product(), Natural::from(n));
            assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.iter().all(|(p, e)| e >= 1 && is_prime(p)));
        }
    }

    #[test]
    fn matches_naive_trial_division() {
        for n in (1..3000u64).chain([999_983, 1_000_000_007 * 3, 600_851_475_143]) {
            if n < 100_000 {
                assert_eq!(pairs(n), trial_division_oracle(n), "n = {n}");
            } else {
                let f = factorize(&Natural::from(n)).unwrap();
                assert_eq!(f.product(), Natural::from(n));
            }
        }
        assert_eq!(
            pairs(600_851_475_143),
            vec![(71, 1), (839, 1), (1471, 1), (6857, 1)]
        );
    }

    #[test]
    fn wide_inputs() {
        let n: Natural = "340282366920938463463374607431768211456".parse().unwrap(); // 2^128
        let f = factorize(&n).unwrap();
        assert_eq!(f.pairs(), &[(Natural::from(2u8), 128)]);
        let m = Natural::from(u64::MAX) * Natural::from(35u8);
        assert_eq!(factorize(&m).unwrap().product(), m);
    }

    #[test]
    fn divisor_lists() {
        let d = |n: u64| -> Vec<u64> {
            divisors(&Natural::from(n))
                .unwrap()
                .iter()
                .map(|x| x.to_u64().unwrap())
                .collect()
        };
        assert_eq!(d(1), vec![1]);
        assert_eq!(d(6), vec![1, 2, 3, 6]);
        let brute: Vec<u64> = (1..=16).filter(|x| 16 % x == 0).collect();
        assert_eq!(d(16), brute);
        for n in 1..300u64 {
            let brute: Vec<u64> = (1..=n).filter(|x| n % x == 0).collect();
            assert_eq!(d(n), brute);
        }
    }
}
