use num_bigint::BigInt;

use super::factor::{divisors_of, factorize};
use super::functions::mobius;
use super::Natural;
use crate::error::{Error, Result};

// `table[i]` holds the value at i + 1.
fn lookup<T: Clone + Into<BigInt>>(table: &[T], k: usize) -> Result<BigInt> {
    match k.checked_sub(1).and_then(|i| table.get(i)) {
        Some(v) => Ok(v.clone().into()),
        None => Err(Error::TableTooShort {
            index: k,
            len: table.len(),
        }),
    }
}

fn check_index(k: usize, len: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::ZeroArgument { name: "k" });
    }
    if k > len {
        return Err(Error::TableTooShort { index: k, len });
    }
    Ok(())
}

/// `(μ * f)(k) = Σ_{d|k} μ(d) f(k/d)` for `f` tabulated on `1..=table.len()`.
pub fn mobius_transform<T: Clone + Into<BigInt>>(table: &[T], k: usize) -> Result<BigInt> {
    check_index(k, table.len())?;
    let mut acc = BigInt::from(0);
    for d in divisors_of(&factorize(&Natural::from(k))?) {
        let d = d.to_u64().expect("divisor of a usize") as usize;
        let mu = mobius(&Natural::from(d))?;
        if mu != 0 {
            acc += lookup(table, k / d)? * mu;
        }
    }
    Ok(acc)
}

/// `(g * u)(k) = Σ_{d|k} g(d)`, the inverse of [`mobius_transform`].
pub fn inverse_mobius_transform<T: Clone + Into<BigInt>>(table: &[T], k: usize) -> Result<BigInt> {
    check_index(k, table.len())?;
    let mut acc = BigInt::from(0);
    for d in divisors_of(&factorize(&Natural::from(k))?) {
        acc += lookup(table, d.to_u64().expect("divisor of a usize") as usize)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn transform_examples() {
        let ones = vec![1i64; 10];
        assert_eq!(mobius_transform(&ones, 1).unwrap(), 1.into());
        assert_eq!(mobius_transform(&ones, 6).unwrap(), 0.into());
        let ident: Vec<i64> = (1..=10).collect();
        assert_eq!(mobius_transform(&ident, 4).unwrap(), 2.into());
    }

    #[test]
    fn inverse_examples() {
        let mut indicator = vec![0i64; 10];
        indicator[0] = 1;
        assert_eq!(inverse_mobius_transform(&indicator, 9).unwrap(), 1.into());
        let ident: Vec<i64> = (1..=10).collect();
        assert_eq!(inverse_mobius_transform(&ident, 6).unwrap(), 12.into());
    }

    #[test]
    fn round_trip_on_squares() {
        let squares: Vec<i64> = (1..=10).map(|n| n * n).collect();
        let transformed: Vec<BigInt> = (1..=10)
            .map(|k| mobius_transform(&squares, k).unwrap())
            .collect();
        for k in 1..=10 {
            assert_eq!(
                inverse_mobius_transform(&transformed, k).unwrap(),
                BigInt::from(squares[k - 1])
            );
        }
    }

    #[test]
    fn rejects_out_of_table() {
        let t = vec![1i64; 5];
        assert_eq!(
            mobius_transform(&t, 6),
            Err(Error::TableTooShort { index: 6, len: 5 })
        );
        assert!(inverse_mobius_transform(&t, 6).is_err());
        assert!(mobius_transform(&t, 0).is_err());
    }

    proptest! {
        #[test]
        fn transforms_are_inverse(values in prop::collection::vec(-50i64..50, 1..=200)) {
            let k_max = values.len();
            let g: Vec<BigInt> = (1..=k_max).map(|k| mobius_transform(&values, k).unwrap()).collect();
            let f: Vec<BigInt> = (1..=k_max).map(|k| inverse_mobius_transform(&values, k).unwrap()).collect();
            for k in 1..=k_max {
                prop_assert_eq!(inverse_mobius_transform(&g, k).unwrap(), BigInt::from(values[k - 1]));
                prop_assert_eq!(mobius_transform(&f, k).unwrap(), BigInt::from(values[k - 1]));
            }
        }
    }
}
