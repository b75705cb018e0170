// Factorization, Möbius, Jordan's totient and the generalized gcd.

use cohen_ramanujan::arith_core::{
    divisors, factorize, generalized_gcd, inverse_mobius_transform, jordan_totient, mobius,
    mobius_transform, omega,
};
use cohen_ramanujan::Natural;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = Natural::from(360u32);
    let f = factorize(&n)?;
    let pretty: Vec<String> = f.iter().map(|(p, e)| format!("{p}^{e}")).collect();
    println!("360 = {}", pretty.join(" * "));
    println!("divisors(36) = {:?}", divisors(&Natural::from(36u32))?.iter().map(|d| d.to_string()).collect::<Vec<_>>());
    println!("mu(30) = {}, omega(30) = {}", mobius(&Natural::from(30u32))?, omega(&Natural::from(30u32))?);

    for s in 1..=3 {
        println!("J_{s}(12) = {}", jordan_totient(s, &Natural::from(12u32))?);
    }
    assert_eq!(jordan_totient(2, &Natural::from(6u32))?, Natural::from(24u32));

    // (a, b)_s is the largest s-th power dividing both.
    let g = generalized_gcd(&Natural::from(16u32), &Natural::from(48u32), 2)?;
    println!("(16, 48)_2 = {g}");
    assert_eq!(g, Natural::from(16u32));

    // f(n) = n^2 on 1..=10, transformed and inverted back.
    let f: Vec<i64> = (1..=10).map(|n| n * n).collect();
    let fprime: Vec<_> = (1..=10).map(|k| mobius_transform(&f, k)).collect::<Result<_, _>>()?;
    for k in 1..=10 {
        assert_eq!(inverse_mobius_transform(&fprime, k)?, f[k - 1].into());
    }
    println!("(mu * n^2)(1..=10) = {}", fprime.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
