// Cohen-Ramanujan expansion of a finitely supported f' and the
// rearranged absolute double series.

use cohen_ramanujan::expansions::{partial_expansion, rearrangement, MobiusSpec};
use cohen_ramanujan::Natural;
use num_bigint::BigInt;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec: MobiusSpec = include_str!("data/one_plus_two.spec").parse()?;
    for n in 1..=4u32 {
        let report = partial_expansion(&spec, &Natural::from(n), 1, spec.support_bound())?;
        println!("{}", report.to_json(&spec));
        assert_eq!(report.partial_sum, report.target);
    }

    // gcd(n, 12)^2, built from its values; f' has support in 1..=12.
    let spec = MobiusSpec::from_function("gcd(n,12)^2", 12, |n| {
        let g = num_integer::gcd(n, 12);
        BigInt::from(g * g)
    })?;
    print!("{}", spec.to_text());
    for s in 1..=3 {
        for n in [5u32, 6, 24, 30] {
            let r = partial_expansion(&spec, &Natural::from(n), s, 12)?;
            assert!(num_traits::Zero::is_zero(&r.residual));
            let chain = rearrangement(&spec, &Natural::from(n), s)?;
            assert!(chain.holds());
            println!(
                "s={s} n={n}: sum a_q c_q(n^s) = {} = f(n), |double series| = {}, condition sum = {}",
                r.partial_sum, chain.double_sum, r.condition_sum
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
