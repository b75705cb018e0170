// S(k, n): Möbius inversion of the exact divisor sum, against the totient
// closed form under both readings of the common part of k and n.

use cohen_ramanujan::cr_sum::GcdReading;
use cohen_ramanujan::identities::{s_kn_closed_form_with, s_kn_mobius};
use cohen_ramanujan::Natural;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>3} {:>2} | {:>9} {:>7} {:>8}", "k", "n", "s", "inversion", "s-power", "ordinary");
    for (k, n, s) in [(2u64, 1u64, 1u32), (4, 1, 1), (3, 3, 1), (2, 2, 2), (12, 8, 2), (36, 216, 3), (10, 20, 2)] {
        let (k, n) = (Natural::from(k), Natural::from(n));
        let inv = s_kn_mobius(&k, &n, s)?;
        let spower = s_kn_closed_form_with(&k, &n, s, GcdReading::SPower)?;
        let ordinary = s_kn_closed_form_with(&k, &n, s, GcdReading::Ordinary)?;
        assert_eq!(inv, spower);
        println!(
            "{k:>3} {n:>3} {s:>2} | {inv:>9} {spower:>7} {ordinary:>8}{}",
            if ordinary != inv { "  <- ordinary gcd wrong" } else { "" }
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
