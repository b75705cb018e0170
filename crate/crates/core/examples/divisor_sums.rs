// The bound Σ_{q|k} |c_q^(s)(n)| <= n 2^ω(k), its exact value and when the
// bound is attained.

use cohen_ramanujan::arith_core::radical;
use cohen_ramanujan::identities::{verify_equality_case, DivisorSumRecord};
use cohen_ramanujan::Natural;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>4} {:>2} | {:>6} {:>6} {:>6}", "k", "n", "s", "h", "exact", "bound");
    for (k, n, s) in [(2u64, 4u64, 2u32), (4, 2, 1), (6, 1, 1), (12, 36, 2), (30, 8, 3), (72, 5184, 2)] {
        let rec = DivisorSumRecord::compute(&Natural::from(k), &Natural::from(n), s)?;
        assert!(rec.bound_holds() && rec.equality_holds());
        println!(
            "{k:>3} {n:>4} {s:>2} | {:>6} {:>6} {:>6}{}",
            rec.h_value.to_string(),
            rec.grytczuk_value.to_string(),
            rec.delange_bound.to_string(),
            if rec.is_tight() { "  tight" } else { "" }
        );
    }

    // n = m^s with m rad(m) | k attains the bound.
    for m in [2u64, 6, 12] {
        let base = m * radical(&Natural::from(m))?.to_u64().unwrap();
        for s in 1..=3 {
            let ok = verify_equality_case(&Natural::from(m), &Natural::from(base), s)?;
            assert_eq!(ok, Some(true));
            println!("m={m} k={base} s={s}: bound attained");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
