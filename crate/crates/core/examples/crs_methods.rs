// Evaluates c_q^(s)(n) with all four evaluators and prints a small table.

use cohen_ramanujan::cr_sum::{crs_by, crs_checked, CrsQuery, Method, DIRECT_LIMIT};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>4} {:>2} | {:>8} {:>8} {:>14} {:>8}", "q", "n", "s", "direct", "mobius", "multiplicative", "hoelder");
    for (q, n, s) in [(1u64, 5u64, 3u32), (2, 1, 1), (2, 4, 2), (4, 2, 1), (4, 16, 2), (12, 9, 1), (18, 72, 2), (9, 27, 3)] {
        let query = CrsQuery::new(q, n, s)?;
        let values = Method::ALL
            .iter()
            .map(|&m| crs_by(&query, m, DIRECT_LIMIT).map(|v| v.value))
            .collect::<Result<Vec<_>, _>>()?;
        assert!(values.windows(2).all(|w| w[0] == w[1]));
        println!(
            "{q:>3} {n:>4} {s:>2} | {:>8} {:>8} {:>14} {:>8}",
            values[0], values[1], values[2], values[3]
        );
    }

    // Large arguments stay exact on the multiplicative path.
    let big = CrsQuery::new(720u32, "1000000000000000000000000".parse::<cohen_ramanujan::Natural>()?, 2)?;
    println!("c_720^(2)(10^24) = {}", crs_checked(&big)?.value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
