// Runs every identity check over a grid and writes JSON and CSV reports.

use cohen_ramanujan::cli::sweep::{run_sweep, Check, SweepGrid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid = SweepGrid::new(1..=30, 1..=30, vec![1, 2, 3], Check::ALL.to_vec())?;
    let result = run_sweep(&grid);
    println!("{}/{} checks passed", result.cells_passed, result.cells_total);
    println!("{} observations (reported, not asserted)", result.observations.len());
    assert!(result.is_success());

    let dir = std::env::temp_dir().join("cohen-ramanujan-sweep");
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("report.json"), format!("{:#}", result.to_json()))?;
    result.write_csv(std::fs::File::create(dir.join("report.csv"))?)?;
    println!("reports written to {}", dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
