// Runs the built-in invariant suites on one Dynkin datum.
//
// cargo run --example self_check

use heartfan::check::run_checks;
use heartfan::dynkin::DynkinData;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let data = DynkinData::parse("E7~", &[2, 3, 5, 6, 7])?;
    let report = run_checks(&data, 1, 100_000)?;
    for s in &report.suites {
        println!("{:<28} {}  {}", s.name, if s.passed { "ok  " } else { "FAIL" }, s.detail);
    }
    assert!(report.passed);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
