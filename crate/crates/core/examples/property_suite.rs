//! A quick run of the property suite at small sizes.

use lmconvex::suite::{run_suite, SuiteConfig};

fn main() -> Result<(), lmconvex::Error> {
    let cfg = SuiteConfig {
        max_points: 1,
        lattices: vec!["2".into(), "chain3".into()],
        samples: 100,
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg)?;
    for o in &report.outcomes {
        println!("{:22} {:4} {:>7} cases", o.name, if o.passed() { "ok" } else { "FAIL" }, o.cases);
    }
    println!("all passed: {}", report.passed());
    Ok(())
}
