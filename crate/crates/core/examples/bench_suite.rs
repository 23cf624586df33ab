//! A small benchmark matrix: grid ladder with fixed `c` and a failure-rate
//! case.

use welzl::bench::{run_suite, Suite};

const SUITE: &str = r#"
[[case]]
family = "grid"
sizes = [4096, 16384, 65536, 131072]
seeds = [1, 2, 3]
c = 2.0
repeats = 5

[[case]]
family = "grid"
sizes = [4096]
seeds = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19]
c = 2.0

[[case]]
family = "bounded_degree"
sizes = [10000]
seeds = [1, 2]
c = "auto"
degree = 3
"#;

fn main() -> welzl::Result<()> {
    let report = run_suite(&Suite::parse(SUITE)?);
    print!("{}", report.summary());
    Ok(())
}
