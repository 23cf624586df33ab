//! Twin partitions, near-twin audits and twin inflation.

use welzl::generators::{add_twins, gen_grid};
use welzl::verify::{audit_near_twin, min_crossing_exhaustive};
use welzl::{Partition, SetSystem, Side};

fn main() -> welzl::Result<()> {
    let c4 = gen_grid(2, 2)?;
    let p = c4.twin_partition(Side::Elements);
    println!("C4 element classes: {:?}", p.classes());

    // X = {0, 1}, Y = {2} in one class with representative X
    let sys = SetSystem::from_sets(3, &[vec![0, 1], vec![2]])?;
    let merged = Partition::new(Side::Sets, vec![0, 0], vec![0])?;
    for k in [2.0, 3.0] {
        let audit = audit_near_twin(&sys, &merged, k)?;
        println!("k={k}: pass={} observed={}", audit.pass, audit.observed);
    }

    let inflated = add_twins(&c4, 2, 5)?;
    println!(
        "C4 minimum {} / with twins ({} elements) {}",
        min_crossing_exhaustive(&c4)?.0,
        inflated.num_elements(),
        min_crossing_exhaustive(&inflated)?.0
    );
    let big = add_twins(&gen_grid(300, 300)?, 4, 1)?;
    let classes = big.twin_partition(Side::Elements).num_classes();
    println!("inflated grid: {} elements, {} twin classes", big.num_elements(), classes);
    Ok(())
}
