//! Exact and sampled shatter-function probes.

use welzl::generators::{gen_grid, gen_prefix};
use welzl::verify::{shatter_probe, ProbeMode};

fn main() -> welzl::Result<()> {
    let prefix = gen_prefix(12)?;
    let exact = shatter_probe(&prefix, ProbeMode::Exact, &[1, 2, 3, 4, 5, 6], 1)?;
    println!("prefix(12), exact:");
    for t in &exact.primal {
        println!("  k={} traces={}", t.k, t.count);
    }
    println!("  c_hat={}", exact.c_hat);

    let grid = gen_grid(100, 100)?;
    let sampled = shatter_probe(&grid, ProbeMode::Sampled { trials: 500, seed: 1 }, &[1, 2, 4, 8, 16, 64], 1)?;
    println!("grid 100x100, sampled lower bounds:");
    for t in &sampled.primal {
        println!("  k={} traces>={}", t.k, t.count);
    }
    println!("  c_hat>={}", sampled.c_hat);
    Ok(())
}
