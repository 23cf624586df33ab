//! Halfplane range space: estimate `c` for `d = 2` and run the polynomial
//! engine.

use welzl::engine::{compute_order_poly, poly_thresholds};
use welzl::generators::gen_halfplane;
use welzl::verify::{crossing_number, shatter_probe, ProbeMode};

fn main() -> welzl::Result<()> {
    let sys = gen_halfplane(4096, 4096, 12)?;
    let probe = shatter_probe(&sys, ProbeMode::Sampled { trials: 200, seed: 3 }, &[1, 2, 4, 8, 16, 32], 2)?;
    for (p, q) in probe.primal.iter().zip(&probe.dual) {
        println!("k={:>2} primal>={:>4} dual>={:>4}", p.k, p.count, q.count);
    }
    let c = probe.c_hat;
    let run = compute_order_poly(&sys, c, 2, 1)?;
    let max = run.order.as_ref().map(|o| crossing_number(&sys, o)).transpose()?.map(|r| r.max);
    println!(
        "c_hat={c:.3} guard={:.0} iterations={} crossing={:?} bound={:.0}",
        poly_thresholds(c, 2, sys.num_elements(), sys.num_elements()).guard,
        run.trace.num_iterations(),
        max,
        run.trace.crossing_bound
    );
    Ok(())
}
