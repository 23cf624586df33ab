//! Doubling search over `c` with boosted runs at each guess.

use welzl::engine::{boosted, with_unknown_c, Engine, SearchOptions};
use welzl::generators::gen_bounded_degree;
use welzl::verify::crossing_number;

fn main() -> welzl::Result<()> {
    let sys = gen_bounded_degree(20_000, 4, 1)?;

    let found = with_unknown_c(&sys, 3, SearchOptions::default())?;
    let report = crossing_number(&sys, &found.order)?;
    println!("c_used={} runs={} crossing={}", found.c_used, found.traces.len(), report.max);
    for t in &found.traces {
        println!("  c={} seed={} stream={} iterations={} {:?}", t.c, t.seed, t.stream, t.num_iterations(), t.outcome);
    }

    // a fixed guess with three independent trials
    let result = boosted(&Engine::linear(1.5)?, &sys, 3, 3)?;
    println!("c=1.5: {} after {} trial(s)", if result.order.is_some() { "order" } else { "false" }, result.traces.len());
    Ok(())
}
