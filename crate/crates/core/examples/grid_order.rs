//! Order a grid's neighborhood system and certify the crossing number.
//!
//! cargo run --release --example grid_order -- 128 128 4

use welzl::engine::compute_order_linear;
use welzl::generators::gen_grid;
use welzl::verify::certify;
use welzl::LinearityParams;

fn main() -> welzl::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let rows = args.first().copied().unwrap_or(64.0) as usize;
    let cols = args.get(1).copied().unwrap_or(64.0) as usize;
    let c = args.get(2).copied().unwrap_or(4.0);

    let sys = gen_grid(rows, cols)?;
    let run = compute_order_linear(&sys, c, 7)?;
    print!("{}", run.trace.to_table());
    let Some(order) = run.order else {
        println!("false: {:?}", run.trace.outcome);
        return Ok(());
    };
    let report = certify(&sys, &order, LinearityParams::linear(c)?)?;
    println!(
        "|A|={} ‖S‖={} iterations={} crossing={} bound={}",
        sys.num_elements(),
        sys.size_norm(),
        run.trace.num_iterations(),
        report.max,
        report.bound.unwrap()
    );
    Ok(())
}
