//! Reading and writing the text and JSON instance formats.

use welzl::generators::GenSpec;
use welzl::io::{parse_any, to_json, to_ssys_with_comment};
use welzl::order::Order;

fn main() -> welzl::Result<()> {
    let spec = GenSpec::new(welzl::generators::Family::Grid { rows: 2, cols: 2 }, 0);
    let sys = spec.generate()?;
    let text = to_ssys_with_comment(&sys, &spec.header());
    print!("{text}");
    let json = to_json(&sys);
    println!("{json}");
    assert_eq!(parse_any(&text)?, parse_any(&json)?);

    let order = Order::permutation(4, &[1, 2, 0, 3])?;
    print!("{}", order.to_text());
    assert_eq!(Order::parse(&order.to_text(), 4)?, order);
    Ok(())
}
