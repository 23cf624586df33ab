//! Low-crossing ("Welzl") orders for set systems with bounded shatter functions.
//!
//! A set system `(U, F)` is stored as a bipartite incidence structure: ground
//! elements on one side, sets on the other, one edge per membership. Given a
//! system whose primal and dual shatter functions are at most `c·k` (or
//! `c·k^d`), the randomized engines in [`engine`] compute a total order on the
//! ground set whose crossing number is at most `12c²·log²|U|` in
//! `O(‖S‖·log‖S‖)` time, or report failure.
//!
//! ```
//! use welzl::{engine, generators, verify};
//!
//! let grid = generators::gen_grid(16, 16).unwrap();
//! let run = engine::compute_order_linear(&grid, 4.0, 7).unwrap();
//! let order = run.order.expect("grid runs at c = 4 succeed");
//! let report = verify::crossing_number(&grid, &order).unwrap();
//! assert!(report.max as f64 <= engine::linear_crossing_bound(4.0, grid.num_elements()));
//! ```
//!
//! Modules:
//!
//! - [`setsystem`]: the incidence structure, duals, restrictions, twin partitions.
//! - [`sample`]: uniform fixed-size sampling (reservoir sampling).
//! - [`order`]: linked-list orders with O(1) insert-after and reconstruction.
//! - [`engine`]: the linear and polynomial engines, boosting and the unknown-`c` search.
//! - [`verify`]: crossing numbers, exhaustive minima, certification, shatter probes.
//! - [`generators`]: seeded instance families.
//! - [`cover`]: compact neighborhood covers from orders, with an auditor.
//! - [`bench`]: the benchmark harness behind the `welzl bench` command.
//! - [`io`]: the `ssys v1` text format and its JSON equivalent.

pub mod bench;
pub mod cover;
pub mod engine;
pub mod error;
pub mod generators;
pub mod io;
pub mod order;
pub mod sample;
pub mod setsystem;
pub mod verify;

mod refine;

pub use error::{Error, Result};
pub use order::Order;
pub use setsystem::{LinearityParams, Partition, SetSystem, Side};
