//! Neighborhood cover from a low-crossing order, with its audit.

use welzl::cover::{audit_cover, build_cover, overlap_target};
use welzl::engine::{with_unknown_c, SearchOptions};
use welzl::generators::gen_grid;

fn main() -> welzl::Result<()> {
    let graph = gen_grid(64, 64)?;
    let found = with_unknown_c(&graph, 2, SearchOptions::default())?;
    let cover = build_cover(&graph, &found.order)?;
    let audit = audit_cover(&graph, &cover, overlap_target(found.c_used, graph.num_elements()))?;
    println!(
        "c_used={} clusters={} coverage={} max_weak_diameter={:?} overlap={} target={:.0}",
        found.c_used,
        audit.num_clusters,
        audit.coverage,
        audit.max_weak_diameter,
        audit.overlap,
        audit.overlap_target
    );
    Ok(())
}
