mod common;

use common::*;
use rand::Rng;
use welzl::bench::{run_suite, Suite};
use welzl::cover::{audit_cover, build_cover, overlap_target};
use welzl::engine::compute_order_linear;
use welzl::generators::{
    add_twins, add_twins_mapped, gen_bounded_degree, gen_grid, gen_halfplane, gen_halfplane_instance, gen_prefix,
    halfplane_system, Halfplane,
};
use welzl::verify::{crossing_number, min_crossing_exhaustive, primal_trace_count, shatter_probe, ProbeMode};
use welzl::{Order, SetSystem};

#[test]
fn prefix_exact_probe_counts_k_plus_one() {
    let sys = gen_prefix(5).unwrap();
    let probe = shatter_probe(&sys, ProbeMode::Exact, &[3], 1).unwrap();
    assert_eq!(probe.primal[0].count, 4);
    let sys = gen_prefix(6).unwrap();
    let sizes: Vec<usize> = (1..=6).collect();
    let probe = shatter_probe(&sys, ProbeMode::Exact, &sizes, 1).unwrap();
    for t in &probe.primal {
        assert_eq!(t.count, t.k + 1, "k = {}", t.k);
    }
    assert!(probe.exact);
    assert_eq!(probe.c_hat, 2.0);
}

#[test]
fn prefix_natural_order_crosses_once() {
    for n in 2..60 {
        let sys = gen_prefix(n).unwrap();
        assert_eq!(crossing_number(&sys, &Order::identity(n)).unwrap().max, 1, "n = {n}");
    }
}

#[test]
fn neighborhood_systems_are_self_dual() {
    for sys in [gen_grid(2, 2).unwrap(), gen_grid(7, 9).unwrap(), gen_bounded_degree(200, 5, 3).unwrap()] {
        assert_eq!(sys.dual(), sys);
    }
}

#[test]
fn halfplane_traces_bounded_by_line_arrangement() {
    // halfplanes cut at most k² − k + 2 subsets out of k points in general position
    let mut r = rng(17);
    let inst = gen_halfplane_instance(300, 400, 5).unwrap();
    let sys = halfplane_system(&inst.points, &inst.halfplanes).unwrap();
    for _ in 0..300 {
        let k = r.random_range(1..12);
        let subset = welzl::sample::uniform_sample(300, k, &mut r).unwrap();
        assert!(primal_trace_count(&sys, &subset) <= k * k - k + 2);
    }
    let small = gen_halfplane(8, 20, 1).unwrap();
    let sizes: Vec<usize> = (1..=8).collect();
    let probe = shatter_probe(&small, ProbeMode::Exact, &sizes, 2).unwrap();
    for t in &probe.primal {
        assert!(t.count <= t.k * t.k - t.k + 2);
    }
}

#[test]
fn halfplane_membership_matches_geometry() {
    let inst = gen_halfplane_instance(50, 30, 8).unwrap();
    let sys = halfplane_system(&inst.points, &inst.halfplanes).unwrap();
    for (s, h) in inst.halfplanes.iter().enumerate() {
        for (e, &p) in inst.points.iter().enumerate() {
            let inside = p.0 * h.normal.0 + p.1 * h.normal.1 <= h.offset;
            assert_eq!(sys.contains(s, e), inside);
        }
    }
    let empty = Halfplane { normal: (0.0, 1.0), offset: -10.0 };
    assert!(halfplane_system(&inst.points, &[empty]).unwrap().members(0).is_empty());
}

#[test]
fn twins_keep_the_exhaustive_minimum() {
    let mut r = rng(21);
    for _ in 0..40 {
        let n = r.random_range(1..=4);
        let m = r.random_range(1..=5);
        let sys = random_system(&mut r, n, m, 0.5);
        let twinned = add_twins(&sys, 2, r.random()).unwrap();
        assert_eq!(min_crossing_exhaustive(&sys).unwrap().0, min_crossing_exhaustive(&twinned).unwrap().0);
    }
}

#[test]
fn twin_copies_share_neighborhoods() {
    let sys = gen_grid(5, 6).unwrap();
    let (big, origin) = add_twins_mapped(&sys, 3, 2).unwrap();
    assert!((30..=90).contains(&big.num_elements()));
    assert!(origin.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(origin.first(), Some(&0));
    assert_eq!(origin.last(), Some(&29));
    for (e, &o) in origin.iter().enumerate() {
        assert_eq!(big.sets_of(e), sys.sets_of(o));
    }
}

#[test]
fn grid_cover_end_to_end() {
    let sys = gen_grid(64, 64).unwrap();
    let run = compute_order_linear(&sys, 4.0, 7).unwrap();
    let (order, trace) = expect_order(run);
    let report = crossing_number(&sys, &order).unwrap();
    assert!(report.max <= 27648);
    assert!(trace.num_iterations() <= 11);
    let cover = build_cover(&sys, &order).unwrap();
    let audit = audit_cover(&sys, &cover, overlap_target(4.0, 4096)).unwrap();
    assert!(audit.coverage);
    assert!(audit.max_weak_diameter.unwrap() <= 4);
    assert_eq!(audit.overlap_target, 1.0 + 12.0 * 16.0 * 144.0);
}

#[test]
fn cover_from_random_order_on_random_graph() {
    let mut r = rng(5);
    for _ in 0..30 {
        let sys = gen_bounded_degree(60, 3, r.random()).unwrap();
        let seq = random_permutation(&mut r, 60);
        let cover = build_cover(&sys, &Order::permutation(60, &seq).unwrap()).unwrap();
        let audit = audit_cover(&sys, &cover, 1.0).unwrap();
        assert!(audit.passed(), "{audit:?}");
        assert!(audit.diameter_exact);
    }
}

#[test]
fn bench_grid_ladder_row_count() {
    let suite = Suite::parse(
        "[[case]]\nfamily = \"grid\"\nsizes = [4096, 16384, 65536]\nseeds = [1, 2, 3, 4, 5]\nc = \"auto\"\n",
    )
    .unwrap();
    let report = run_suite(&suite);
    assert_eq!(report.rows.len(), 15);
    assert_eq!(report.aggregates.len(), 3);
    for row in &report.rows {
        assert_eq!(row.pass, Some(true), "{row:?}");
        assert_eq!(row.pass, Some(row.crossing_max.unwrap() as f64 <= row.bound.unwrap()));
    }
    let again = run_suite(&suite);
    let keys = |rs: &[welzl::bench::BenchRow]| rs.iter().map(|r| r.reproducible_key()).collect::<Vec<_>>();
    assert_eq!(keys(&report.rows), keys(&again.rows));
}

#[test]
fn empty_and_isolated_structure() {
    let sys = SetSystem::from_edges(3, 0, Vec::new()).unwrap();
    assert_eq!(sys.size_norm(), 3);
    let run = compute_order_linear(&sys, 1.0, 0).unwrap();
    assert!(run.order.unwrap().is_total());
}
