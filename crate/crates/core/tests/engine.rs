mod common;

use common::*;
use rand::Rng;
use welzl::engine::{
    self, boosted, compute_order_linear, compute_order_poly, iteration_budget, linear_thresholds, search_c,
    stream_rng, AnyEngine, Engine, EngineKind, LinearSchedule, OrderEngine, Outcome, Run, Schedule, SearchOptions,
    Thresholds,
};
use welzl::generators::{gen_bounded_degree, gen_grid, gen_halfplane, gen_prefix};
use welzl::verify::crossing_number;
use welzl::{Error, LinearityParams, Order, SetSystem};

/// Real engine whose result is replaced by `false` with probability
/// `fail_p`, decided by an rng independent of the engine's.
struct Flaky {
    inner: Engine<LinearSchedule>,
    fail_p: f64,
}

impl OrderEngine for Flaky {
    fn run(&self, sys: &SetSystem, seed: u64, stream: u64) -> Run {
        let mut run = self.inner.run(sys, seed, stream);
        if stream_rng(seed ^ 0xF1A4, stream).random::<f64>() < self.fail_p {
            run.order = None;
        }
        run
    }
}

/// Succeeds only at `c ≥ threshold`.
struct Threshold {
    c: f64,
    threshold: f64,
}

impl OrderEngine for Threshold {
    fn run(&self, sys: &SetSystem, seed: u64, stream: u64) -> Run {
        let mut run = Engine::linear(self.c).unwrap().run(sys, seed, stream);
        if self.c < self.threshold {
            run.order = None;
        }
        run
    }
}

#[test]
fn boosting_failure_rate_is_p_cubed() {
    let sys = gen_grid(4, 4).unwrap();
    let engine = Flaky { inner: Engine::linear(1.0).unwrap(), fail_p: 0.5 };
    let trials = 20_000u64;
    let mut failures = 0u64;
    let mut used = 0usize;
    for seed in 0..trials {
        let b = boosted(&engine, &sys, 3, seed).unwrap();
        used += b.traces.len();
        if b.order.is_none() {
            failures += 1;
            assert_eq!(b.traces.len(), 3);
        }
    }
    let p = 0.125;
    let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
    assert!((failures as f64 - trials as f64 * p).abs() < 4.0 * sigma, "failures {failures}");
    // expected trials 1 + 0.5 + 0.25
    let mean_used = used as f64 / trials as f64;
    assert!((mean_used - 1.75).abs() < 0.05, "mean trials {mean_used}");
}

#[test]
fn boosting_stops_at_first_success() {
    let sys = gen_grid(8, 8).unwrap();
    let b = boosted(&Engine::linear(4.0).unwrap(), &sys, 5, 1).unwrap();
    assert_eq!(b.traces.len(), 1);
    assert_eq!(b.traces[0].stream, 0);
    assert!(b.order.is_some());
}

#[test]
fn unknown_c_hits_cap_with_always_false_engine() {
    let sys = gen_grid(4, 4).unwrap();
    let options = SearchOptions { cap: 64.0, ..SearchOptions::default() };
    let mut guesses = Vec::new();
    let err = search_c(&sys, 0, options, |c| {
        guesses.push(c);
        Ok(Threshold { c, threshold: f64::INFINITY })
    })
    .unwrap_err();
    assert!(matches!(err, Error::LinearityCapExceeded { cap } if cap == 64.0));
    assert_eq!(guesses, vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0]);
}

#[test]
fn unknown_c_returns_first_succeeding_guess() {
    let sys = gen_grid(4, 4).unwrap();
    let found = search_c(&sys, 0, SearchOptions::default(), |c| Ok(Threshold { c, threshold: 8.0 })).unwrap();
    assert_eq!(found.c_used, 8.0);
    // three failed trials at c = 1, 2, 4, then one success
    assert_eq!(found.traces.len(), 10);
    assert!(found.order.is_total());
}

#[test]
fn unknown_c_levels_use_distinct_seeds() {
    let sys = gen_grid(4, 4).unwrap();
    let found = search_c(&sys, 5, SearchOptions::default(), |c| Ok(Threshold { c, threshold: 4.0 })).unwrap();
    let seeds: Vec<u64> = found.traces.iter().map(|t| t.seed).collect();
    assert_eq!(seeds[0], engine::level_seed(5, 0));
    assert_eq!(seeds[3], engine::level_seed(5, 1));
    assert_eq!(seeds[6], engine::level_seed(5, 2));
    assert_ne!(seeds[0], seeds[3]);
}

#[test]
fn unknown_c_on_grid_succeeds_within_bound() {
    let sys = gen_grid(32, 32).unwrap();
    let found = engine::with_unknown_c(&sys, 11, SearchOptions::default()).unwrap();
    let report = crossing_number(&sys, &found.order).unwrap();
    assert!(report.max as f64 <= engine::linear_crossing_bound(found.c_used, 1024));
}

#[test]
fn runs_are_deterministic() {
    let sys = gen_bounded_degree(3000, 3, 4).unwrap();
    for c in [1.0, 2.0, 4.0] {
        let a = compute_order_linear(&sys, c, 99).unwrap();
        let b = compute_order_linear(&sys, c, 99).unwrap();
        assert_eq!(a.trace.to_json(), b.trace.to_json());
        assert_eq!(a.order.map(|o| o.to_text()), b.order.map(|o| o.to_text()));
    }
}

#[test]
fn streams_differ() {
    let sys = gen_grid(64, 64).unwrap();
    let e = Engine::linear(2.0).unwrap();
    let a = e.run(&sys, 1, 0).trace;
    let b = e.run(&sys, 1, 1).trace;
    assert_ne!(a.iterations, b.iterations);
}

#[test]
fn iteration_bound_across_families_and_engines() {
    let instances = vec![
        gen_grid(64, 64).unwrap(),
        gen_grid(3, 700).unwrap(),
        gen_prefix(600).unwrap(),
        gen_bounded_degree(4000, 4, 1).unwrap(),
        gen_halfplane(1000, 1000, 2).unwrap(),
    ];
    for sys in &instances {
        for seed in 0..5 {
            for c in [1.0, 1.5, 2.0, 4.0] {
                let run = compute_order_linear(sys, c, seed).unwrap();
                assert!(run.trace.within_iteration_bound(), "{:?}", run.trace.iterations.len());
                assert!(run.trace.num_iterations() <= iteration_budget(sys.num_elements()));
                if run.order.is_none() {
                    assert!(!matches!(run.trace.outcome, Outcome::Success));
                }
            }
            let run = compute_order_poly(sys, 1.0, 2, seed).unwrap();
            assert!(run.trace.within_iteration_bound());
        }
    }
}

#[test]
fn successful_orders_meet_their_bound() {
    let instances =
        vec![gen_grid(64, 64).unwrap(), gen_prefix(600).unwrap(), gen_bounded_degree(4000, 3, 9).unwrap()];
    for sys in &instances {
        for seed in 0..5 {
            for c in [1.0, 2.0, 3.0] {
                let run = compute_order_linear(sys, c, seed).unwrap();
                if let Some(order) = run.order {
                    assert!(order.is_total());
                    let max = crossing_number(sys, &order).unwrap().max;
                    assert!(max as f64 <= run.trace.crossing_bound, "{max} > {}", run.trace.crossing_bound);
                }
            }
        }
    }
}

#[test]
fn linear_shrinkage_on_prefix_system() {
    // prefix systems have π(k), π*(k) ≤ k + 1 ≤ 2k
    let sys = gen_prefix(2000).unwrap();
    let c = 2.0;
    let mut iterations = 0;
    for seed in 0..10 {
        let run = compute_order_linear(&sys, c, seed).unwrap();
        for r in &run.trace.iterations {
            iterations += 1;
            assert!((r.a_next as f64) < r.a_size as f64 / 2.0 + c * c, "{} -> {}", r.a_size, r.a_next);
        }
        assert!(run.order.is_some(), "{:?}", run.trace.outcome);
    }
    assert!(iterations >= 10);
}

#[test]
fn linear_shrinkage_on_grid() {
    // grid neighborhoods have at most 4 members: π(k), π*(k) ≤ 1 + 4k ≤ 5k
    let c = 5.0;
    let mut iterations = 0;
    for (rows, cols) in [(128, 128), (256, 512)] {
        let sys = gen_grid(rows, cols).unwrap();
        for seed in 0..3 {
            let run = compute_order_linear(&sys, c, seed).unwrap();
            for r in &run.trace.iterations {
                iterations += 1;
                assert!((r.a_next as f64) < r.a_size as f64 / 2.0 + c * c);
            }
        }
    }
    assert!(iterations >= 6);
}

#[test]
fn poly_halving_on_large_grid() {
    // π(k), π*(k) ≤ 1 + 4k ≤ 2k² for grids, so (c, d) = (2, 2) is valid; the
    // guard 4·2³·8⁴·log₂n ≈ 2.9·10⁶ needs a grid above that size
    let sys = gen_grid(2048, 2048).unwrap();
    let run = compute_order_poly(&sys, 2.0, 2, 1).unwrap();
    assert!(run.trace.num_iterations() >= 1);
    for r in &run.trace.iterations {
        assert!(r.a_next * 2 <= r.a_size, "{} -> {}", r.a_size, r.a_next);
    }
    assert!(run.trace.within_iteration_bound());
}

/// Linear thresholds reported under the polynomial engine's name.
struct LinearInDisguise(f64);

impl Schedule for LinearInDisguise {
    fn kind(&self) -> EngineKind {
        EngineKind::Poly
    }
    fn c(&self) -> f64 {
        self.0
    }
    fn d(&self) -> u32 {
        2
    }
    fn thresholds(&self, n: usize, a_cur: usize) -> Thresholds {
        linear_thresholds(self.0, n, a_cur)
    }
}

#[test]
fn schedules_only_differ_in_thresholds() {
    let sys = gen_grid(40, 50).unwrap();
    for seed in 0..10 {
        let a = Engine::linear(1.0).unwrap().run(&sys, seed, 0);
        let b = Engine::new(LinearInDisguise(1.0)).run(&sys, seed, 0);
        assert_eq!(a.order, b.order);
        assert_eq!(a.trace.iterations, b.trace.iterations);
    }
}

#[test]
fn unchecked_runs_agree_with_checked_successes() {
    let sys = gen_grid(64, 64).unwrap();
    for seed in 0..10 {
        let checked = Engine::linear(1.5).unwrap().run(&sys, seed, 0);
        let unchecked = Engine::linear(1.5).unwrap().without_guarantee_check().run(&sys, seed, 0);
        if checked.order.is_some() {
            assert_eq!(checked.order, unchecked.order);
        }
        assert!(unchecked.order.is_some() || unchecked.trace.outcome == Outcome::IterationBudgetExceeded);
    }
}

#[test]
fn any_engine_routes_by_d() {
    assert!(matches!(AnyEngine::for_params(LinearityParams::new(2.0, 1).unwrap()).unwrap(), AnyEngine::Linear(_)));
    assert!(matches!(AnyEngine::for_params(LinearityParams::new(2.0, 3).unwrap()).unwrap(), AnyEngine::Poly(_)));
    assert!(Engine::poly(2.0, 1).is_err());
}

#[test]
fn c4_runs_base_construction_only() {
    let sys = gen_grid(2, 2).unwrap();
    let run = compute_order_linear(&sys, 1.0, 0).unwrap();
    assert_eq!(run.trace.num_iterations(), 0);
    assert_eq!(run.order.unwrap(), Order::identity(4));
}

#[test]
fn tiny_inputs_below_guard() {
    // |A| ≤ 12·log₂|A| for |A| ≤ 64 at c = 1
    for n in [1usize, 2, 10, 40, 64] {
        let sys = gen_prefix(n).unwrap();
        let run = compute_order_linear(&sys, 1.0, 0).unwrap();
        assert_eq!(run.trace.num_iterations(), 0, "n = {n}");
        assert!(run.order.unwrap().is_total());
    }
}

#[test]
fn random_instances_return_permutations_or_false() {
    let mut r = rng(8);
    for _ in 0..200 {
        let n = r.random_range(1..300);
        let m = r.random_range(1..300);
        let sys = clustered_system(&mut r, n, m);
        let seed = r.random::<u64>();
        let run = compute_order_linear(&sys, 1.0, seed).unwrap();
        assert!(run.trace.within_iteration_bound());
        if let Some(o) = run.order {
            assert!(o.is_total());
            let max = naive_crossings(&sys, &o.to_vec()).into_iter().max().unwrap_or(0);
            assert!(max as f64 <= run.trace.crossing_bound);
        }
    }
}
