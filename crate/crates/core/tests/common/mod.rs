#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use welzl::engine::{Run, RunTrace};
use welzl::{Order, SetSystem};

/// Crossings of every set, by scanning all adjacent pairs of `seq` against
/// a dense membership table.
pub fn naive_crossings(sys: &SetSystem, seq: &[usize]) -> Vec<usize> {
    (0..sys.num_sets())
        .map(|s| {
            let mut inside = vec![false; sys.num_elements()];
            for &e in sys.members(s) {
                inside[e] = true;
            }
            seq.windows(2).filter(|w| inside[w[0]] != inside[w[1]]).count()
        })
        .collect()
}

/// Dense neighborhood of `v` on one side as a sorted vector.
pub fn nbhd(sys: &SetSystem, sets_side: bool, v: usize) -> Vec<usize> {
    if sets_side {
        sys.members(v).to_vec()
    } else {
        sys.sets_of(v).to_vec()
    }
}

pub fn sym_diff(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| !b.contains(x)).count() + b.iter().filter(|x| !a.contains(x)).count()
}

/// Random system with each incidence present with probability `p`.
pub fn random_system(rng: &mut ChaCha8Rng, n: usize, m: usize, p: f64) -> SetSystem {
    let mut edges = Vec::new();
    for s in 0..m {
        for e in 0..n {
            if rng.random::<f64>() < p {
                edges.push((s, e));
            }
        }
    }
    SetSystem::from_edges(n, m, edges).unwrap()
}

/// Random system where sets are copied and perturbed, so that twins and near
/// twins actually occur.
pub fn clustered_system(rng: &mut ChaCha8Rng, n: usize, m: usize) -> SetSystem {
    let protos = rng.random_range(1..=m.max(1));
    let base: Vec<Vec<usize>> = (0..protos).map(|_| (0..n).filter(|_| rng.random::<f64>() < 0.4).collect()).collect();
    let sets: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let mut s = base[rng.random_range(0..protos)].clone();
            if rng.random::<f64>() < 0.5 && n > 0 {
                let flip = rng.random_range(0..n);
                if let Some(i) = s.iter().position(|&x| x == flip) {
                    s.remove(i);
                } else {
                    s.push(flip);
                }
            }
            s
        })
        .collect();
    SetSystem::from_sets(n, &sets).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

/// Proptest strategy for `(system, seed)` with both sides in `1..=max`.
pub fn arb_system(max: usize) -> impl Strategy<Value = (SetSystem, u64)> {
    (1..=max, 1..=max, any::<u64>(), 0.05f64..0.7).prop_map(|(n, m, seed, p)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = if seed % 2 == 0 { random_system(&mut rng, n, m, p) } else { clustered_system(&mut rng, n, m) };
        (sys, seed)
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Order from a run, panicking with the trace when the run failed.
pub fn expect_order(run: Run) -> (Order, RunTrace) {
    let trace = run.trace;
    match run.order {
        Some(o) => (o, trace),
        None => panic!("run failed: {:?}", trace.outcome),
    }
}

/// Random partition of the sets with a random representative per class.
pub fn random_set_partition(rng: &mut ChaCha8Rng, m: usize) -> welzl::Partition {
    let classes = rng.random_range(1..=m.max(1));
    let mut raw: Vec<usize> = (0..m).map(|_| rng.random_range(0..classes)).collect();
    // compact to contiguous ids
    let mut remap = vec![usize::MAX; classes];
    let mut next = 0;
    for c in raw.iter_mut() {
        if remap[*c] == usize::MAX {
            remap[*c] = next;
            next += 1;
        }
        *c = remap[*c];
    }
    let mut members = vec![Vec::new(); next];
    for (b, &c) in raw.iter().enumerate() {
        members[c].push(b);
    }
    let reps = members.iter().map(|ms| ms[rng.random_range(0..ms.len())]).collect();
    welzl::Partition::new(welzl::Side::Sets, raw, reps).unwrap()
}

/// Crossing invariants shared by the property tests and the acceptance run.
/// Returns an error message on the first violation.
pub fn check_duplication(sys: &SetSystem, seq: &[usize], a: usize) -> Result<(), String> {
    let n = sys.num_elements();
    let mut sets: Vec<Vec<usize>> = (0..sys.num_sets()).map(|s| sys.members(s).to_vec()).collect();
    for s in sys.sets_of(a) {
        sets[*s].push(n);
    }
    let bigger = SetSystem::from_sets(n + 1, &sets).unwrap();
    let pos = seq.iter().position(|&v| v == a).unwrap();
    let mut longer = seq.to_vec();
    longer.insert(pos + 1, n);
    let before = naive_crossings(sys, seq);
    let after = naive_crossings(&bigger, &longer);
    if before != after {
        return Err(format!("duplicating {a} changed crossings {before:?} -> {after:?}"));
    }
    Ok(())
}

pub fn check_near_twin_increment(sys: &SetSystem, p: &welzl::Partition, seq: &[usize]) -> Result<(), String> {
    let k = sys.near_twin_max_diff(p).unwrap();
    let per = naive_crossings(sys, seq);
    let rep_max = p.representatives().iter().map(|&r| per[r]).max().unwrap_or(0);
    let full_max = per.iter().copied().max().unwrap_or(0);
    for (b, &x) in per.iter().enumerate() {
        let r = p.representative(p.class_of(b));
        if x > per[r] + 2 * k {
            return Err(format!("set {b}: {x} > {} + 2*{k}", per[r]));
        }
    }
    if full_max > rep_max + 2 * k {
        return Err(format!("max {full_max} > {rep_max} + 2*{k}"));
    }
    Ok(())
}
