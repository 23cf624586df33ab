//! Ground-truth oracles: crossing numbers, exhaustive minima, bound
//! certification and shatter-function probes.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{linear_crossing_bound, poly_crossing_bound};
use crate::error::{Error, Result};
use crate::order::Order;
use crate::refine::{self, NONE};
use crate::sample;
use crate::setsystem::{LinearityParams, Partition, SetSystem};

/// Largest ground set accepted by [`min_crossing_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 9;
/// Largest side accepted by an exact [`shatter_probe`].
pub const EXACT_PROBE_LIMIT: usize = 20;

/// Crossing counts of an order, per set and overall.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingReport {
    /// Crossings of every set, indexed by set id.
    pub per_set: Vec<usize>,
    /// The crossing number of the order.
    pub max: usize,
    pub bound: Option<f64>,
    pub pass: Option<bool>,
}

impl CrossingReport {
    /// Attaches a bound and records whether `max` stays within it.
    pub fn with_bound(mut self, bound: f64) -> Self {
        self.pass = Some(self.max as f64 <= bound);
        self.bound = Some(bound);
        self
    }

    pub fn passed(&self) -> bool {
        self.pass.unwrap_or(true)
    }

    /// One `<set_id> <count>` line per set, then
    /// `max=<v> bound=<b> pass=<0|1>` (`bound=inf` when none is attached).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, c) in self.per_set.iter().enumerate() {
            writeln!(out, "{s} {c}").unwrap();
        }
        let bound = self.bound.map_or_else(|| "inf".to_string(), |b| b.to_string());
        writeln!(out, "max={} bound={} pass={}", self.max, bound, self.passed() as u8).unwrap();
        out
    }
}

/// Exact per-set crossing counts in `O(‖S‖)`.
///
/// Walking the order once, each set's members are seen in position order, so
/// its maximal runs of consecutive positions can be counted on the fly. A set
/// with `r` runs crosses `2r` times, minus one if a run starts at the first
/// position and minus one if a run ends at the last.
pub fn crossing_number(sys: &SetSystem, order: &Order) -> Result<CrossingReport> {
    let n = sys.num_elements();
    if order.universe() != n || !order.is_total() {
        return Err(Error::NotAPermutation(format!(
            "order has {} of {} ids over a universe of {}",
            order.len(),
            n,
            order.universe()
        )));
    }
    let m = sys.num_sets();
    let mut runs = vec![0usize; m];
    let mut last = vec![NONE; m];
    let mut starts_at_front = vec![false; m];
    for (p, e) in order.iter().enumerate() {
        for &s in sys.sets_of(e) {
            if last[s] == NONE || last[s] + 1 != p {
                runs[s] += 1;
                if p == 0 {
                    starts_at_front[s] = true;
                }
            }
            last[s] = p;
        }
    }
    let per_set: Vec<usize> = (0..m)
        .map(|s| {
            if runs[s] == 0 {
                return 0;
            }
            2 * runs[s] - starts_at_front[s] as usize - (last[s] == n - 1) as usize
        })
        .collect();
    let max = per_set.iter().copied().max().unwrap_or(0);
    Ok(CrossingReport { per_set, max, bound: None, pass: None })
}

/// The minimum crossing number over all orders of a tiny system, with a
/// witness. Enumerates permutations, skipping reversals.
pub fn min_crossing_exhaustive(sys: &SetSystem) -> Result<(usize, Order)> {
    let n = sys.num_elements();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge { size: n, limit: EXHAUSTIVE_LIMIT });
    }
    if n <= 1 {
        return Ok((0, Order::identity(n)));
    }
    let masks: Vec<u16> = (0..sys.num_sets())
        .map(|s| sys.members(s).iter().fold(0u16, |m, &e| m | (1 << e)))
        .filter(|&m| m != 0 && m.count_ones() as usize != n)
        .collect();
    let cost = |perm: &[usize]| -> usize {
        masks
            .iter()
            .map(|&m| perm.windows(2).filter(|w| ((m >> w[0]) ^ (m >> w[1])) & 1 == 1).count())
            .max()
            .unwrap_or(0)
    };

    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = cost(&perm);
    let mut witness = perm.clone();
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n && best > 0 {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if perm[0] < perm[n - 1] {
                let v = cost(&perm);
                if v < best {
                    best = v;
                    witness.clone_from(&perm);
                }
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok((best, Order::permutation(n, &witness)?))
}

/// Crossing bound for the given parameters: `12c²·log₂²n` for `d = 1`, the
/// polynomial engine's explicit bound for `d ≥ 2`.
pub fn crossing_bound(params: LinearityParams, n: usize) -> f64 {
    if params.d <= 1 {
        linear_crossing_bound(params.c, n)
    } else {
        poly_crossing_bound(params.c, params.d, n)
    }
}

/// Crossing report with the bound for `params` attached.
pub fn certify(sys: &SetSystem, order: &Order, params: LinearityParams) -> Result<CrossingReport> {
    Ok(crossing_number(sys, order)?.with_bound(crossing_bound(params, sys.num_elements())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearTwinAudit {
    pub pass: bool,
    pub observed: usize,
}

/// Checks that `partition` is a `k`-near twin partition of the sets.
pub fn audit_near_twin(sys: &SetSystem, partition: &Partition, k: f64) -> Result<NearTwinAudit> {
    let observed = sys.near_twin_max_diff(partition)?;
    Ok(NearTwinAudit { pass: observed as f64 <= k, observed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeMode {
    /// Every subset of each requested size; both sides must have at most
    /// [`EXACT_PROBE_LIMIT`] ids.
    Exact,
    /// `trials` uniform subsets per size; the counts are lower bounds.
    Sampled { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSample {
    pub k: usize,
    /// Largest number of distinct traces observed on a `k`-subset.
    pub count: usize,
}

/// Observed primal and dual trace counts and the implied constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShatterProbe {
    /// `false` when counts come from sampling and are only lower bounds.
    pub exact: bool,
    pub d: u32,
    pub primal: Vec<TraceSample>,
    pub dual: Vec<TraceSample>,
    /// Smallest `c ≥ 1` with every observed count `≤ c·k^d`.
    pub c_hat: f64,
}

/// Number of distinct traces the sets of `sys` leave on `subset`.
pub fn primal_trace_count(sys: &SetSystem, subset: &[usize]) -> usize {
    let m = sys.num_sets();
    let sets: Vec<usize> = (0..m).collect();
    let mask = vec![true; m];
    refine::refine(m, &sets, &mask, subset.iter().map(|&a| sys.sets_of(a))).reps.len()
}

/// Probes the primal and dual shatter functions at the requested sizes.
pub fn shatter_probe(sys: &SetSystem, mode: ProbeMode, sizes: &[usize], d: u32) -> Result<ShatterProbe> {
    let dual = sys.dual();
    let (primal, dual_samples, exact) = match mode {
        ProbeMode::Exact => {
            let too_big = sys.num_elements().max(sys.num_sets());
            if too_big > EXACT_PROBE_LIMIT {
                return Err(Error::TooLarge { size: too_big, limit: EXACT_PROBE_LIMIT });
            }
            (exact_counts(sys, sizes), exact_counts(&dual, sizes), true)
        }
        ProbeMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut sampled = |s: &SetSystem| -> Vec<TraceSample> {
                sizes
                    .iter()
                    .map(|&k| {
                        let k = k.min(s.num_elements());
                        let count = (0..trials.max(1))
                            .map(|_| {
                                let subset = sample::uniform_sample(s.num_elements(), k, &mut rng).expect("k clamped");
                                primal_trace_count(s, &subset)
                            })
                            .max()
                            .unwrap_or(0);
                        TraceSample { k, count }
                    })
                    .collect()
            };
            let p = sampled(sys);
            let q = sampled(&dual);
            (p, q, false)
        }
    };
    let c_hat = primal
        .iter()
        .chain(&dual_samples)
        .filter(|t| t.k >= 1)
        .map(|t| t.count as f64 / (t.k as f64).powi(d as i32))
        .fold(1.0, f64::max);
    Ok(ShatterProbe { exact, d, primal, dual: dual_samples, c_hat })
}

fn exact_counts(sys: &SetSystem, sizes: &[usize]) -> Vec<TraceSample> {
    let n = sys.num_elements();
    sizes
        .iter()
        .map(|&k| {
            let k = k.min(n);
            let mut best = 0;
            for_each_combination(n, k, |subset| best = best.max(primal_trace_count(sys, subset)));
            TraceSample { k, count: best }
        })
        .collect()
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
fn for_each_combination<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
