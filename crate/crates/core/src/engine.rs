//! Randomized computation of low-crossing orders.
//!
//! One iteration of the main loop:
//!
//! 1. sample `W ⊆ A_cur` uniformly;
//! 2. split `B_cur` into twin classes over `W`, keep representatives `B'`;
//! 3. split `A_cur` into twin classes over `B'`, keep representatives `A'`;
//! 4. check that every set of `B_cur` differs from its representative in at
//!    most `k` active elements, otherwise fail;
//! 5. remember `(v, rep(v))` for every dropped element and continue on
//!    `(A', B')`.
//!
//! Once `A_cur` is small the survivors are laid out by ascending id and the
//! dropped elements are re-inserted directly after their representatives in
//! reverse order. The linear engine ([`LinearSchedule`]) and the polynomial
//! engine ([`PolySchedule`]) share this loop and differ only in their
//! [`Thresholds`].
//!
//! Every returned order satisfies the schedule's crossing bound: the loop
//! guard bounds the base layout, each level adds at most `2k`, and the loop
//! is cut off after `⌊log₂|A| − 1⌋` iterations (a run that would need more
//! returns [`Outcome::IterationBudgetExceeded`]; that can only happen when
//! the input violates the assumed shatter bound).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{self, Order};
use crate::refine;
use crate::sample;
use crate::setsystem::{self, LinearityParams, SetSystem};

/// `log₂ n`, with `log₂ 0 = log₂ 1 = 0`.
pub fn log2(n: usize) -> f64 {
    if n <= 1 {
        0.0
    } else {
        (n as f64).log2()
    }
}

/// Largest number of main-loop iterations a run may take: `⌊log₂|A| − 1⌋`.
pub fn iteration_budget(n: usize) -> usize {
    (log2(n) - 1.0).floor().max(0.0) as usize
}

/// The four parameters of one loop iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// The loop runs while `|A_cur| > guard`.
    pub guard: f64,
    /// Size of the sample `W`.
    pub sample_size: usize,
    /// Largest admissible near-twin difference.
    pub near_twin_k: f64,
    /// Crossing number guaranteed for a successful run.
    pub crossing_bound: f64,
}

/// Parameter schedule of an engine.
pub trait Schedule {
    fn kind(&self) -> EngineKind;
    fn c(&self) -> f64;
    fn d(&self) -> u32;
    /// Thresholds for ground-set size `n` (the original `|A|`) and current
    /// size `a_cur`.
    fn thresholds(&self, n: usize, a_cur: usize) -> Thresholds;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Linear,
    Poly,
}

/// Schedule for systems of linearity `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSchedule {
    c: f64,
}

impl LinearSchedule {
    pub fn new(c: f64) -> Result<Self> {
        LinearityParams::linear(c)?;
        Ok(Self { c })
    }
}

/// `12c²·log₂²n`.
pub fn linear_crossing_bound(c: f64, n: usize) -> f64 {
    12.0 * c * c * log2(n) * log2(n)
}

/// Thresholds of the linear engine.
pub fn linear_thresholds(c: f64, n: usize, a_cur: usize) -> Thresholds {
    let c2 = c * c;
    let log_n = log2(n);
    let sample = (a_cur as f64 / (2.0 * c2)).ceil() as usize;
    Thresholds {
        guard: 12.0 * c2 * log_n,
        sample_size: sample.min(a_cur),
        near_twin_k: 6.0 * c2 * log_n,
        crossing_bound: linear_crossing_bound(c, n),
    }
}

impl Schedule for LinearSchedule {
    fn kind(&self) -> EngineKind {
        EngineKind::Linear
    }
    fn c(&self) -> f64 {
        self.c
    }
    fn d(&self) -> u32 {
        1
    }
    fn thresholds(&self, n: usize, a_cur: usize) -> Thresholds {
        linear_thresholds(self.c, n, a_cur)
    }
}

/// Schedule for primal and dual shatter functions at most `c·k^d`, `d ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolySchedule {
    c: f64,
    d: u32,
}

impl PolySchedule {
    pub fn new(c: f64, d: u32) -> Result<Self> {
        LinearityParams::new(c, d)?;
        if d < 2 {
            return Err(Error::InvalidParameter("d < 2: use the linear engine".into()));
        }
        Ok(Self { c, d })
    }
}

/// `4c^{d+1}(2d²)^{d²}·log₂n + 24cd·n^{1−1/d²}·log₂²n`.
pub fn poly_crossing_bound(c: f64, d: u32, n: usize) -> f64 {
    poly_thresholds(c, d, n, n).crossing_bound
}

/// Thresholds of the polynomial engine.
pub fn poly_thresholds(c: f64, d: u32, n: usize, a_cur: usize) -> Thresholds {
    let df = d as f64;
    let d2 = (d * d) as i32;
    let log_n = log2(n);
    let scale = 4.0 * c.powi(d as i32 + 1);
    let guard = scale * (2.0 * df * df).powi(d2) * log_n;
    let spread = (n as f64).powf(1.0 - 1.0 / d2 as f64);
    let near_twin_k = 12.0 * c * df * spread * log_n;

    let sample = if a_cur == 0 {
        0
    } else {
        let root = ((a_cur as f64 / scale).ln() / d2 as f64).exp();
        // snap near-integers so exact roots do not ceil upward
        let rounded = root.round();
        let root = if (root - rounded).abs() < 1e-9 { rounded } else { root };
        (root.ceil() as usize).clamp(1, a_cur)
    };
    Thresholds {
        guard,
        sample_size: sample,
        near_twin_k,
        crossing_bound: guard + 24.0 * c * df * spread * log_n * log_n,
    }
}

impl Schedule for PolySchedule {
    fn kind(&self) -> EngineKind {
        EngineKind::Poly
    }
    fn c(&self) -> f64 {
        self.c
    }
    fn d(&self) -> u32 {
        self.d
    }
    fn thresholds(&self, n: usize, a_cur: usize) -> Thresholds {
        poly_thresholds(self.c, self.d, n, a_cur)
    }
}

/// Instrumentation for one loop iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub a_size: usize,
    pub b_size: usize,
    pub a_next: usize,
    pub b_next: usize,
    pub max_near_twin_diff: usize,
    pub passed: bool,
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Outcome {
    Success,
    /// The sampled partition of the sets was not a near-twin partition.
    NearTwinCheckFailed { iteration: usize },
    /// The loop would have exceeded `⌊log₂|A| − 1⌋` iterations.
    IterationBudgetExceeded,
}

impl Outcome {
    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success)
    }
}

/// Per-run record: parameters, per-iteration sizes and checks, outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub engine: EngineKind,
    pub c: f64,
    pub d: u32,
    pub num_elements: usize,
    pub num_sets: usize,
    pub size_norm: usize,
    pub seed: u64,
    pub stream: u64,
    pub iteration_budget: usize,
    pub crossing_bound: f64,
    pub iterations: Vec<IterationRecord>,
    pub outcome: Outcome,
}

impl RunTrace {
    pub fn num_iterations(&self) -> usize {
        self.iterations.len()
    }

    /// `iterations ≤ log₂|A| − 1` (vacuous when the loop never ran).
    pub fn within_iteration_bound(&self) -> bool {
        self.iterations.is_empty() || self.iterations.len() as f64 <= log2(self.num_elements) - 1.0
    }

    /// Pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    /// Tab-separated iteration table with a header row.
    pub fn to_table(&self) -> String {
        let mut out = String::from(
            "iteration\ta_size\tb_size\tsample_size\tguard\tnear_twin_k\tmax_near_twin_diff\tpassed\ta_next\tb_next\n",
        );
        for (i, r) in self.iterations.iter().enumerate() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                i + 1,
                r.a_size,
                r.b_size,
                r.thresholds.sample_size,
                r.thresholds.guard,
                r.thresholds.near_twin_k,
                r.max_near_twin_diff,
                r.passed as u8,
                r.a_next,
                r.b_next
            ));
        }
        out
    }
}

/// Result of a single run: an order, or `None` for `false`.
#[derive(Debug, Clone)]
pub struct Run {
    pub order: Option<Order>,
    pub trace: RunTrace,
}

/// The rng used for `(seed, stream)`: ChaCha8 seeded from `seed`, on stream
/// `stream`. Boosted trial `j` uses stream `j`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Anything that maps `(system, seed, stream)` to a run.
pub trait OrderEngine {
    fn run(&self, sys: &SetSystem, seed: u64, stream: u64) -> Run;
}

/// The shared loop, parameterized by a [`Schedule`].
#[derive(Debug, Clone)]
pub struct Engine<S> {
    schedule: S,
    check_guarantees: bool,
}

impl Engine<LinearSchedule> {
    pub fn linear(c: f64) -> Result<Self> {
        Ok(Self::new(LinearSchedule::new(c)?))
    }
}

impl Engine<PolySchedule> {
    pub fn poly(c: f64, d: u32) -> Result<Self> {
        Ok(Self::new(PolySchedule::new(c, d)?))
    }
}

impl<S: Schedule> Engine<S> {
    pub fn new(schedule: S) -> Self {
        Self { schedule, check_guarantees: true }
    }

    /// Skips the near-twin check. Orders produced this way carry no crossing
    /// guarantee; meant for diagnostics.
    pub fn without_guarantee_check(mut self) -> Self {
        self.check_guarantees = false;
        self
    }

    pub fn schedule(&self) -> &S {
        &self.schedule
    }

    /// Runs with a caller-provided rng; `seed` and `stream` are only
    /// recorded in the trace.
    pub fn run_with_rng<R: Rng + ?Sized>(&self, sys: &SetSystem, rng: &mut R, seed: u64, stream: u64) -> Run {
        let n = sys.num_elements();
        let m = sys.num_sets();
        let start = self.schedule.thresholds(n, n);
        let mut trace = RunTrace {
            engine: self.schedule.kind(),
            c: self.schedule.c(),
            d: self.schedule.d(),
            num_elements: n,
            num_sets: m,
            size_norm: sys.size_norm(),
            seed,
            stream,
            iteration_budget: iteration_budget(n),
            crossing_bound: start.crossing_bound,
            iterations: Vec::new(),
            outcome: Outcome::Success,
        };
        if n <= 1 {
            return Run { order: Some(Order::identity(n)), trace };
        }

        let mut a_cur: Vec<usize> = (0..n).collect();
        let mut b_cur: Vec<usize> = (0..m).collect();
        let mut a_active = vec![true; n];
        let mut b_active = vec![true; m];
        let mut stack: Vec<(usize, usize)> = Vec::new();

        loop {
            let th = self.schedule.thresholds(n, a_cur.len());
            if a_cur.len() as f64 <= th.guard {
                break;
            }
            if trace.iterations.len() >= trace.iteration_budget {
                trace.outcome = Outcome::IterationBudgetExceeded;
                return Run { order: None, trace };
            }

            let sample = sample::sample_from(&a_cur, th.sample_size, rng);
            let b_classes = refine::refine(m, &b_cur, &b_active, sample.iter().map(|&a| sys.sets_of(a)));
            let a_classes = refine::refine(n, &a_cur, &a_active, b_classes.reps.iter().map(|&b| sys.members(b)));
            let diff = setsystem::max_near_twin_diff(sys, &b_cur, &b_classes.class_of, &b_classes.reps, Some(&a_active));
            let passed = !self.check_guarantees || diff as f64 <= th.near_twin_k;
            trace.iterations.push(IterationRecord {
                a_size: a_cur.len(),
                b_size: b_cur.len(),
                a_next: a_classes.reps.len(),
                b_next: b_classes.reps.len(),
                max_near_twin_diff: diff,
                passed,
                thresholds: th,
            });
            if !passed {
                trace.outcome = Outcome::NearTwinCheckFailed { iteration: trace.iterations.len() };
                return Run { order: None, trace };
            }

            for &v in &a_cur {
                let rep = a_classes.reps[a_classes.class_of[v]];
                if rep != v {
                    stack.push((v, rep));
                    a_active[v] = false;
                }
            }
            for &b in &b_cur {
                b_active[b] = false;
            }
            for &b in &b_classes.reps {
                b_active[b] = true;
            }
            a_cur = a_classes.reps;
            b_cur = b_classes.reps;
        }

        let base = Order::from_sequence(n, &a_cur).expect("survivors are distinct");
        let order = order::reconstruct(base, &stack).expect("every representative precedes its dependents");
        debug_assert!(order.is_total());
        Run { order: Some(order), trace }
    }
}

impl<S: Schedule> OrderEngine for Engine<S> {
    fn run(&self, sys: &SetSystem, seed: u64, stream: u64) -> Run {
        let mut rng = stream_rng(seed, stream);
        self.run_with_rng(sys, &mut rng, seed, stream)
    }
}

/// Either engine, picked from [`LinearityParams`].
#[derive(Debug, Clone)]
pub enum AnyEngine {
    Linear(Engine<LinearSchedule>),
    Poly(Engine<PolySchedule>),
}

impl AnyEngine {
    /// `d = 1` selects the linear engine, `d ≥ 2` the polynomial one.
    pub fn for_params(params: LinearityParams) -> Result<Self> {
        if params.d >= 2 {
            Ok(Self::Poly(Engine::poly(params.c, params.d)?))
        } else {
            Ok(Self::Linear(Engine::linear(params.c)?))
        }
    }
}

impl OrderEngine for AnyEngine {
    fn run(&self, sys: &SetSystem, seed: u64, stream: u64) -> Run {
        match self {
            Self::Linear(e) => e.run(sys, seed, stream),
            Self::Poly(e) => e.run(sys, seed, stream),
        }
    }
}

/// Single linear-engine run on stream 0 of `seed`.
pub fn compute_order_linear(sys: &SetSystem, c: f64, seed: u64) -> Result<Run> {
    Ok(Engine::linear(c)?.run(sys, seed, 0))
}

/// Single polynomial-engine run on stream 0 of `seed`.
pub fn compute_order_poly(sys: &SetSystem, c: f64, d: u32, seed: u64) -> Result<Run> {
    Ok(Engine::poly(c, d)?.run(sys, seed, 0))
}

/// Result of [`boosted`]: the first order found and the traces of every
/// executed trial.
#[derive(Debug, Clone)]
pub struct Boosted {
    pub order: Option<Order>,
    pub traces: Vec<RunTrace>,
}

/// Runs up to `trials` independent runs (streams `0..trials` of `seed`) and
/// stops at the first success.
pub fn boosted<E: OrderEngine + ?Sized>(engine: &E, sys: &SetSystem, trials: usize, seed: u64) -> Result<Boosted> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let mut traces = Vec::new();
    for stream in 0..trials as u64 {
        let run = engine.run(sys, seed, stream);
        traces.push(run.trace);
        if run.order.is_some() {
            return Ok(Boosted { order: run.order, traces });
        }
    }
    Ok(Boosted { order: None, traces })
}

/// Settings for the doubling search over `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub c0: f64,
    pub trials_per_level: usize,
    /// No guess above this value is tried.
    pub cap: f64,
    /// Shatter exponent; `d ≥ 2` searches with the polynomial engine.
    pub d: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { c0: 1.0, trials_per_level: 3, cap: (1u64 << 20) as f64, d: 1 }
    }
}

/// Result of [`with_unknown_c`].
#[derive(Debug, Clone)]
pub struct Searched {
    pub order: Order,
    pub c_used: f64,
    pub traces: Vec<RunTrace>,
}

/// Seed of search level `level`.
pub fn level_seed(seed: u64, level: u32) -> u64 {
    seed.wrapping_add((level as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Tries `c = c0, 2c0, 4c0, …` with [`boosted`] at each level and returns
/// the first order found together with the `c` that produced it.
pub fn with_unknown_c(sys: &SetSystem, seed: u64, options: SearchOptions) -> Result<Searched> {
    search_c(sys, seed, options, |c| AnyEngine::for_params(LinearityParams::new(c, options.d)?))
}

/// [`with_unknown_c`] over an arbitrary engine family.
pub fn search_c<E, F>(sys: &SetSystem, seed: u64, options: SearchOptions, mut make_engine: F) -> Result<Searched>
where
    E: OrderEngine,
    F: FnMut(f64) -> Result<E>,
{
    LinearityParams::new(options.c0, options.d)?;
    if options.trials_per_level == 0 {
        return Err(Error::InvalidParameter("trials_per_level must be >= 1".into()));
    }
    let mut traces = Vec::new();
    let mut c = options.c0;
    let mut level = 0u32;
    while c <= options.cap {
        let engine = make_engine(c)?;
        let result = boosted(&engine, sys, options.trials_per_level, level_seed(seed, level))?;
        traces.extend(result.traces);
        if let Some(order) = result.order {
            return Ok(Searched { order, c_used: c, traces });
        }
        c *= 2.0;
        level += 1;
    }
    Err(Error::LinearityCapExceeded { cap: options.cap })
}
