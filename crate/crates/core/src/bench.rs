//! Benchmark harness: runs a matrix of (family, size, seed) cases and
//! reports crossing numbers, failure rates and the scaling statistic
//! `t / (‖S‖·log₂‖S‖)`.
//!
//! Suites are TOML files:
//!
//! ```toml
//! [[case]]
//! family = "grid"          # grid | bounded_degree | halfplane | prefix
//! sizes = [4096, 16384]    # vertices / points / prefix length
//! seeds = [1, 2, 3]
//! c = 4.0                  # or "auto"
//! d = 1
//! trials = 1
//! repeats = 3              # timing repetitions, the fastest is kept
//! ```

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::engine::{self, log2, AnyEngine, OrderEngine, SearchOptions};
use crate::error::{Error, Result};
use crate::generators::{self, Family, GenSpec};
use crate::order::Order;
use crate::setsystem::{LinearityParams, SetSystem};
use crate::verify;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CSetting {
    Value(f64),
    Auto(AutoTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoTag {
    Auto,
}

impl CSetting {
    pub const AUTO: CSetting = CSetting::Auto(AutoTag::Auto);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Grid,
    BoundedDegree,
    Halfplane,
    Prefix,
}

fn one() -> usize {
    1
}

fn one_u32() -> u32 {
    1
}

fn default_degree() -> usize {
    3
}

/// One row of the suite matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchCase {
    pub family: FamilyName,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub c: CSetting,
    #[serde(default = "one_u32")]
    pub d: u32,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default = "one")]
    pub repeats: usize,
    /// Seed of random instances; fixed so that all run seeds share one
    /// instance per size.
    #[serde(default)]
    pub instance_seed: u64,
    #[serde(default = "default_degree")]
    pub degree: usize,
}

impl BenchCase {
    pub fn gen_spec(&self, n: usize) -> Result<GenSpec> {
        let family = match self.family {
            FamilyName::Grid => {
                let (rows, cols) = generators::grid_dims(n)?;
                Family::Grid { rows, cols }
            }
            FamilyName::BoundedDegree => Family::BoundedDegree { n, degree: self.degree },
            FamilyName::Halfplane => Family::Halfplane { points: n, sets: n },
            FamilyName::Prefix => Family::Prefix { n },
        };
        Ok(GenSpec::new(family, self.instance_seed))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    #[serde(rename = "case")]
    pub cases: Vec<BenchCase>,
}

impl Suite {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })
    }
}

/// Per-run measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub case: usize,
    pub family: FamilyName,
    pub n: usize,
    pub size_norm: usize,
    /// The `c` the order was computed with (the successful guess for `auto`).
    pub c: f64,
    pub d: u32,
    pub seed: u64,
    pub iterations: usize,
    pub iterations_within_bound: bool,
    pub wall_seconds: f64,
    pub crossing_max: Option<usize>,
    pub bound: Option<f64>,
    pub pass: Option<bool>,
    pub outcome: String,
}

impl BenchRow {
    /// Row fields that must not change between identical runs (everything
    /// but the wall time).
    pub fn reproducible_key(&self) -> String {
        format!(
            "{}\t{:?}\t{}\t{}\t{}\t{}\t{}\t{}\t{:?}\t{:?}\t{:?}\t{}",
            self.case,
            self.family,
            self.n,
            self.size_norm,
            self.c,
            self.d,
            self.seed,
            self.iterations,
            self.crossing_max,
            self.bound,
            self.pass,
            self.outcome
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub case: usize,
    pub family: FamilyName,
    pub n: usize,
    pub size_norm: usize,
    pub runs: usize,
    pub failures: usize,
    pub failure_rate: f64,
    pub median_seconds: f64,
    /// `median_seconds / (‖S‖·log₂‖S‖)`.
    pub time_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub case: usize,
    pub family: FamilyName,
    /// Largest over smallest `time_ratio` across the case's sizes.
    pub scaling_spread: f64,
    pub failure_rate: f64,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub aggregates: Vec<Aggregate>,
    pub cases: Vec<CaseSummary>,
}

/// Runs one case on a prepared instance.
pub fn run_one(sys: &SetSystem, case: &BenchCase, seed: u64) -> (BenchRow, Option<Order>) {
    let mut row = BenchRow {
        case: 0,
        family: case.family,
        n: sys.num_elements(),
        size_norm: sys.size_norm(),
        c: f64::NAN,
        d: case.d,
        seed,
        iterations: 0,
        iterations_within_bound: true,
        wall_seconds: f64::INFINITY,
        crossing_max: None,
        bound: None,
        pass: None,
        outcome: String::new(),
    };
    let mut order = None;
    for _ in 0..case.repeats.max(1) {
        let start = Instant::now();
        let result = solve(sys, case, seed);
        row.wall_seconds = row.wall_seconds.min(start.elapsed().as_secs_f64());
        match result {
            Ok((o, c, traces)) => {
                row.c = c;
                row.iterations = traces.last().map_or(0, |t| t.num_iterations());
                row.iterations_within_bound = traces.iter().all(|t| t.within_iteration_bound());
                row.outcome = if o.is_some() { "success".into() } else { "false".into() };
                order = o;
            }
            Err(Error::LinearityCapExceeded { .. }) => row.outcome = "cap_exceeded".into(),
            Err(e) => row.outcome = format!("error: {e}"),
        }
    }
    if let Some(o) = &order {
        if let Ok(params) = LinearityParams::new(row.c, case.d) {
            if let Ok(report) = verify::certify(sys, o, params) {
                row.crossing_max = Some(report.max);
                row.bound = report.bound;
                row.pass = report.pass;
            }
        }
    }
    (row, order)
}

type Solved = (Option<Order>, f64, Vec<engine::RunTrace>);

fn solve(sys: &SetSystem, case: &BenchCase, seed: u64) -> Result<Solved> {
    match case.c {
        CSetting::Auto(_) => {
            let options = SearchOptions { trials_per_level: case.trials.max(1), d: case.d, ..SearchOptions::default() };
            let found = engine::with_unknown_c(sys, seed, options)?;
            Ok((Some(found.order), found.c_used, found.traces))
        }
        CSetting::Value(c) => {
            let engine = AnyEngine::for_params(LinearityParams::new(c, case.d)?)?;
            let result = engine::boosted(&engine as &dyn OrderEngine, sys, case.trials.max(1), seed)?;
            Ok((result.order, c, result.traces))
        }
    }
}

/// Runs the whole matrix. Failures are recorded per row, never propagated.
pub fn run_suite(suite: &Suite) -> BenchReport {
    let mut rows = Vec::new();
    for (ci, case) in suite.cases.iter().enumerate() {
        for &n in &case.sizes {
            let sys = case.gen_spec(n).and_then(|spec| spec.generate());
            for &seed in &case.seeds {
                let mut row = match &sys {
                    Ok(sys) => run_one(sys, case, seed).0,
                    Err(e) => BenchRow {
                        case: ci,
                        family: case.family,
                        n,
                        size_norm: 0,
                        c: f64::NAN,
                        d: case.d,
                        seed,
                        iterations: 0,
                        iterations_within_bound: true,
                        wall_seconds: 0.0,
                        crossing_max: None,
                        bound: None,
                        pass: None,
                        outcome: format!("error: {e}"),
                    },
                };
                row.case = ci;
                rows.push(row);
            }
        }
    }
    summarize(rows)
}

/// Aggregates rows into per-size and per-case statistics.
pub fn summarize(rows: Vec<BenchRow>) -> BenchReport {
    let mut groups: BTreeMap<(usize, usize), Vec<&BenchRow>> = BTreeMap::new();
    for r in &rows {
        groups.entry((r.case, r.n)).or_default().push(r);
    }
    let aggregates: Vec<Aggregate> = groups
        .iter()
        .map(|(&(case, n), rs)| {
            let failures = rs.iter().filter(|r| r.outcome != "success").count();
            let mut times: Vec<f64> = rs.iter().map(|r| r.wall_seconds).collect();
            times.sort_by(f64::total_cmp);
            let median = times[times.len() / 2];
            let norm = rs[0].size_norm;
            Aggregate {
                case,
                family: rs[0].family,
                n,
                size_norm: norm,
                runs: rs.len(),
                failures,
                failure_rate: failures as f64 / rs.len() as f64,
                median_seconds: median,
                time_ratio: median / (norm as f64 * log2(norm)),
            }
        })
        .collect();

    let mut cases: BTreeMap<usize, CaseSummary> = BTreeMap::new();
    for a in &aggregates {
        let ratios: Vec<f64> = aggregates.iter().filter(|b| b.case == a.case).map(|b| b.time_ratio).collect();
        let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let case_rows: Vec<&BenchRow> = rows.iter().filter(|r| r.case == a.case).collect();
        let failures = case_rows.iter().filter(|r| r.outcome != "success").count();
        cases.entry(a.case).or_insert(CaseSummary {
            case: a.case,
            family: a.family,
            scaling_spread: hi / lo,
            failure_rate: failures as f64 / case_rows.len() as f64,
            all_pass: case_rows.iter().all(|r| r.pass != Some(false) && r.iterations_within_bound),
        });
    }
    BenchReport { rows, aggregates, cases: cases.into_values().collect() }
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Tab-separated run table.
    pub fn rows_tsv(&self) -> String {
        let mut out = String::from(
            "case\tfamily\tn\tsize_norm\tc\td\tseed\titerations\twall_seconds\tcrossing_max\tbound\tpass\toutcome\n",
        );
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{:?}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.6}\t{}\t{}\t{}\t{}\n",
                r.case,
                r.family,
                r.n,
                r.size_norm,
                r.c,
                r.d,
                r.seed,
                r.iterations,
                r.wall_seconds,
                opt(r.crossing_max.map(|v| v.to_string())),
                opt(r.bound.map(|v| v.to_string())),
                opt(r.pass.map(|p| (p as u8).to_string())),
                r.outcome
            ));
        }
        out
    }

    /// Human-readable summary: one line per size, one per case.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for a in &self.aggregates {
            out.push_str(&format!(
                "case {} {:?} n={} ‖S‖={}: runs={} failure_rate={:.4} median={:.6}s ratio={:.3e}\n",
                a.case, a.family, a.n, a.size_norm, a.runs, a.failure_rate, a.median_seconds, a.time_ratio
            ));
        }
        for c in &self.cases {
            out.push_str(&format!(
                "case {} {:?}: scaling_spread={:.3} failure_rate={:.4} all_pass={}\n",
                c.case, c.family, c.scaling_spread, c.failure_rate, c.all_pass
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUITE: &str = r#"
[[case]]
family = "grid"
sizes = [256, 1024]
seeds = [1, 2, 3]
c = 4.0

[[case]]
family = "prefix"
sizes = [64]
seeds = [5]
c = "auto"
trials = 2
"#;

    #[test]
    fn parses_suite() {
        let suite = Suite::parse(SUITE).unwrap();
        assert_eq!(suite.cases.len(), 2);
        assert_eq!(suite.cases[0].c, CSetting::Value(4.0));
        assert_eq!(suite.cases[1].c, CSetting::AUTO);
        assert_eq!(suite.cases[1].trials, 2);
        assert_eq!(suite.cases[0].d, 1);
        assert!(Suite::parse("[[case]]\nfamily = \"moon\"\n").is_err());
    }

    #[test]
    fn row_count_and_aggregates() {
        let report = run_suite(&Suite::parse(SUITE).unwrap());
        assert_eq!(report.rows.len(), 7);
        assert_eq!(report.aggregates.len(), 3);
        assert_eq!(report.cases.len(), 2);
        assert!(report.rows.iter().all(|r| r.outcome == "success"));
        assert!(report.cases.iter().all(|c| c.all_pass));
        assert_eq!(report.rows_tsv().lines().count(), 8);
    }

    #[test]
    fn bad_instance_is_recorded() {
        let suite = Suite::parse("[[case]]\nfamily = \"grid\"\nsizes = [7]\nseeds = [1]\nc = 1.0\n").unwrap();
        let report = run_suite(&suite);
        assert!(report.rows[0].outcome.starts_with("error"));
    }
}
