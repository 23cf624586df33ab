//! Seeded instance families.
//!
//! Graph families produce neighborhood set systems: element `v` is vertex
//! `v`, and set `v` is its open neighborhood `N(v)`.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setsystem::SetSystem;

/// Largest prefix instance the command line will generate; prefix systems
/// have `Θ(n²)` size.
pub const PREFIX_CLI_CAP: usize = 1 << 13;

const CONFIGURATION_RETRIES: usize = 10_000;

/// A family together with its size parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Prefix { n: usize },
    Grid { rows: usize, cols: usize },
    BoundedDegree { n: usize, degree: usize },
    Halfplane { points: usize, sets: usize },
}

/// Everything needed to regenerate an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        Self { family, seed }
    }

    pub fn generate(&self) -> Result<SetSystem> {
        match self.family {
            Family::Prefix { n } => gen_prefix(n),
            Family::Grid { rows, cols } => gen_grid(rows, cols),
            Family::BoundedDegree { n, degree } => gen_bounded_degree(n, degree, self.seed),
            Family::Halfplane { points, sets } => gen_halfplane(points, sets, self.seed),
        }
    }

    /// Provenance comment line for generated files.
    pub fn header(&self) -> String {
        format!("# gen {self}")
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Prefix { n } => write!(f, "prefix {n}")?,
            Family::Grid { rows, cols } => write!(f, "grid {rows} {cols}")?,
            Family::BoundedDegree { n, degree } => write!(f, "bounded-degree {n} {degree}")?,
            Family::Halfplane { points, sets } => write!(f, "halfplane {points} {sets}")?,
        }
        write!(f, " seed={}", self.seed)
    }
}

/// Ground set `0..n`, sets = the `n + 1` prefixes `{0, …, t−1}` (set `t`).
pub fn gen_prefix(n: usize) -> Result<SetSystem> {
    if n == 0 {
        return Err(Error::InvalidParameter("prefix family needs n >= 1".into()));
    }
    SetSystem::from_edges(n, n + 1, (0..=n).flat_map(|t| (0..t).map(move |e| (t, e))))
}

/// Neighborhood system of a simple undirected graph given by its edge list.
pub fn neighborhood_system(n: usize, edges: &[(usize, usize)]) -> Result<SetSystem> {
    for &(u, v) in edges {
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at {u}")));
        }
    }
    SetSystem::from_edges(n, n, edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]))
}

/// Neighborhood system of the `rows × cols` grid; vertex `(r, c)` has id
/// `r·cols + c`.
pub fn gen_grid(rows: usize, cols: usize) -> Result<SetSystem> {
    if rows < 2 || cols < 2 {
        return Err(Error::InvalidParameter("grid needs rows, cols >= 2".into()));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    neighborhood_system(rows * cols, &edges)
}

/// Grid with `n` vertices and a near-square shape: `rows` is the largest
/// divisor of `n` not exceeding `√n`.
pub fn grid_dims(n: usize) -> Result<(usize, usize)> {
    let mut rows = (n as f64).sqrt().floor() as usize;
    while rows >= 2 && !n.is_multiple_of(rows) {
        rows -= 1;
    }
    if rows < 2 {
        return Err(Error::InvalidParameter(format!("no grid shape with both sides >= 2 has {n} vertices")));
    }
    Ok((rows, n / rows))
}

/// Neighborhood system of a uniformly random simple `degree`-regular graph
/// (configuration model, rejecting pairings with loops or multi-edges).
pub fn gen_bounded_degree(n: usize, degree: usize, seed: u64) -> Result<SetSystem> {
    if degree < 3 || !(n * degree).is_multiple_of(2) || degree >= n {
        return Err(Error::InvalidParameter(format!(
            "need degree >= 3, degree < n and n·degree even (n = {n}, degree = {degree})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    let mut seen = HashSet::with_capacity(n * degree / 2);
    'attempt: for _ in 0..CONFIGURATION_RETRIES {
        stubs.shuffle(&mut rng);
        seen.clear();
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
        }
        let edges: Vec<(usize, usize)> = seen.iter().copied().collect();
        return neighborhood_system(n, &edges);
    }
    Err(Error::InvalidParameter(format!(
        "no simple {degree}-regular pairing on {n} vertices after {CONFIGURATION_RETRIES} attempts"
    )))
}

/// Closed halfplane `{p : normal·p ≤ offset}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Halfplane {
    pub normal: (f64, f64),
    pub offset: f64,
}

impl Halfplane {
    pub fn contains(&self, p: (f64, f64)) -> bool {
        self.normal.0 * p.0 + self.normal.1 * p.1 <= self.offset
    }
}

/// Points, halfplanes and the resulting set system.
#[derive(Debug, Clone)]
pub struct HalfplaneInstance {
    pub points: Vec<(f64, f64)>,
    pub halfplanes: Vec<Halfplane>,
    pub system: SetSystem,
}

/// Set system whose set `j` holds the points inside `halfplanes[j]`.
pub fn halfplane_system(points: &[(f64, f64)], halfplanes: &[Halfplane]) -> Result<SetSystem> {
    let edges = halfplanes
        .iter()
        .enumerate()
        .flat_map(|(j, h)| points.iter().enumerate().filter(|(_, &p)| h.contains(p)).map(move |(i, _)| (j, i)));
    SetSystem::from_edges(points.len(), halfplanes.len(), edges)
}

/// Uniform points in the unit square against random halfplanes. Each
/// boundary line has a uniform direction and an offset uniform over the
/// square's extent in that direction.
pub fn gen_halfplane_instance(n_points: usize, n_sets: usize, seed: u64) -> Result<HalfplaneInstance> {
    if n_points == 0 || n_sets == 0 {
        return Err(Error::InvalidParameter("halfplane family needs at least one point and one set".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(f64, f64)> = (0..n_points).map(|_| (rng.random(), rng.random())).collect();
    let halfplanes: Vec<Halfplane> = (0..n_sets)
        .map(|_| {
            let theta = rng.random_range(0.0..std::f64::consts::TAU);
            let normal = (theta.cos(), theta.sin());
            let corners = [0.0, normal.0, normal.1, normal.0 + normal.1];
            let lo = corners.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = corners.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            Halfplane { normal, offset: rng.random_range(lo..hi) }
        })
        .collect();
    let system = halfplane_system(&points, &halfplanes)?;
    Ok(HalfplaneInstance { points, halfplanes, system })
}

pub fn gen_halfplane(n_points: usize, n_sets: usize, seed: u64) -> Result<SetSystem> {
    Ok(gen_halfplane_instance(n_points, n_sets, seed)?.system)
}

/// Replaces every element by between 1 and `factor` copies (uniformly
/// chosen) with identical membership.
pub fn add_twins(sys: &SetSystem, factor: usize, seed: u64) -> Result<SetSystem> {
    Ok(add_twins_mapped(sys, factor, seed)?.0)
}

/// [`add_twins`], also returning the original id of every new element.
/// Copies of one element get consecutive ids.
pub fn add_twins_mapped(sys: &SetSystem, factor: usize, seed: u64) -> Result<(SetSystem, Vec<usize>)> {
    if factor == 0 {
        return Err(Error::InvalidParameter("duplication factor must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sys.num_elements();
    let mut first = Vec::with_capacity(n + 1);
    let mut origin = Vec::new();
    for e in 0..n {
        first.push(origin.len());
        let copies = rng.random_range(1..=factor);
        origin.extend(std::iter::repeat_n(e, copies));
    }
    first.push(origin.len());
    let edges = sys.edges().flat_map(|(s, e)| (first[e]..first[e + 1]).map(move |x| (s, x)));
    let expanded = SetSystem::from_edges(origin.len(), sys.num_sets(), edges)?;
    Ok((expanded, origin))
}
