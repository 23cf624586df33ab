//! Compact neighborhood covers built from low-crossing orders.
//!
//! The input graph is a neighborhood set system: vertex `v` is element `v`
//! and set `v` is `N(v)`. Each vertex `u` is anchored at the earliest vertex
//! of `N[u]` in the order; the cluster of an anchor `w` is the union of the
//! closed neighborhoods anchored at `w`. Every member of that cluster is
//! within distance 2 of `w`, so its weak diameter is at most 4.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engine::log2;
use crate::error::{Error, Result};
use crate::order::Order;
use crate::refine::NONE;
use crate::setsystem::SetSystem;

/// Clusters up to this size get an exact all-pairs weak diameter.
pub const EXACT_DIAMETER_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    /// Vertex sets, each sorted ascending.
    pub clusters: Vec<Vec<usize>>,
    /// Vertex -> index of a cluster containing its closed neighborhood.
    pub assignment: Vec<usize>,
    /// Optional center per cluster (the anchor for built covers); used to
    /// bound the diameter of large clusters.
    pub centers: Vec<Option<usize>>,
}

impl Cover {
    /// Cover from explicit clusters and assignment, without centers.
    pub fn new(clusters: Vec<Vec<usize>>, assignment: Vec<usize>) -> Self {
        let centers = vec![None; clusters.len()];
        let clusters = clusters
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        Self { clusters, assignment, centers }
    }

    /// Cluster lines `<cluster_id> <k> <v_1> … <v_k>`, then assignment lines
    /// `<v> <cluster_id>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.clusters.iter().enumerate() {
            write!(out, "{i} {}", c.len()).unwrap();
            for v in c {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
        for (v, &i) in self.assignment.iter().enumerate() {
            writeln!(out, "{v} {i}").unwrap();
        }
        out
    }

    /// Inverse of [`Cover::to_text`]; lines with two numbers are assignment
    /// lines, longer lines are clusters.
    pub fn parse(text: &str) -> Result<Self> {
        let mut clusters = Vec::new();
        let mut assignment = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad number {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            match nums.len() {
                0 => continue,
                2 => {
                    if nums[0] != assignment.len() {
                        return Err(err(format!("assignment for vertex {} out of sequence", nums[0])));
                    }
                    assignment.push(nums[1]);
                }
                _ if nums.len() >= 3 => {
                    if nums[0] != clusters.len() || nums[1] != nums.len() - 2 {
                        return Err(err("malformed cluster line".into()));
                    }
                    clusters.push(nums[2..].to_vec());
                }
                _ => return Err(err("expected a cluster or assignment line".into())),
            }
        }
        Ok(Self::new(clusters, assignment))
    }
}

/// Outcome of [`audit_cover`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverAudit {
    pub coverage: bool,
    /// First vertex whose closed neighborhood is not inside its cluster.
    pub uncovered: Option<usize>,
    /// Largest weak diameter over all clusters; `None` if some cluster has
    /// members in different components.
    pub max_weak_diameter: Option<usize>,
    /// `false` when a large cluster's diameter was bounded through its center.
    pub diameter_exact: bool,
    pub overlap: usize,
    pub overlap_target: f64,
    pub num_clusters: usize,
}

impl CoverAudit {
    pub fn overlap_ratio(&self) -> f64 {
        self.overlap as f64 / self.overlap_target
    }

    /// Coverage holds and every cluster has weak diameter at most 4.
    pub fn passed(&self) -> bool {
        self.coverage && self.max_weak_diameter.is_some_and(|d| d <= 4)
    }
}

/// `1 + 12c²·log₂²n`.
pub fn overlap_target(c: f64, n: usize) -> f64 {
    1.0 + 12.0 * c * c * log2(n) * log2(n)
}

/// Checks that `sys` is the neighborhood system of a simple undirected graph.
pub fn check_graph(sys: &SetSystem) -> Result<()> {
    let n = sys.num_elements();
    if sys.num_sets() != n {
        return Err(Error::NotAGraph(format!("{} sets over {} elements", sys.num_sets(), n)));
    }
    for v in 0..n {
        for &u in sys.members(v) {
            if u == v {
                return Err(Error::NotAGraph(format!("vertex {v} lies in its own neighborhood")));
            }
            if !sys.contains(u, v) {
                return Err(Error::NotAGraph(format!("{u} ∈ N({v}) but {v} ∉ N({u})")));
            }
        }
    }
    Ok(())
}

/// Anchor construction of a cover from an order on the vertices.
pub fn build_cover(graph: &SetSystem, order: &Order) -> Result<Cover> {
    check_graph(graph)?;
    let n = graph.num_elements();
    if order.universe() != n || !order.is_total() {
        return Err(Error::NotAPermutation("cover needs an order on all vertices".into()));
    }
    let pos = order.positions();
    let anchor: Vec<usize> = (0..n)
        .map(|u| graph.members(u).iter().copied().fold(u, |best, x| if pos[x] < pos[best] { x } else { best }))
        .collect();

    let mut cluster_of_anchor = vec![NONE; n];
    let mut centers = Vec::new();
    // clusters are numbered by ascending anchor id
    for &w in &anchor {
        cluster_of_anchor[w] = 0;
    }
    for (w, slot) in cluster_of_anchor.iter_mut().enumerate() {
        if *slot != NONE {
            *slot = centers.len();
            centers.push(w);
        }
    }

    let mut anchored: Vec<Vec<usize>> = vec![Vec::new(); centers.len()];
    for u in 0..n {
        anchored[cluster_of_anchor[anchor[u]]].push(u);
    }
    let mut stamp = vec![NONE; n];
    let mut clusters: Vec<Vec<usize>> = vec![Vec::new(); centers.len()];
    for (i, members) in anchored.iter().enumerate() {
        for &u in members {
            for x in std::iter::once(u).chain(graph.members(u).iter().copied()) {
                if stamp[x] != i {
                    stamp[x] = i;
                    clusters[i].push(x);
                }
            }
        }
    }
    for c in &mut clusters {
        c.sort_unstable();
    }
    let assignment = (0..n).map(|u| cluster_of_anchor[anchor[u]]).collect();
    Ok(Cover { clusters, assignment, centers: centers.into_iter().map(Some).collect() })
}

/// Audits coverage, weak diameter and overlap of `cover` on `graph`.
pub fn audit_cover(graph: &SetSystem, cover: &Cover, overlap_target: f64) -> Result<CoverAudit> {
    check_graph(graph)?;
    let n = graph.num_elements();
    if cover.assignment.len() != n {
        return Err(Error::InvalidParameter(format!(
            "assignment covers {} vertices, graph has {n}",
            cover.assignment.len()
        )));
    }
    for c in &cover.clusters {
        if c.is_empty() {
            return Err(Error::InvalidParameter("empty cluster".into()));
        }
        if let Some(&v) = c.iter().find(|&&v| v >= n) {
            return Err(Error::ElementOutOfRange { id: v, len: n });
        }
    }

    let uncovered = (0..n).find(|&v| {
        let Some(cluster) = cover.clusters.get(cover.assignment[v]) else {
            return true;
        };
        std::iter::once(&v).chain(graph.members(v)).any(|x| cluster.binary_search(x).is_err())
    });

    let mut bfs = Bfs::new(n);
    let mut max_diameter = Some(0usize);
    let mut exact = true;
    for (i, cluster) in cover.clusters.iter().enumerate() {
        let diameter = if cluster.len() <= EXACT_DIAMETER_LIMIT {
            cluster.iter().map(|&s| bfs.eccentricity_within(graph, s, cluster)).try_fold(0, |acc, e| e.map(|e| acc.max(e)))
        } else {
            exact = false;
            let center = cover.centers.get(i).copied().flatten().unwrap_or(cluster[0]);
            bfs.eccentricity_within(graph, center, cluster).map(|e| 2 * e)
        };
        max_diameter = match (max_diameter, diameter) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }

    let mut memberships = vec![0usize; n];
    for c in &cover.clusters {
        for &v in c {
            memberships[v] += 1;
        }
    }
    Ok(CoverAudit {
        coverage: uncovered.is_none(),
        uncovered,
        max_weak_diameter: max_diameter,
        diameter_exact: exact,
        overlap: memberships.iter().copied().max().unwrap_or(0),
        overlap_target,
        num_clusters: cover.clusters.len(),
    })
}

struct Bfs {
    dist: Vec<usize>,
    touched: Vec<usize>,
    wanted: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Bfs {
    fn new(n: usize) -> Self {
        Self { dist: vec![NONE; n], touched: Vec::new(), wanted: vec![false; n], queue: VecDeque::new() }
    }

    /// Largest graph distance from `source` to a member of `targets`, or
    /// `None` if some target is unreachable. Stops once all are found.
    fn eccentricity_within(&mut self, graph: &SetSystem, source: usize, targets: &[usize]) -> Option<usize> {
        for &t in targets {
            self.wanted[t] = true;
        }
        let mut remaining = targets.len();
        let mut ecc = 0;
        self.dist[source] = 0;
        self.touched.push(source);
        self.queue.push_back(source);
        while let Some(v) = self.queue.pop_front() {
            if self.wanted[v] {
                self.wanted[v] = false;
                remaining -= 1;
                ecc = self.dist[v];
                if remaining == 0 {
                    break;
                }
            }
            for &u in graph.members(v) {
                if self.dist[u] == NONE {
                    self.dist[u] = self.dist[v] + 1;
                    self.touched.push(u);
                    self.queue.push_back(u);
                }
            }
        }
        for &v in &self.touched {
            self.dist[v] = NONE;
        }
        for &t in targets {
            self.wanted[t] = false;
        }
        self.touched.clear();
        self.queue.clear();
        (remaining == 0).then_some(ecc)
    }
}
