//! Set systems as bipartite incidence structures.
//!
//! Elements (the ground set `A`) and sets (the family `B`) carry dense ids.
//! Memberships are stored twice in adjacency-array form: per set, its sorted
//! member elements; per element, the sorted sets containing it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::refine::{self, NONE};

/// One side of the incidence structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// The ground set `A`.
    Elements,
    /// The family `B`.
    Sets,
}

/// Shatter parameters: primal and dual shatter functions at most `c·k^d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearityParams {
    pub c: f64,
    pub d: u32,
}

impl LinearityParams {
    pub fn new(c: f64, d: u32) -> Result<Self> {
        if !c.is_finite() || c < 1.0 {
            return Err(Error::InvalidParameter(format!("c must be a finite value >= 1, got {c}")));
        }
        if d < 1 {
            return Err(Error::InvalidParameter("d must be >= 1".into()));
        }
        Ok(Self { c, d })
    }

    pub fn linear(c: f64) -> Result<Self> {
        Self::new(c, 1)
    }
}

/// Immutable set system in adjacency-array form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    set_offsets: Vec<usize>,
    set_members: Vec<usize>,
    elem_offsets: Vec<usize>,
    elem_sets: Vec<usize>,
}

impl SetSystem {
    /// Builds a system from `(set, element)` membership pairs. Duplicate pairs
    /// are collapsed.
    pub fn from_edges<I>(num_elements: usize, num_sets: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        for &(s, e) in &edges {
            if s >= num_sets {
                return Err(Error::SetOutOfRange { id: s, len: num_sets });
            }
            if e >= num_elements {
                return Err(Error::ElementOutOfRange { id: e, len: num_elements });
            }
        }

        // Bucket by element, then distribute to sets in ascending element
        // order so every member list comes out sorted.
        let elem_buckets = bucket(num_elements, edges.iter().map(|&(s, e)| (e, s)));
        let set_counts = count(num_sets, edges.iter().map(|&(s, _)| s));
        let mut set_offsets = prefix_sums(&set_counts);
        let mut fill = set_offsets.clone();
        let mut set_members = vec![0usize; edges.len()];
        for e in 0..num_elements {
            for &s in &elem_buckets.1[elem_buckets.0[e]..elem_buckets.0[e + 1]] {
                // duplicates of (s, e) arrive back to back
                if fill[s] > set_offsets[s] && set_members[fill[s] - 1] == e {
                    continue;
                }
                set_members[fill[s]] = e;
                fill[s] += 1;
            }
        }
        // compact away the slots freed by duplicates
        let mut write = 0;
        for s in 0..num_sets {
            let (start, end) = (set_offsets[s], fill[s]);
            set_offsets[s] = write;
            for i in start..end {
                set_members[write] = set_members[i];
                write += 1;
            }
        }
        set_offsets[num_sets] = write;
        set_members.truncate(write);
        Ok(Self::from_set_view(num_elements, set_offsets, set_members))
    }

    /// Builds a system from explicit member lists, one per set.
    pub fn from_sets<S: AsRef<[usize]>>(num_elements: usize, sets: &[S]) -> Result<Self> {
        let edges = sets
            .iter()
            .enumerate()
            .flat_map(|(s, members)| members.as_ref().iter().map(move |&e| (s, e)));
        Self::from_edges(num_elements, sets.len(), edges)
    }

    /// Completes the element view from a canonical (sorted, duplicate-free)
    /// set view.
    fn from_set_view(num_elements: usize, set_offsets: Vec<usize>, set_members: Vec<usize>) -> Self {
        let num_sets = set_offsets.len() - 1;
        let degrees = count(num_elements, set_members.iter().copied());
        let elem_offsets = prefix_sums(&degrees);
        let mut fill = elem_offsets.clone();
        let mut elem_sets = vec![0usize; set_members.len()];
        for s in 0..num_sets {
            for &e in &set_members[set_offsets[s]..set_offsets[s + 1]] {
                elem_sets[fill[e]] = s;
                fill[e] += 1;
            }
        }
        Self { set_offsets, set_members, elem_offsets, elem_sets }
    }

    pub fn num_elements(&self) -> usize {
        self.elem_offsets.len() - 1
    }

    pub fn num_sets(&self) -> usize {
        self.set_offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.set_members.len()
    }

    /// `‖S‖ = |A| + |E|`.
    pub fn size_norm(&self) -> usize {
        self.num_elements() + self.num_edges()
    }

    /// Sorted members of set `s`.
    pub fn members(&self, s: usize) -> &[usize] {
        &self.set_members[self.set_offsets[s]..self.set_offsets[s + 1]]
    }

    /// Sorted ids of the sets containing element `e`.
    pub fn sets_of(&self, e: usize) -> &[usize] {
        &self.elem_sets[self.elem_offsets[e]..self.elem_offsets[e + 1]]
    }

    pub fn len_of(&self, side: Side) -> usize {
        match side {
            Side::Elements => self.num_elements(),
            Side::Sets => self.num_sets(),
        }
    }

    /// Neighborhood of vertex `v` on `side` in the bipartite view.
    pub fn neighbors(&self, side: Side, v: usize) -> &[usize] {
        match side {
            Side::Elements => self.sets_of(v),
            Side::Sets => self.members(v),
        }
    }

    pub fn contains(&self, s: usize, e: usize) -> bool {
        self.members(s).binary_search(&e).is_ok()
    }

    /// All `(set, element)` pairs, ordered by set then element.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_sets()).flat_map(move |s| self.members(s).iter().map(move |&e| (s, e)))
    }

    /// The dual system: sets become elements and vice versa. Set `u` of the
    /// dual holds the ids of the sets that contain element `u`. Isolated ids
    /// survive on both sides, so `dual(dual(S)) == S`.
    pub fn dual(&self) -> SetSystem {
        SetSystem {
            set_offsets: self.elem_offsets.clone(),
            set_members: self.elem_sets.clone(),
            elem_offsets: self.set_offsets.clone(),
            elem_sets: self.set_members.clone(),
        }
    }

    /// The induced subsystem on the given elements and sets. Ids are
    /// renumbered by rank; the returned tables map new ids back to old ones.
    pub fn restrict(&self, elements: &[usize], sets: &[usize]) -> Result<Restriction> {
        let n = self.num_elements();
        let m = self.num_sets();
        let mut elem_map = vec![NONE; n];
        let mut kept_elements = Vec::with_capacity(elements.len());
        let mut elem_mask = vec![false; n];
        for &e in elements {
            if e >= n {
                return Err(Error::ElementOutOfRange { id: e, len: n });
            }
            elem_mask[e] = true;
        }
        for e in 0..n {
            if elem_mask[e] {
                elem_map[e] = kept_elements.len();
                kept_elements.push(e);
            }
        }
        let mut set_mask = vec![false; m];
        for &s in sets {
            if s >= m {
                return Err(Error::SetOutOfRange { id: s, len: m });
            }
            set_mask[s] = true;
        }
        let kept_sets: Vec<usize> = (0..m).filter(|&s| set_mask[s]).collect();

        let mut set_offsets = Vec::with_capacity(kept_sets.len() + 1);
        let mut set_members = Vec::new();
        set_offsets.push(0);
        for &s in &kept_sets {
            set_members.extend(self.members(s).iter().filter(|&&e| elem_mask[e]).map(|&e| elem_map[e]));
            set_offsets.push(set_members.len());
        }
        let system = Self::from_set_view(kept_elements.len(), set_offsets, set_members);
        Ok(Restriction { system, elements: kept_elements, sets: kept_sets })
    }

    /// The twin partition of one side: the coarsest partition into classes
    /// of equal neighborhoods. Each representative is the smallest id of its
    /// class. Linear time via partition refinement.
    pub fn twin_partition(&self, side: Side) -> Partition {
        let n = self.len_of(side);
        let items: Vec<usize> = (0..n).collect();
        let is_item = vec![true; n];
        let other = match side {
            Side::Elements => Side::Sets,
            Side::Sets => Side::Elements,
        };
        let pivots = (0..self.len_of(other)).map(|v| self.neighbors(other, v));
        let classes = refine::refine(n, &items, &is_item, pivots);
        Partition { side, class_of: classes.class_of, representative: classes.reps }
    }

    /// The smallest `k` such that `partition` (of the sets) is a `k`-near twin
    /// partition with its representatives: the largest `|N(rep) △ N(b)|` over
    /// all sets `b`.
    pub fn near_twin_max_diff(&self, partition: &Partition) -> Result<usize> {
        if partition.side != Side::Sets {
            return Err(Error::InvalidPartition("near-twin check expects a partition of the sets".into()));
        }
        if partition.len() != self.num_sets() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} sets, system has {}",
                partition.len(),
                self.num_sets()
            )));
        }
        let sets: Vec<usize> = (0..self.num_sets()).collect();
        Ok(max_near_twin_diff(self, &sets, &partition.class_of, &partition.representative, None))
    }
}

/// Largest symmetric difference between a set and its class representative,
/// measured on the active elements only (all elements when `active` is
/// `None`). `sets` lists the sets taking part; `class_of` and `reps` describe
/// their partition. Linear in the touched adjacency.
pub(crate) fn max_near_twin_diff(
    sys: &SetSystem,
    sets: &[usize],
    class_of: &[usize],
    reps: &[usize],
    active: Option<&[bool]>,
) -> usize {
    let is_active = |e: usize| active.is_none_or(|a| a[e]);

    // group the sets by class (counting sort)
    let mut starts = vec![0usize; reps.len() + 1];
    for &s in sets {
        starts[class_of[s] + 1] += 1;
    }
    for i in 0..reps.len() {
        starts[i + 1] += starts[i];
    }
    let mut fill = starts.clone();
    let mut grouped = vec![0usize; sets.len()];
    for &s in sets {
        grouped[fill[class_of[s]]] = s;
        fill[class_of[s]] += 1;
    }

    let mut marked = vec![false; sys.num_elements()];
    let mut worst = 0usize;
    for (class, &rep) in reps.iter().enumerate() {
        let rep_members = sys.members(rep);
        let mut rep_degree = 0usize;
        for &e in rep_members {
            if is_active(e) {
                marked[e] = true;
                rep_degree += 1;
            }
        }
        for &s in &grouped[starts[class]..starts[class + 1]] {
            if s == rep {
                continue;
            }
            let mut deg = 0usize;
            let mut common = 0usize;
            for &e in sys.members(s) {
                if is_active(e) {
                    deg += 1;
                    if marked[e] {
                        common += 1;
                    }
                }
            }
            worst = worst.max(rep_degree + deg - 2 * common);
        }
        for &e in rep_members {
            marked[e] = false;
        }
    }
    worst
}

/// A subsystem together with the ids it came from.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub system: SetSystem,
    /// New element id -> original element id.
    pub elements: Vec<usize>,
    /// New set id -> original set id.
    pub sets: Vec<usize>,
}

/// A partition of one side into classes with one representative each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    side: Side,
    class_of: Vec<usize>,
    representative: Vec<usize>,
}

impl Partition {
    /// Validates that class ids are contiguous, every class is nonempty and
    /// each representative lies in its own class.
    pub fn new(side: Side, class_of: Vec<usize>, representative: Vec<usize>) -> Result<Self> {
        let k = representative.len();
        let mut seen = vec![false; k];
        for (v, &c) in class_of.iter().enumerate() {
            if c >= k {
                return Err(Error::InvalidPartition(format!("item {v} has class {c}, only {k} classes")));
            }
            seen[c] = true;
        }
        if let Some(c) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidPartition(format!("class {c} is empty")));
        }
        for (c, &r) in representative.iter().enumerate() {
            if r >= class_of.len() || class_of[r] != c {
                return Err(Error::InvalidPartition(format!("representative {r} is not in class {c}")));
            }
        }
        Ok(Self { side, class_of, representative })
    }

    /// Every item in its own class.
    pub fn singletons(side: Side, n: usize) -> Self {
        Self { side, class_of: (0..n).collect(), representative: (0..n).collect() }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Number of partitioned items.
    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.representative.len()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn representative(&self, class: usize) -> usize {
        self.representative[class]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representative
    }

    /// Members of every class, each list ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (v, &c) in self.class_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

fn count(n: usize, keys: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut counts = vec![0usize; n];
    for k in keys {
        counts[k] += 1;
    }
    counts
}

fn prefix_sums(counts: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(counts.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for &c in counts {
        acc += c;
        offsets.push(acc);
    }
    offsets
}

/// Counting-sort `(key, value)` pairs into buckets; returns offsets and values.
fn bucket(n: usize, pairs: impl Iterator<Item = (usize, usize)> + Clone) -> (Vec<usize>, Vec<usize>) {
    let offsets = prefix_sums(&count(n, pairs.clone().map(|(k, _)| k)));
    let mut fill = offsets.clone();
    let mut values = vec![0usize; offsets[n]];
    for (k, v) in pairs {
        values[fill[k]] = v;
        fill[k] += 1;
    }
    (offsets, values)
}
