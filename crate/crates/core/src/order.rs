//! Total orders as doubly linked lists over dense element ids.
//!
//! Element ids double as node handles, so position lookup and
//! insert-after are O(1) without a separate hash table.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::refine::NONE;

#[derive(Debug, Clone)]
pub struct Order {
    next: Vec<usize>,
    prev: Vec<usize>,
    present: Vec<bool>,
    head: usize,
    tail: usize,
    len: usize,
}

impl Order {
    /// An empty order over ids `0..universe`.
    pub fn new(universe: usize) -> Self {
        Self {
            next: vec![NONE; universe],
            prev: vec![NONE; universe],
            present: vec![false; universe],
            head: NONE,
            tail: NONE,
            len: 0,
        }
    }

    /// `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Self {
        let mut order = Self::new(n);
        for v in 0..n {
            order.push_back(v).expect("fresh ids");
        }
        order
    }

    /// Builds an order from an explicit sequence of distinct ids.
    pub fn from_sequence(universe: usize, seq: &[usize]) -> Result<Self> {
        let mut order = Self::new(universe);
        for &v in seq {
            order.push_back(v)?;
        }
        Ok(order)
    }

    /// Like [`Order::from_sequence`] but additionally requires `seq` to be a
    /// permutation of `0..n`.
    pub fn permutation(n: usize, seq: &[usize]) -> Result<Self> {
        if seq.len() != n {
            return Err(Error::NotAPermutation(format!("expected {n} ids, got {}", seq.len())));
        }
        Self::from_sequence(n, seq)
    }

    fn check_fresh(&self, v: usize) -> Result<()> {
        if v >= self.present.len() {
            return Err(Error::NotAPermutation(format!("id {v} outside 0..{}", self.present.len())));
        }
        if self.present[v] {
            return Err(Error::NotAPermutation(format!("id {v} appears twice")));
        }
        Ok(())
    }

    pub fn push_back(&mut self, v: usize) -> Result<()> {
        self.check_fresh(v)?;
        self.present[v] = true;
        self.prev[v] = self.tail;
        self.next[v] = NONE;
        if self.tail == NONE {
            self.head = v;
        } else {
            self.next[self.tail] = v;
        }
        self.tail = v;
        self.len += 1;
        Ok(())
    }

    /// Inserts `v` immediately after `anchor`.
    pub fn insert_after(&mut self, anchor: usize, v: usize) -> Result<()> {
        if !self.contains(anchor) {
            return Err(Error::Reconstruction(format!("anchor {anchor} is not in the order")));
        }
        self.check_fresh(v)?;
        let after = self.next[anchor];
        self.present[v] = true;
        self.prev[v] = anchor;
        self.next[v] = after;
        self.next[anchor] = v;
        if after == NONE {
            self.tail = v;
        } else {
            self.prev[after] = v;
        }
        self.len += 1;
        Ok(())
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.present.len() && self.present[v]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Size of the id space the order draws from.
    pub fn universe(&self) -> usize {
        self.present.len()
    }

    /// True iff the order contains every id of its universe exactly once.
    pub fn is_total(&self) -> bool {
        self.len == self.present.len()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { order: self, cur: self.head }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Inverse permutation: position of each id, `usize::MAX` when absent.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![NONE; self.universe()];
        for (i, v) in self.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// One id per line, in order.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.len * 7);
        for v in self.iter() {
            writeln!(out, "{v}").unwrap();
        }
        out
    }

    /// Parses the one-id-per-line format; the ids must form a permutation of
    /// `0..n`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut seq = Vec::with_capacity(n);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v = line
                .parse::<usize>()
                .map_err(|e| Error::Parse { line: i + 1, msg: format!("bad element id {line:?}: {e}") })?;
            seq.push(v);
        }
        Self::permutation(n, &seq)
    }
}

impl PartialEq for Order {
    fn eq(&self, other: &Self) -> bool {
        self.universe() == other.universe() && self.len == other.len && self.iter().eq(other.iter())
    }
}

impl Eq for Order {}

pub struct Iter<'a> {
    order: &'a Order,
    cur: usize,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.cur == NONE {
            return None;
        }
        let v = self.cur;
        self.cur = self.order.next[v];
        Some(v)
    }
}

/// Replays a stack of `(vertex, representative)` pairs onto `base`, popping
/// in reverse push order and inserting each vertex directly after its
/// representative.
pub fn reconstruct(mut base: Order, stack: &[(usize, usize)]) -> Result<Order> {
    for &(v, rep) in stack.iter().rev() {
        if !base.contains(rep) {
            return Err(Error::Reconstruction(format!(
                "representative {rep} of {v} is not present when {v} is inserted"
            )));
        }
        base.insert_after(rep, v)?;
    }
    Ok(base)
}
