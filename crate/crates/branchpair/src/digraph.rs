use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Dense vertex index into a [`DiGraph`].
pub type Vertex = usize;

/// Hard cap on vertex count; adjacency is kept in `u64` bit rows.
pub const MAX_VERTICES: usize = 64;

/// An arc occurrence class: `tail -> head` with a multiplicity.
///
/// Multiplicity is 1 everywhere except in multidigraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
    pub multiplicity: u32,
}

/// A loopless digraph on densely indexed vertices.
///
/// Values are immutable after construction; every mutation returns a new
/// digraph, so shared references are safe across parallel workers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiGraph {
    n: usize,
    multi: bool,
    out: Vec<u64>,
    inn: Vec<u64>,
    /// Multiplicities strictly greater than one; empty for simple digraphs.
    mult: BTreeMap<(Vertex, Vertex), u32>,
}

impl DiGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        DiGraph {
            n,
            multi: false,
            out: vec![0; n],
            inn: vec![0; n],
            mult: BTreeMap::new(),
        }
    }

    /// Builds a simple digraph. Rejects loops, duplicates and bad endpoints.
    pub fn build(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut d = Self::empty(n);
        for &(u, v) in arcs {
            d.insert_arc(u, v)?;
        }
        Ok(d)
    }

    /// Builds a multidigraph: repeated `(tail, head)` pairs accumulate
    /// multiplicity.
    pub fn build_multi(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut d = Self::empty(n);
        d.multi = true;
        for &(u, v) in arcs {
            d.insert_arc(u, v)?;
        }
        Ok(d)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange(v, self.n));
        }
        Ok(())
    }

    fn insert_arc(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::LoopArc(u));
        }
        if self.out[u] >> v & 1 == 1 {
            if !self.multi {
                return Err(Error::DuplicateArcInSimpleDigraph(u, v));
            }
            *self.mult.entry((u, v)).or_insert(1) += 1;
        } else {
            self.out[u] |= 1 << v;
            self.inn[v] |= 1 << u;
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_multi(&self) -> bool {
        self.multi
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.out[u] >> v & 1 == 1
    }

    /// `u` and `v` are joined by an arc in at least one direction.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        if !self.has_arc(u, v) {
            0
        } else {
            self.mult.get(&(u, v)).copied().unwrap_or(1)
        }
    }

    /// Out-neighbour bit row of `u`.
    pub fn out_mask(&self, u: Vertex) -> u64 {
        self.out[u]
    }

    pub fn in_mask(&self, u: Vertex) -> u64 {
        self.inn[u]
    }

    pub fn out_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        BitIter(self.out[u])
    }

    pub fn in_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        BitIter(self.inn[u])
    }

    /// Out-degree counting multiplicity.
    pub fn out_degree(&self, u: Vertex) -> u32 {
        let simple = self.out[u].count_ones();
        if self.mult.is_empty() {
            simple
        } else {
            simple
                + self
                    .mult
                    .iter()
                    .filter(|&(&(t, _), _)| t == u)
                    .map(|(_, m)| m - 1)
                    .sum::<u32>()
        }
    }

    /// In-degree counting multiplicity.
    pub fn in_degree(&self, u: Vertex) -> u32 {
        let simple = self.inn[u].count_ones();
        if self.mult.is_empty() {
            simple
        } else {
            simple
                + self
                    .mult
                    .iter()
                    .filter(|&(&(_, h), _)| h == u)
                    .map(|(_, m)| m - 1)
                    .sum::<u32>()
        }
    }

    /// Number of arc occurrences (multiplicities summed).
    pub fn arc_count(&self) -> u64 {
        let distinct: u64 = self.out.iter().map(|m| m.count_ones() as u64).sum();
        distinct + self.mult.values().map(|&m| (m - 1) as u64).sum::<u64>()
    }

    /// Number of distinct `(tail, head)` pairs.
    pub fn distinct_arc_count(&self) -> usize {
        self.out.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Arcs in deterministic `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.vertices().flat_map(move |u| {
            self.out_neighbors(u).map(move |v| Arc {
                tail: u,
                head: v,
                multiplicity: self.multiplicity(u, v),
            })
        })
    }

    /// Arc list as plain pairs, one entry per distinct arc.
    pub fn arc_pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.arcs().map(|a| (a.tail, a.head)).collect()
    }

    /// Subdigraph induced by `subset`, reindexed densely.
    ///
    /// Returns the subdigraph together with the back-map: entry `i` is the
    /// original vertex that became local vertex `i`. The subset is processed
    /// in ascending order, so the back-map is sorted.
    pub fn induced(&self, subset: &[Vertex]) -> Result<(DiGraph, Vec<Vertex>)> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut back: Vec<Vertex> = subset.to_vec();
        back.sort_unstable();
        back.dedup();
        for &v in &back {
            self.check_vertex(v)?;
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in back.iter().enumerate() {
            local[v] = i;
        }
        let mut sub = Self::empty(back.len());
        sub.multi = self.multi;
        for &u in &back {
            for v in self.out_neighbors(u) {
                if local[v] != usize::MAX {
                    sub.out[local[u]] |= 1 << local[v];
                    sub.inn[local[v]] |= 1 << local[u];
                    let m = self.multiplicity(u, v);
                    if m > 1 {
                        sub.mult.insert((local[u], local[v]), m);
                    }
                }
            }
        }
        Ok((sub, back))
    }

    /// Subdigraph induced by the bit set `mask`.
    pub fn induced_mask(&self, mask: u64) -> Result<(DiGraph, Vec<Vertex>)> {
        let subset: Vec<Vertex> = BitIter(mask).collect();
        self.induced(&subset)
    }

    /// The converse digraph: every arc reversed. An involution.
    pub fn reverse(&self) -> DiGraph {
        let mut r = Self::empty(self.n);
        r.multi = self.multi;
        r.out = self.inn.clone();
        r.inn = self.out.clone();
        r.mult = self.mult.iter().map(|(&(u, v), &m)| ((v, u), m)).collect();
        r
    }

    pub fn add_arc(&self, u: Vertex, v: Vertex) -> Result<DiGraph> {
        let mut d = self.clone();
        d.insert_arc(u, v)?;
        Ok(d)
    }

    /// Removes one occurrence of `(u, v)`.
    pub fn remove_arc(&self, u: Vertex, v: Vertex) -> Result<DiGraph> {
        let mut d = self.clone();
        d.delete_occurrence(u, v)?;
        Ok(d)
    }

    /// Removes one occurrence per listed arc.
    pub fn remove_arcs(&self, arcs: &[(Vertex, Vertex)]) -> Result<DiGraph> {
        let mut d = self.clone();
        for &(u, v) in arcs {
            d.delete_occurrence(u, v)?;
        }
        Ok(d)
    }

    fn delete_occurrence(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_arc(u, v) {
            return Err(Error::ArcAbsent(u, v));
        }
        match self.mult.get_mut(&(u, v)) {
            Some(m) if *m > 2 => *m -= 1,
            Some(_) => {
                self.mult.remove(&(u, v));
            }
            None => {
                self.out[u] &= !(1 << v);
                self.inn[v] &= !(1 << u);
            }
        }
        Ok(())
    }

    /// Packs the adjacency matrix (diagonal skipped, row-major) into a `u64`.
    /// Only valid for simple digraphs with `n*(n-1) <= 64`.
    pub fn arc_mask(&self) -> u64 {
        assert!(self.n * (self.n - 1) <= 64 && !self.multi);
        let mut mask = 0u64;
        let mut bit = 0;
        for u in 0..self.n {
            for v in 0..self.n {
                if u == v {
                    continue;
                }
                if self.has_arc(u, v) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    /// Builds a simple digraph directly from out-neighbour bit rows.
    /// Diagonal bits must be clear.
    pub fn from_out_rows(n: usize, rows: &[u64]) -> DiGraph {
        debug_assert_eq!(rows.len(), n);
        let mut d = Self::empty(n);
        for (u, &row) in rows.iter().enumerate() {
            debug_assert_eq!(row >> u & 1, 0, "loop bit at {u}");
            d.out[u] = row;
            for v in BitIter(row) {
                d.inn[v] |= 1 << u;
            }
        }
        d
    }

    /// Inverse of [`arc_mask`](Self::arc_mask).
    pub fn from_arc_mask(n: usize, mask: u64) -> DiGraph {
        let mut d = Self::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                if mask >> bit & 1 == 1 {
                    d.out[u] |= 1 << v;
                    d.inn[v] |= 1 << u;
                }
                bit += 1;
            }
        }
        d
    }
}

/// Iterates set bit positions from lowest to highest.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}
