//! Branchings (spanning out-/in-trees), good pairs, and their validation.

use std::collections::BTreeMap;

use crate::digraph::{DiGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Out-branching: every non-root vertex has in-degree one; the root
    /// reaches every vertex.
    Out,
    /// In-branching: every non-root vertex has out-degree one; every vertex
    /// reaches the root.
    In,
}

/// A spanning branching stored as one parent arc per non-root vertex.
///
/// For an out-branching the parent arc of `v` is `(parent, v)`; for an
/// in-branching it is `(v, parent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Branching {
    pub orientation: Orientation,
    pub root: Vertex,
    parent: Vec<Option<Vertex>>,
}

impl Branching {
    pub fn new(orientation: Orientation, root: Vertex, parent: Vec<Option<Vertex>>) -> Self {
        Branching {
            orientation,
            root,
            parent,
        }
    }

    /// Assembles a branching from its arc list. Fails when the arcs do not
    /// assign exactly one parent per non-root vertex; spanning-tree validity
    /// is left to [`validate_branching`].
    pub fn from_arcs(
        orientation: Orientation,
        root: Vertex,
        n: usize,
        arcs: &[(Vertex, Vertex)],
    ) -> Result<Self> {
        if root >= n {
            return Err(Error::VertexOutOfRange(root, n));
        }
        let mut parent = vec![None; n];
        for &(u, v) in arcs {
            if u >= n {
                return Err(Error::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            // The child endpoint owning this parent arc.
            let child = match orientation {
                Orientation::Out => v,
                Orientation::In => u,
            };
            let par = match orientation {
                Orientation::Out => u,
                Orientation::In => v,
            };
            if child == root {
                return Err(Error::PreconditionViolated(format!(
                    "arc ({u}, {v}) assigns a parent to the root {root}"
                )));
            }
            if parent[child].is_some() {
                return Err(Error::PreconditionViolated(format!(
                    "vertex {child} assigned two parent arcs"
                )));
            }
            parent[child] = Some(par);
        }
        if arcs.len() + 1 != n {
            return Err(Error::PreconditionViolated(format!(
                "{} arcs cannot span {n} vertices",
                arcs.len()
            )));
        }
        Ok(Branching {
            orientation,
            root,
            parent,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent_of(&self, v: Vertex) -> Option<Vertex> {
        self.parent.get(v).copied().flatten()
    }

    /// Arcs as they occur in the host digraph.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let orientation = self.orientation;
        self.parent.iter().enumerate().filter_map(move |(v, p)| {
            p.map(|p| match orientation {
                Orientation::Out => (p, v),
                Orientation::In => (v, p),
            })
        })
    }

    pub fn sorted_arcs(&self) -> Vec<(Vertex, Vertex)> {
        let mut arcs: Vec<_> = self.arcs().collect();
        arcs.sort_unstable();
        arcs
    }
}

/// An in-branching and an out-branching of the same digraph sharing no arc
/// occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPair {
    pub in_branching: Branching,
    pub out_branching: Branching,
}

impl GoodPair {
    pub fn new(in_branching: Branching, out_branching: Branching) -> Self {
        GoodPair {
            in_branching,
            out_branching,
        }
    }

    pub fn in_root(&self) -> Vertex {
        self.in_branching.root
    }

    pub fn out_root(&self) -> Vertex {
        self.out_branching.root
    }
}

/// Checks every branching invariant in `d`, reporting the first failure.
pub fn validate_branching(d: &DiGraph, b: &Branching) -> std::result::Result<(), String> {
    let n = d.vertex_count();
    if b.vertex_count() != n {
        return Err(format!(
            "branching covers {} vertices, digraph has {n}",
            b.vertex_count()
        ));
    }
    if b.root >= n {
        return Err(format!("root {} out of range", b.root));
    }
    if b.parent_of(b.root).is_some() {
        return Err(format!("root {} has a parent arc", b.root));
    }
    for v in 0..n {
        if v != b.root && b.parent_of(v).is_none() {
            return Err(format!("vertex {v} is not spanned"));
        }
    }
    for (u, v) in b.arcs() {
        if !d.has_arc(u, v) {
            return Err(format!("arc ({u}, {v}) is not in the digraph"));
        }
    }
    // Every parent chain must terminate at the root without revisiting.
    let mut state = vec![0u8; n]; // 0 unknown, 1 in progress, 2 ok
    state[b.root] = 2;
    for start in 0..n {
        let mut v = start;
        let mut chain = Vec::new();
        while state[v] == 0 {
            state[v] = 1;
            chain.push(v);
            match b.parent_of(v) {
                Some(p) => v = p,
                None => return Err(format!("chain from {start} leaves the tree at {v}")),
            }
        }
        if state[v] == 1 {
            return Err(format!("cycle through vertex {v}"));
        }
        for c in chain {
            state[c] = 2;
        }
    }
    Ok(())
}

/// Checks both branchings and their arc-occurrence disjointness. In a
/// multidigraph an arc may serve both sides only if its multiplicity covers
/// both occurrences.
pub fn validate_good_pair(d: &DiGraph, pair: &GoodPair) -> std::result::Result<(), String> {
    if pair.in_branching.orientation != Orientation::In {
        return Err("first branching is not an in-branching".into());
    }
    if pair.out_branching.orientation != Orientation::Out {
        return Err("second branching is not an out-branching".into());
    }
    validate_branching(d, &pair.in_branching).map_err(|e| format!("in-branching: {e}"))?;
    validate_branching(d, &pair.out_branching).map_err(|e| format!("out-branching: {e}"))?;
    let mut used: BTreeMap<(Vertex, Vertex), u32> = BTreeMap::new();
    for arc in pair.in_branching.arcs().chain(pair.out_branching.arcs()) {
        *used.entry(arc).or_insert(0) += 1;
    }
    for ((u, v), count) in used {
        if count > d.multiplicity(u, v) {
            return Err(format!(
                "arc ({u}, {v}) used {count} times but has multiplicity {}",
                d.multiplicity(u, v)
            ));
        }
    }
    Ok(())
}

/// In-branching rooted at `r` built by breadth-first search along reverse
/// arcs; present exactly when every vertex reaches `r`.
pub fn in_branching_via_bfs(d: &DiGraph, r: Vertex) -> Option<Branching> {
    bfs_branching(d, r, Orientation::In)
}

/// Out-branching rooted at `r`; present exactly when `r` reaches every
/// vertex.
pub fn out_branching_via_bfs(d: &DiGraph, r: Vertex) -> Option<Branching> {
    bfs_branching(d, r, Orientation::Out)
}

fn bfs_branching(d: &DiGraph, r: Vertex, orientation: Orientation) -> Option<Branching> {
    let n = d.vertex_count();
    if r >= n {
        return None;
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[r] = true;
    let mut queue = std::collections::VecDeque::from([r]);
    while let Some(u) = queue.pop_front() {
        let frontier: Vec<Vertex> = match orientation {
            Orientation::Out => d.out_neighbors(u).collect(),
            Orientation::In => d.in_neighbors(u).collect(),
        };
        for v in frontier {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    if seen.iter().all(|&s| s) {
        Some(Branching::new(orientation, r, parent))
    } else {
        None
    }
}
