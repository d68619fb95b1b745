//! Exhaustive ground-truth oracle for good-pair existence.
//!
//! Branchings are enumerated on one side only; the other side is solved in
//! polynomial time on the residual digraph, which keeps the search singly
//! exponential. The enumeration side is chosen by an indegree/outdegree
//! product estimate.

use std::fmt;
use std::time::Instant;

use crate::analysis::{in_generators, out_generators};
use crate::branching::{validate_good_pair, Branching, GoodPair, Orientation};
use crate::digraph::{BitIter, DiGraph, Vertex};
use crate::error::{Error, Result};

/// Enumeration cap for branching searches.
pub const ENUMERATION_LIMIT: usize = 16;

/// Soft limits for oracle runs. Exceeding a limit is an explicit
/// [`Error::BudgetExceeded`], never a silent "no pair".
#[derive(Debug, Clone)]
pub struct Budget {
    pub max_branchings: u64,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_branchings: 50_000_000,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_branchings: u64::MAX,
            deadline: None,
        }
    }

    pub fn with_seconds(secs: u64) -> Self {
        Budget {
            max_branchings: u64::MAX,
            deadline: Some(Instant::now() + std::time::Duration::from_secs(secs)),
        }
    }
}

/// Which side the oracle enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Out,
    In,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Out => "out",
            Side::In => "in",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SearchStats {
    pub branchings: u64,
    pub roots_tried: u32,
    pub side: Side,
    pub route: String,
}

impl SearchStats {
    fn new(side: Side) -> Self {
        SearchStats {
            branchings: 0,
            roots_tried: 0,
            side,
            route: "oracle".into(),
        }
    }
}

/// Machine-checkable outcome of a good-pair query.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// A validated pair.
    PairFound { pair: GoodPair, stats: SearchStats },
    /// Semicomplete refusal: the only in-neighbour of `r` is `y`, whose only
    /// in-neighbour is `z`; both forced arcs leave no out-branching behind.
    Exception { r: Vertex, y: Vertex, z: Vertex },
    /// The order-4 refusal pattern rooted at `r`.
    FourException { r: Vertex },
    /// Enumeration provably covered every branching of the relevant root
    /// set and found nothing.
    ExhaustedSearch { stats: SearchStats },
}

impl Certificate {
    pub fn pair(&self) -> Option<&GoodPair> {
        match self {
            Certificate::PairFound { pair, .. } => Some(pair),
            _ => None,
        }
    }

    pub fn found(&self) -> bool {
        matches!(self, Certificate::PairFound { .. })
    }

    pub fn stats(&self) -> Option<&SearchStats> {
        match self {
            Certificate::PairFound { stats, .. } | Certificate::ExhaustedSearch { stats } => {
                Some(stats)
            }
            _ => None,
        }
    }
}

fn arcs_line(arcs: &[(Vertex, Vertex)]) -> String {
    arcs.iter()
        .map(|(u, v)| format!("{u}->{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Certificate {
    /// Line-oriented transcript with CERT/STAT prefixes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::PairFound { pair, stats } => {
                writeln!(f, "CERT kind=pair-found")?;
                writeln!(
                    f,
                    "CERT root-in={} root-out={}",
                    pair.in_root(),
                    pair.out_root()
                )?;
                writeln!(
                    f,
                    "CERT in-arcs={}",
                    arcs_line(&pair.in_branching.sorted_arcs())
                )?;
                writeln!(
                    f,
                    "CERT out-arcs={}",
                    arcs_line(&pair.out_branching.sorted_arcs())
                )?;
                write!(
                    f,
                    "STAT branchings={} roots-tried={} side={} route={}",
                    stats.branchings, stats.roots_tried, stats.side, stats.route
                )
            }
            Certificate::Exception { r, y, z } => {
                writeln!(f, "CERT kind=exception r={r} y={y} z={z}")?;
                write!(
                    f,
                    "CERT note=arcs {y}->{r} and {z}->{y} are forced into any in-branching rooted {r}, leaving two sources"
                )
            }
            Certificate::FourException { r } => {
                write!(f, "CERT kind=four-exception r={r}")
            }
            Certificate::ExhaustedSearch { stats } => {
                writeln!(f, "CERT kind=exhausted-search")?;
                write!(
                    f,
                    "STAT branchings={} roots-tried={} side={} route={}",
                    stats.branchings, stats.roots_tried, stats.side, stats.route
                )
            }
        }
    }
}

/// Streams every spanning out-branching rooted at `root`, each exactly once,
/// in deterministic order: non-root vertices ascending, each choosing one
/// in-arc, with cycles pruned as soon as they close.
pub struct OutBranchingIter<'a> {
    verts: Vec<Vertex>,
    in_nbrs: Vec<Vec<Vertex>>,
    choice: Vec<usize>,
    parent: Vec<Option<Vertex>>,
    root: Vertex,
    n: usize,
    depth: usize,
    exhausted: bool,
    _d: &'a DiGraph,
}

pub fn enumerate_out_branchings<'a>(d: &'a DiGraph, root: Vertex) -> Result<OutBranchingIter<'a>> {
    let n = d.vertex_count();
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge(n, ENUMERATION_LIMIT));
    }
    if root >= n {
        return Err(Error::VertexOutOfRange(root, n));
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if crate::analysis::reachable_from(d, root) != all {
        return Err(Error::RootCannotReachAll(root));
    }
    let verts: Vec<Vertex> = (0..n).filter(|&v| v != root).collect();
    let in_nbrs: Vec<Vec<Vertex>> = verts.iter().map(|&v| d.in_neighbors(v).collect()).collect();
    Ok(OutBranchingIter {
        choice: vec![0; verts.len()],
        parent: vec![None; n],
        verts,
        in_nbrs,
        root,
        n,
        depth: 0,
        exhausted: false,
        _d: d,
    })
}

impl OutBranchingIter<'_> {
    fn creates_cycle(&self, child: Vertex, cand: Vertex) -> bool {
        let mut w = cand;
        loop {
            if w == child {
                return true;
            }
            match self.parent[w] {
                Some(p) => w = p,
                None => return false,
            }
        }
    }

    /// Steps the backtracking machine until the next full assignment.
    fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        loop {
            if self.depth == self.verts.len() {
                return true;
            }
            let v = self.verts[self.depth];
            let mut i = self.choice[self.depth];
            let mut advanced = false;
            while i < self.in_nbrs[self.depth].len() {
                let cand = self.in_nbrs[self.depth][i];
                if !self.creates_cycle(v, cand) {
                    self.parent[v] = Some(cand);
                    self.choice[self.depth] = i + 1;
                    self.depth += 1;
                    if self.depth < self.verts.len() {
                        self.choice[self.depth] = 0;
                    }
                    advanced = true;
                    break;
                }
                i += 1;
            }
            if advanced {
                continue;
            }
            // Backtrack.
            if self.depth == 0 {
                self.exhausted = true;
                return false;
            }
            self.choice[self.depth] = 0;
            self.depth -= 1;
            self.parent[self.verts[self.depth]] = None;
        }
    }

    /// Pops the deepest assignment so the next `advance` moves on.
    fn step_past_full(&mut self) {
        debug_assert_eq!(self.depth, self.verts.len());
        if self.verts.is_empty() {
            self.exhausted = true;
            return;
        }
        self.depth -= 1;
        self.parent[self.verts[self.depth]] = None;
    }
}

impl Iterator for OutBranchingIter<'_> {
    type Item = Branching;

    fn next(&mut self) -> Option<Branching> {
        if !self.advance() {
            return None;
        }
        let b = Branching::new(Orientation::Out, self.root, self.parent.clone());
        debug_assert_eq!(b.vertex_count(), self.n);
        self.step_past_full();
        Some(b)
    }
}

/// Decides good-pair existence with optional root constraints; an absent
/// constraint means any root. Returns a validated pair, or an exhaustion
/// certificate with search statistics.
pub fn good_pair(
    d: &DiGraph,
    root_in: Option<Vertex>,
    root_out: Option<Vertex>,
    budget: &Budget,
) -> Result<Certificate> {
    let n = d.vertex_count();
    for root in [root_in, root_out].into_iter().flatten() {
        if root >= n {
            return Err(Error::VertexOutOfRange(root, n));
        }
    }
    if n == 0 {
        return Err(Error::TooFewVertices);
    }
    if n == 1 {
        let pair = GoodPair::new(
            Branching::new(Orientation::In, 0, vec![None]),
            Branching::new(Orientation::Out, 0, vec![None]),
        );
        return Ok(Certificate::PairFound {
            pair,
            stats: SearchStats::new(Side::Out),
        });
    }

    let out_roots = admissible(out_generators(d), root_out);
    let in_roots = admissible(in_generators(d), root_in);
    if out_roots.is_empty() || in_roots.is_empty() {
        return Ok(Certificate::ExhaustedSearch {
            stats: SearchStats::new(Side::Out),
        });
    }

    let cost_out = enumeration_cost(d, &out_roots, Side::Out);
    let cost_in = enumeration_cost(d, &in_roots, Side::In);
    if cost_in < cost_out {
        // Enumerate in-branchings instead: same query on the converse.
        let rev = d.reverse();
        let cert = enumerate_side(&rev, root_out, root_in, budget)?;
        return Ok(match cert {
            Certificate::PairFound { pair, mut stats } => {
                stats.side = Side::In;
                let flipped = GoodPair::new(
                    flip(pair.out_branching, Orientation::In),
                    flip(pair.in_branching, Orientation::Out),
                );
                if let Err(e) = validate_good_pair(d, &flipped) {
                    return Err(Error::Internal(format!("oracle produced a bad pair: {e}")));
                }
                Certificate::PairFound {
                    pair: flipped,
                    stats,
                }
            }
            Certificate::ExhaustedSearch { mut stats } => {
                stats.side = Side::In;
                Certificate::ExhaustedSearch { stats }
            }
            other => other,
        });
    }
    enumerate_side(d, root_in, root_out, budget)
}

fn flip(b: Branching, orientation: Orientation) -> Branching {
    // Reversing every arc of a branching of the converse digraph amounts to
    // flipping its orientation tag; parent arcs stay put.
    let root = b.root;
    let parent = (0..b.vertex_count()).map(|v| b.parent_of(v)).collect();
    Branching::new(orientation, root, parent)
}

fn admissible(generators: Vec<Vertex>, constraint: Option<Vertex>) -> Vec<Vertex> {
    match constraint {
        Some(r) if generators.contains(&r) => vec![r],
        Some(_) => Vec::new(),
        None => generators,
    }
}

fn enumeration_cost(d: &DiGraph, roots: &[Vertex], side: Side) -> f64 {
    let degree = |v: Vertex| -> f64 {
        let deg = match side {
            Side::Out => d.in_mask(v).count_ones(),
            Side::In => d.out_mask(v).count_ones(),
        };
        (deg as f64).max(1.0)
    };
    let full: f64 = d.vertices().map(degree).product();
    roots.iter().map(|&q| full / degree(q)).sum()
}

/// Core loop: enumerate out-branchings per admissible out-root and test the
/// residual for an in-branching.
fn enumerate_side(
    d: &DiGraph,
    root_in: Option<Vertex>,
    root_out: Option<Vertex>,
    budget: &Budget,
) -> Result<Certificate> {
    let n = d.vertex_count();
    let mut stats = SearchStats::new(Side::Out);
    let out_roots = admissible(out_generators(d), root_out);
    let base_rows: Vec<u64> = d.vertices().map(|u| d.out_mask(u)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rows = vec![0u64; n];

    for q in out_roots {
        stats.roots_tried += 1;
        for out_branching in enumerate_out_branchings(d, q)? {
            stats.branchings += 1;
            if stats.branchings > budget.max_branchings {
                return Err(Error::BudgetExceeded(stats));
            }
            if stats.branchings.is_multiple_of(4096) {
                if let Some(deadline) = budget.deadline {
                    if Instant::now() > deadline {
                        return Err(Error::BudgetExceeded(stats));
                    }
                }
            }
            rows.copy_from_slice(&base_rows);
            for v in d.vertices() {
                if let Some(p) = out_branching.parent_of(v) {
                    if d.multiplicity(p, v) == 1 {
                        rows[p] &= !(1 << v);
                    }
                }
            }
            let r = match root_in {
                Some(r) => {
                    if backward_closure(&rows, r, all) == all {
                        Some(r)
                    } else {
                        None
                    }
                }
                None => universal_sink_vertex(&rows, all),
            };
            if let Some(r) = r {
                let in_branching = residual_in_branching(&rows, n, r);
                let pair = GoodPair::new(in_branching, out_branching);
                if let Err(e) = validate_good_pair(d, &pair) {
                    return Err(Error::Internal(format!("oracle produced a bad pair: {e}")));
                }
                return Ok(Certificate::PairFound { pair, stats });
            }
        }
    }
    Ok(Certificate::ExhaustedSearch { stats })
}

/// Vertices that reach `r` along `rows`, as a mask.
fn backward_closure(rows: &[u64], r: Vertex, all: u64) -> u64 {
    let mut reached = 1u64 << r;
    loop {
        let mut next = reached;
        for u in BitIter(all & !reached) {
            if rows[u] & reached != 0 {
                next |= 1 << u;
            }
        }
        if next == reached {
            return reached;
        }
        reached = next;
    }
}

/// Lowest vertex reachable from every vertex, if any: exactly the witness
/// for a unique terminal strong component.
fn universal_sink_vertex(rows: &[u64], all: u64) -> Option<Vertex> {
    let n = rows.len();
    let mut cand = all;
    for v in 0..n {
        let mut reach = 1u64 << v;
        loop {
            let mut next = reach;
            for u in BitIter(reach) {
                next |= rows[u];
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        cand &= reach;
        if cand == 0 {
            return None;
        }
    }
    Some(cand.trailing_zeros() as usize)
}

/// In-branching rooted `r` built wave by wave over the residual rows;
/// every vertex joins through its lowest already-reached out-neighbour.
fn residual_in_branching(rows: &[u64], n: usize, r: Vertex) -> Branching {
    let mut parent = vec![None; n];
    let mut reached = 1u64 << r;
    loop {
        let mut new = Vec::new();
        for (u, &row) in rows.iter().enumerate() {
            if reached >> u & 1 == 0 {
                let options = row & reached;
                if options != 0 {
                    new.push((u, options.trailing_zeros() as usize));
                }
            }
        }
        if new.is_empty() {
            break;
        }
        for (u, p) in new {
            parent[u] = Some(p);
            reached |= 1 << u;
        }
    }
    Branching::new(Orientation::In, r, parent)
}

/// Semicomplete refusal test: `N⁻(r) = {y}` with `d⁻(y) = 1`; the witness is
/// `(y, z)` for `z` the sole in-neighbour of `y`.
pub fn is_exception(d: &DiGraph, r: Vertex) -> Result<Option<(Vertex, Vertex)>> {
    if !crate::analysis::is_semicomplete(d) {
        return Err(Error::NotSemicomplete);
    }
    if r >= d.vertex_count() {
        return Err(Error::VertexOutOfRange(r, d.vertex_count()));
    }
    if d.in_degree(r) != 1 {
        return Ok(None);
    }
    let y = d.in_neighbors(r).next().expect("in-degree one");
    if d.in_degree(y) != 1 {
        return Ok(None);
    }
    let z = d.in_neighbors(y).next().expect("in-degree one");
    Ok(Some((y, z)))
}

/// Order-4 refusal pattern: everything in `d` beyond the strong tournament
/// on (a, b, c, d) mapped with `a = r` must be among the two tolerated arcs
/// dc, cb.
pub fn is_4_exception(d: &DiGraph, r: Vertex) -> bool {
    if d.vertex_count() != 4 || r >= 4 || d.is_multi() {
        return false;
    }
    let st4 = &crate::families::ST4_ARCS;
    let others: Vec<Vertex> = (0..4).filter(|&v| v != r).collect();
    let mut perm = [r, 0, 0, 0];
    // All 6 assignments of the remaining labels b, c, d.
    let orders = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for order in orders {
        for (slot, &pick) in order.iter().enumerate() {
            perm[slot + 1] = others[pick];
        }
        let required: Vec<(Vertex, Vertex)> =
            st4.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        if !required.iter().all(|&(u, v)| d.has_arc(u, v)) {
            continue;
        }
        let tolerated = [(perm[3], perm[2]), (perm[2], perm[1])];
        let ok = d.arcs().all(|a| {
            let arc = (a.tail, a.head);
            required.contains(&arc) || tolerated.contains(&arc)
        });
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, Family};
    use std::collections::HashSet;

    fn st4() -> DiGraph {
        families::generate(&Family::St4).unwrap().digraph
    }

    /// Independent brute-force count of out-branchings rooted at `root`:
    /// checks every arc subset of size n-1.
    fn brute_force_out_branchings(d: &DiGraph, root: Vertex) -> Vec<Vec<(Vertex, Vertex)>> {
        let arcs = d.arc_pairs();
        let n = d.vertex_count();
        let mut found = Vec::new();
        for mask in 0u64..(1 << arcs.len()) {
            if (mask.count_ones() as usize) != n - 1 {
                continue;
            }
            let subset: Vec<(Vertex, Vertex)> = arcs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a)
                .collect();
            if let Ok(b) = Branching::from_arcs(Orientation::Out, root, n, &subset) {
                if crate::branching::validate_branching(d, &b).is_ok() {
                    found.push(b.sorted_arcs());
                }
            }
        }
        found
    }

    #[test]
    fn directed_cycle_has_unique_branching() {
        let d = DiGraph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        for root in d.vertices() {
            let all: Vec<_> = enumerate_out_branchings(&d, root).unwrap().collect();
            assert_eq!(all.len(), 1);
        }
    }

    #[test]
    fn two_cycle_has_unique_branching() {
        let d = DiGraph::build(2, &[(0, 1), (1, 0)]).unwrap();
        let all: Vec<_> = enumerate_out_branchings(&d, 0).unwrap().collect();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn st4_count_matches_brute_force_and_all_validate() {
        let d = st4();
        for root in d.vertices() {
            let brute = brute_force_out_branchings(&d, root);
            let mut seen = HashSet::new();
            let mut count = 0;
            for b in enumerate_out_branchings(&d, root).unwrap() {
                assert!(crate::branching::validate_branching(&d, &b).is_ok());
                assert!(seen.insert(b.sorted_arcs()), "duplicate branching");
                count += 1;
            }
            assert_eq!(count, brute.len(), "root {root}");
        }
        // Frozen from the brute-force oracle above: the four raw in-arc
        // choice vectors rooted at a include one cyclic one.
        assert_eq!(brute_force_out_branchings(&d, 0).len(), 3);
    }

    #[test]
    fn unreachable_root_is_rejected() {
        let d = DiGraph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            enumerate_out_branchings(&d, 2),
            Err(Error::RootCannotReachAll(2))
        ));
    }

    #[test]
    fn e4_has_no_pair_but_f4_does() {
        let e4 = families::generate(&Family::E4).unwrap().digraph;
        let cert = good_pair(&e4, None, None, &Budget::default()).unwrap();
        assert!(!cert.found(), "{cert}");
        let f4 = families::generate(&Family::F4).unwrap().digraph;
        let cert = good_pair(&f4, None, None, &Budget::default()).unwrap();
        assert!(cert.found(), "{cert}");
    }

    #[test]
    fn w_has_no_pair_out_of_c2_into_c1() {
        let w = families::generate(&Family::W).unwrap();
        let c1 = w.vertex("c1").unwrap();
        let c2 = w.vertex("c2").unwrap();
        let cert = good_pair(&w.digraph, Some(c1), Some(c2), &Budget::default()).unwrap();
        assert!(!cert.found(), "{cert}");
        // Unrestricted roots do admit a pair.
        let cert = good_pair(&w.digraph, None, None, &Budget::default()).unwrap();
        assert!(cert.found());
    }

    #[test]
    fn badmulti_has_no_pair_rooted_at_s_both_sides() {
        let bad = families::generate(&Family::BadMulti).unwrap();
        let s = bad.vertex("s").unwrap();
        let cert = good_pair(&bad.digraph, Some(s), Some(s), &Budget::default()).unwrap();
        assert!(!cert.found(), "{cert}");
    }

    #[test]
    fn oracle_duality_under_reversal() {
        let d = DiGraph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 1)]).unwrap();
        let rev = d.reverse();
        for r in 0..4 {
            for q in 0..4 {
                let a = good_pair(&d, Some(r), Some(q), &Budget::default()).unwrap();
                let b = good_pair(&rev, Some(q), Some(r), &Budget::default()).unwrap();
                assert_eq!(a.found(), b.found(), "roots ({r}, {q})");
            }
        }
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let mut arcs = Vec::new();
        for u in 0..6 {
            for v in 0..6 {
                if u != v {
                    arcs.push((u, v));
                }
            }
        }
        let complete = DiGraph::build(6, &arcs).unwrap();
        // A complete digraph has a pair immediately, so force exhaustion by
        // pinning impossible roots is not possible; instead cap at zero.
        let budget = Budget {
            max_branchings: 0,
            deadline: None,
        };
        assert!(matches!(
            good_pair(&complete, None, None, &budget),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn st4_exception_scan() {
        let d = st4();
        assert_eq!(is_exception(&d, 0).unwrap(), Some((3, 2)));
        assert_eq!(is_exception(&d, 1).unwrap(), None);
        assert_eq!(is_exception(&d, 2).unwrap(), None);
        assert_eq!(is_exception(&d, 3).unwrap(), None);
    }

    #[test]
    fn four_exception_recognition() {
        let d = st4();
        assert!(is_4_exception(&d, 0));
        assert!(!is_4_exception(&d, 1));
        for dc in [false, true] {
            for cb in [false, true] {
                let d = families::generate(&Family::FourException { dc, cb })
                    .unwrap()
                    .digraph;
                assert!(is_4_exception(&d, 0), "dc={dc} cb={cb}");
            }
        }
        let plus_ba = d.add_arc(1, 0).unwrap();
        assert!(!is_4_exception(&plus_ba, 0));
    }

    #[test]
    fn exception_requires_semicomplete() {
        let e4 = families::generate(&Family::E4).unwrap().digraph;
        assert!(matches!(is_exception(&e4, 0), Err(Error::NotSemicomplete)));
    }
}
