//! Polynomial constructive solvers. Every solver either returns a pair that
//! passed a full validation self-check, or refuses with a certificate or a
//! precondition error; silent best-effort answers are never produced.

mod alpha2;
mod cobipartite;
mod semicomplete;
mod small;
pub(crate) mod tables;

pub use alpha2::alpha2_good_pair;
pub use cobipartite::{cobipartite_good_pair, cobipartite_good_pair_report};
pub use semicomplete::{
    semicomplete_good_pair, semicomplete_good_r_pair, semicomplete_nonstrong_pair,
    semicomplete_util_extend,
};
pub use small::small_good_pair;

pub(crate) use small::path_split as small_path_split;

use std::fmt;

use crate::branching::{validate_good_pair, Branching, GoodPair, Orientation};
use crate::digraph::{DiGraph, Vertex};
use crate::error::{Error, Result};

/// Which constructive route produced a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    NonStrongSemicomplete,
    ExceptionTheorem,
    UtilExtension,
    ExtendLemma,
    SmallLookup,
    CoBipartite(CoBipCase),
    Alpha2(Alpha2Stage),
    OracleFallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoBipCase {
    /// Both sides have at least four vertices.
    LargeSides,
    /// One side has at most two vertices.
    SmallSideExtend,
    /// The small side has exactly three vertices.
    ThreeSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alpha2Stage {
    Small,
    Semicomplete,
    CoBipartite,
    GrowFromSeed,
    HamiltonianEndgame,
    OracleFallback,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Strategy::NonStrongSemicomplete => "non-strong-semicomplete",
            Strategy::ExceptionTheorem => "exception-theorem",
            Strategy::UtilExtension => "util-extension",
            Strategy::ExtendLemma => "extend-lemma",
            Strategy::SmallLookup => "small-lookup",
            Strategy::CoBipartite(CoBipCase::LargeSides) => "co-bipartite-large-sides",
            Strategy::CoBipartite(CoBipCase::SmallSideExtend) => "co-bipartite-small-side",
            Strategy::CoBipartite(CoBipCase::ThreeSide) => "co-bipartite-three-side",
            Strategy::Alpha2(Alpha2Stage::Small) => "alpha2-small",
            Strategy::Alpha2(Alpha2Stage::Semicomplete) => "alpha2-semicomplete",
            Strategy::Alpha2(Alpha2Stage::CoBipartite) => "alpha2-co-bipartite",
            Strategy::Alpha2(Alpha2Stage::GrowFromSeed) => "alpha2-grow-from-seed",
            Strategy::Alpha2(Alpha2Stage::HamiltonianEndgame) => "alpha2-hamiltonian-endgame",
            Strategy::Alpha2(Alpha2Stage::OracleFallback) => "alpha2-oracle-fallback",
            Strategy::OracleFallback => "oracle-fallback",
        };
        f.write_str(name)
    }
}

/// A solver outcome: the strategy that fired and its validated pair.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub strategy: Strategy,
    pub pair: GoodPair,
    /// Always true on return; kept explicit because the self-check is part
    /// of the contract.
    pub validated: bool,
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CERT kind=pair-found strategy={}", self.strategy)?;
        writeln!(
            f,
            "CERT root-in={} root-out={}",
            self.pair.in_root(),
            self.pair.out_root()
        )?;
        let line = |arcs: Vec<(Vertex, Vertex)>| {
            arcs.iter()
                .map(|(u, v)| format!("{u}->{v}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(
            f,
            "CERT in-arcs={}",
            line(self.pair.in_branching.sorted_arcs())
        )?;
        write!(
            f,
            "CERT out-arcs={}",
            line(self.pair.out_branching.sorted_arcs())
        )
    }
}

/// A good pair of an induced subdigraph, carried in host-digraph indices so
/// constructions can grow it arc by arc.
#[derive(Debug, Clone)]
pub struct SubPair {
    pub vertices: Vec<Vertex>,
    pub in_root: Vertex,
    pub out_root: Vertex,
    pub in_arcs: Vec<(Vertex, Vertex)>,
    pub out_arcs: Vec<(Vertex, Vertex)>,
}

impl SubPair {
    /// Lifts a pair of an induced subdigraph back into host indices using
    /// the back-map from [`DiGraph::induced`].
    pub fn from_local_pair(pair: &GoodPair, back: &[Vertex]) -> SubPair {
        let map = |(u, v): (Vertex, Vertex)| (back[u], back[v]);
        SubPair {
            vertices: back.to_vec(),
            in_root: back[pair.in_root()],
            out_root: back[pair.out_root()],
            in_arcs: pair.in_branching.arcs().map(map).collect(),
            out_arcs: pair.out_branching.arcs().map(map).collect(),
        }
    }

    /// Wraps a pair that already spans its host digraph.
    pub fn from_pair(pair: &GoodPair) -> SubPair {
        let back: Vec<Vertex> = (0..pair.in_branching.vertex_count()).collect();
        SubPair::from_local_pair(pair, &back)
    }

    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0u64, |m, &v| m | 1 << v)
    }

    /// Finishes the growth: the pair must now span the host digraph.
    pub fn into_pair(self, d: &DiGraph) -> Result<GoodPair> {
        if self.vertices.len() != d.vertex_count() {
            return Err(Error::Internal(format!(
                "pair spans {} of {} vertices",
                self.vertices.len(),
                d.vertex_count()
            )));
        }
        assemble_pair(
            d,
            self.in_root,
            self.out_root,
            &self.in_arcs,
            &self.out_arcs,
        )
    }
}

/// Builds both branchings from arc lists and runs the mandatory validation
/// self-check.
pub(crate) fn assemble_pair(
    d: &DiGraph,
    in_root: Vertex,
    out_root: Vertex,
    in_arcs: &[(Vertex, Vertex)],
    out_arcs: &[(Vertex, Vertex)],
) -> Result<GoodPair> {
    let n = d.vertex_count();
    let i = Branching::from_arcs(Orientation::In, in_root, n, in_arcs)
        .map_err(|e| Error::Internal(format!("in-branching assembly: {e}")))?;
    let o = Branching::from_arcs(Orientation::Out, out_root, n, out_arcs)
        .map_err(|e| Error::Internal(format!("out-branching assembly: {e}")))?;
    let pair = GoodPair::new(i, o);
    validate_good_pair(d, &pair).map_err(Error::Internal)?;
    Ok(pair)
}

/// Orientation-flip of a pair found in the converse digraph.
pub(crate) fn flip_pair(pair: GoodPair) -> GoodPair {
    let flip = |b: Branching, orientation: Orientation| {
        let parent = (0..b.vertex_count()).map(|v| b.parent_of(v)).collect();
        Branching::new(orientation, b.root, parent)
    };
    GoodPair::new(
        flip(pair.out_branching, Orientation::In),
        flip(pair.in_branching, Orientation::Out),
    )
}

/// Buffer extension: every `x` in `buffer` hangs off the existing pair by
/// one out-arc into it (for the in-branching) and one in-arc from it (for
/// the out-branching).
pub fn extend_by_buffer(d: &DiGraph, buffer: &[Vertex], sub: &SubPair) -> Result<GoodPair> {
    let n = d.vertex_count();
    let buffer_mask: u64 = buffer.iter().fold(0, |m, &v| m | 1 << v);
    let core_mask = sub.mask();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if buffer_mask & core_mask != 0 || buffer_mask | core_mask != all {
        return Err(Error::PreconditionViolated(
            "buffer must partition the vertices with the sub-pair".into(),
        ));
    }
    let mut state = sub.clone();
    extend_by_buffer_state(d, buffer, &mut state)?;
    state.into_pair(d)
}

/// In-place version used by the growth loops.
pub(crate) fn extend_by_buffer_state(
    d: &DiGraph,
    buffer: &[Vertex],
    state: &mut SubPair,
) -> Result<()> {
    let core_mask = state.mask();
    for &x in buffer {
        let y = (d.out_mask(x) & core_mask).trailing_zeros() as usize;
        let w = (d.in_mask(x) & core_mask).trailing_zeros() as usize;
        if y >= 64 || w >= 64 {
            return Err(Error::PreconditionViolated(format!(
                "buffer vertex {x} lacks a neighbour on both sides outside the buffer"
            )));
        }
        state.in_arcs.push((x, y));
        state.out_arcs.push((w, x));
    }
    state.vertices.extend_from_slice(buffer);
    state.vertices.sort_unstable();
    Ok(())
}

/// Grows a sub-pair to span `d` by repeated buffer absorption, finishing a
/// stuck three-vertex remainder with the dedicated endgame. Returns `None`
/// when the growth gets stuck in a shape the absorption steps do not
/// cover.
pub(crate) fn grow_by_absorption(d: &DiGraph, mut state: SubPair) -> Result<Option<GoodPair>> {
    let n = d.vertex_count();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    loop {
        let covered = state.mask();
        if covered == all {
            return state.into_pair(d).map(Some);
        }
        let absorbable: Vec<Vertex> = (0..n)
            .filter(|&v| {
                covered >> v & 1 == 0 && d.out_mask(v) & covered != 0 && d.in_mask(v) & covered != 0
            })
            .collect();
        if !absorbable.is_empty() {
            extend_by_buffer_state(d, &absorbable, &mut state)?;
            continue;
        }
        let rest: Vec<Vertex> = (0..n).filter(|&v| covered >> v & 1 == 0).collect();
        if rest.len() == 3 {
            // A shape outside the endgame's reach is a soft failure; the
            // caller falls through to its next strategy.
            return match absorb_three(d, state, &rest) {
                Ok(pair) => Ok(Some(pair)),
                Err(Error::PreconditionViolated(_)) => Ok(None),
                Err(e) => Err(e),
            };
        }
        return Ok(None);
    }
}

/// Endgame for three leftover vertices none of which has neighbours on both
/// sides in the covered set. Under arc-connectivity 2 the arcs between the
/// leftovers are forced far enough to finish both branchings explicitly.
fn absorb_three(d: &DiGraph, mut state: SubPair, rest: &[Vertex]) -> Result<GoodPair> {
    let covered = state.mask();
    let receivers: Vec<Vertex> = rest
        .iter()
        .copied()
        .filter(|&v| d.in_mask(v) & covered != 0)
        .collect();
    let senders: Vec<Vertex> = rest
        .iter()
        .copied()
        .filter(|&v| d.out_mask(v) & covered != 0)
        .collect();
    let stuck = |msg: &str| Err(Error::PreconditionViolated(format!("three-buffer: {msg}")));
    if receivers.iter().any(|v| senders.contains(v)) {
        return Err(Error::Internal(
            "absorbable vertex reached the endgame".into(),
        ));
    }
    match (receivers.len(), senders.len()) {
        (1, 1) | (1, 2) => {
            let a = receivers[0];
            let c = *senders.first().expect("non-empty senders");
            let b = rest
                .iter()
                .copied()
                .find(|&v| v != a && v != c)
                .expect("three leftovers");
            finish_three(d, &mut state, covered, a, b, c)?;
        }
        (2, 1) => {
            let c = senders[0];
            let a = receivers[0];
            let b = receivers[1];
            // Both receivers take an in-arc from the covered set; the rest
            // of the wiring matches the one-receiver shape.
            let x1 = (d.in_mask(a) & covered).trailing_zeros() as usize;
            let xb = (d.in_mask(b) & covered).trailing_zeros() as usize;
            let xp = (d.out_mask(c) & covered).trailing_zeros() as usize;
            for &(u, v) in &[(a, b), (b, c), (a, c)] {
                if !d.has_arc(u, v) {
                    return stuck("missing forced arc among the leftovers");
                }
            }
            state.out_arcs.extend([(x1, a), (xb, b), (a, c)]);
            state.in_arcs.extend([(a, b), (b, c), (c, xp)]);
            state.vertices.extend([a, b, c]);
            state.vertices.sort_unstable();
        }
        _ => return stuck("unexpected receiver/sender split"),
    }
    state.into_pair(d)
}

fn finish_three(
    d: &DiGraph,
    state: &mut SubPair,
    covered: u64,
    a: Vertex,
    b: Vertex,
    c: Vertex,
) -> Result<()> {
    // a is the unique receiver (two in-arcs from the covered set), c sends;
    // degree pressure forces ab, ac, bc, cb among the leftovers.
    for &(u, v) in &[(a, b), (a, c), (b, c), (c, b)] {
        if !d.has_arc(u, v) {
            return Err(Error::PreconditionViolated(
                "three-buffer: missing forced arc among the leftovers".into(),
            ));
        }
    }
    let x1 = (d.in_mask(a) & covered).trailing_zeros() as usize;
    let xp = (d.out_mask(c) & covered).trailing_zeros() as usize;
    state.out_arcs.extend([(x1, a), (a, c), (c, b)]);
    state.in_arcs.extend([(a, b), (b, c), (c, xp)]);
    state.vertices.extend([a, b, c]);
    state.vertices.sort_unstable();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, Family};
    use crate::oracle::{good_pair, Budget};

    #[test]
    fn extend_by_buffer_identity_on_empty_buffer() {
        let f4 = families::generate(&Family::F4).unwrap().digraph;
        let cert = good_pair(&f4, None, None, &Budget::default()).unwrap();
        let pair = cert.pair().unwrap();
        let sub = SubPair::from_pair(pair);
        let back = extend_by_buffer(&f4, &[], &sub).unwrap();
        assert_eq!(&back, pair);
    }

    #[test]
    fn extend_by_buffer_attaches_an_outside_vertex() {
        // F4 plus a fifth vertex with one arc in and one arc out.
        let f4 = families::generate(&Family::F4).unwrap().digraph;
        let mut arcs = f4.arc_pairs();
        arcs.push((0, 4));
        arcs.push((4, 2));
        let d = DiGraph::build(5, &arcs).unwrap();
        let (core, back) = d.induced(&[0, 1, 2, 3]).unwrap();
        let cert = good_pair(&core, None, None, &Budget::default()).unwrap();
        let sub = SubPair::from_local_pair(cert.pair().unwrap(), &back);
        let pair = extend_by_buffer(&d, &[4], &sub).unwrap();
        assert!(validate_good_pair(&d, &pair).is_ok());
    }

    #[test]
    fn three_buffer_endgame_one_receiver_two_senders() {
        // Complete core {0..3}; 4 receives from the core, 5 and 6 send
        // into it; the trio's internal arcs are forced by the degree
        // pressure the endgame relies on.
        let mut arcs = Vec::new();
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    arcs.push((u, v));
                }
            }
        }
        arcs.extend([(0, 4), (1, 4)]);
        arcs.extend([(5, 2), (6, 3)]);
        arcs.extend([(4, 5), (4, 6), (5, 6), (6, 5)]);
        let d = DiGraph::build(7, &arcs).unwrap();
        assert!(crate::analysis::arc_connectivity(&d).unwrap() >= 2);
        let sub = core_pair();
        let pair = grow_by_absorption(&d, sub).unwrap().expect("endgame pair");
        assert!(validate_good_pair(&d, &pair).is_ok());
    }

    #[test]
    fn three_buffer_endgame_two_receivers_one_sender() {
        let mut arcs = Vec::new();
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    arcs.push((u, v));
                }
            }
        }
        arcs.extend([(0, 4), (1, 5)]);
        arcs.extend([(6, 0), (6, 1)]);
        arcs.extend([(4, 5), (4, 6), (5, 4), (5, 6)]);
        let d = DiGraph::build(7, &arcs).unwrap();
        assert!(crate::analysis::arc_connectivity(&d).unwrap() >= 2);
        let sub = core_pair();
        let pair = grow_by_absorption(&d, sub).unwrap().expect("endgame pair");
        assert!(validate_good_pair(&d, &pair).is_ok());
    }

    /// In/out stars of the complete digraph on {0..3}, rooted at 0.
    fn core_pair() -> SubPair {
        SubPair {
            vertices: vec![0, 1, 2, 3],
            in_root: 0,
            out_root: 0,
            in_arcs: vec![(1, 0), (2, 0), (3, 0)],
            out_arcs: vec![(0, 1), (0, 2), (0, 3)],
        }
    }

    #[test]
    fn extend_by_buffer_rejects_missing_side() {
        // Vertex 4 has an out-neighbour but no in-neighbour outside itself.
        let f4 = families::generate(&Family::F4).unwrap().digraph;
        let mut arcs = f4.arc_pairs();
        arcs.push((4, 2));
        let d = DiGraph::build(5, &arcs).unwrap();
        let (core, back) = d.induced(&[0, 1, 2, 3]).unwrap();
        let cert = good_pair(&core, None, None, &Budget::default()).unwrap();
        let sub = SubPair::from_local_pair(cert.pair().unwrap(), &back);
        assert!(matches!(
            extend_by_buffer(&d, &[4], &sub),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
