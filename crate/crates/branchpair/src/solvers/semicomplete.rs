//! Constructive good-pair algorithms for semicomplete digraphs.

use crate::analysis::{
    hamiltonian_cycle_through, in_generators, is_semicomplete, is_strong, out_generators,
};
use crate::branching::{in_branching_via_bfs, GoodPair};
use crate::digraph::{BitIter, DiGraph, Vertex};
use crate::error::{Error, Result};
use crate::oracle::{is_4_exception, is_exception, Certificate, SearchStats, Side};
use crate::solvers::{assemble_pair, flip_pair, tables, SubPair};

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(msg.into()))
    }
}

/// Good (r, q)-pair in a non-strong semicomplete digraph of order at least
/// four, for any in-generator `r` and out-generator `q`.
///
/// With at least two out-generators, their strong semicomplete subdigraph
/// carries a Hamiltonian cycle through `q`: the cycle minus its closing arc
/// becomes the out-branching's spine while the closing arc and the direct
/// arcs into `r` feed the in-branching. With singleton generator sets on
/// both ends the pair is written down directly around one inner arc; the
/// remaining case is handled on the converse digraph.
pub fn semicomplete_nonstrong_pair(d: &DiGraph, r: Vertex, q: Vertex) -> Result<GoodPair> {
    let n = d.vertex_count();
    require(n >= 4, "need at least 4 vertices")?;
    require(is_semicomplete(d), "digraph must be semicomplete")?;
    require(!is_strong(d), "digraph must be non-strong")?;
    let outs = out_generators(d);
    let ins = in_generators(d);
    require(ins.contains(&r), "r must be an in-generator")?;
    require(outs.contains(&q), "q must be an out-generator")?;

    if outs.len() >= 2 {
        return nonstrong_with_source_cycle(d, r, q, &outs);
    }
    if ins.len() >= 2 {
        // Mirror case: run the source-cycle construction on the converse.
        let rev = d.reverse();
        let pair = nonstrong_with_source_cycle(&rev, q, r, &ins)?;
        let pair = flip_pair(pair);
        return assemble_pair(
            d,
            pair.in_root(),
            pair.out_root(),
            &pair.in_branching.arcs().collect::<Vec<_>>(),
            &pair.out_branching.arcs().collect::<Vec<_>>(),
        );
    }

    // Out(d) = {q} and In(d) = {r}: both branchings around one arc uv of
    // d - {q, r}. The source q dominates everything and the sink r is
    // dominated by everything, so all the arcs below exist.
    let (u, v) = d
        .arcs()
        .map(|a| (a.tail, a.head))
        .find(|&(u, v)| u != q && u != r && v != q && v != r)
        .ok_or_else(|| Error::PreconditionViolated("no arc inside d - {q, r}".into()))?;
    let mut in_arcs = vec![(q, v), (v, r), (u, r)];
    let mut out_arcs = vec![(q, u), (u, v), (q, r)];
    for z in d.vertices() {
        if z != q && z != r && z != u && z != v {
            in_arcs.push((z, r));
            out_arcs.push((q, z));
        }
    }
    assemble_pair(d, r, q, &in_arcs, &out_arcs)
}

fn nonstrong_with_source_cycle(
    d: &DiGraph,
    r: Vertex,
    q: Vertex,
    outs: &[Vertex],
) -> Result<GoodPair> {
    let (w1, back1) = d.induced(outs)?;
    let q_local = back1.iter().position(|&v| v == q).expect("q generates");
    let cycle_local = hamiltonian_cycle_through(&w1, q_local, None)?;
    let cycle: Vec<Vertex> = cycle_local.into_iter().map(|v| back1[v]).collect();
    let a = cycle.len();
    debug_assert_eq!(cycle[0], q);

    let rest: Vec<Vertex> = d.vertices().filter(|v| !outs.contains(v)).collect();
    let (drest, back_rest) = d.induced(&rest)?;
    let r_local = back_rest.iter().position(|&v| v == r).expect("r in rest");
    let iprime = in_branching_via_bfs(&drest, r_local).ok_or_else(|| {
        Error::Internal("in-generator unreachable inside the non-source part".into())
    })?;
    let mut in_arcs: Vec<(Vertex, Vertex)> = iprime
        .arcs()
        .map(|(u, v)| (back_rest[u], back_rest[v]))
        .collect();
    in_arcs.push((cycle[a - 1], cycle[0]));
    for &u in &cycle[..a - 1] {
        in_arcs.push((u, r));
    }
    let mut out_arcs: Vec<(Vertex, Vertex)> = cycle.windows(2).map(|w| (w[0], w[1])).collect();
    for &z in &rest {
        out_arcs.push((cycle[a - 1], z));
    }
    assemble_pair(d, r, q, &in_arcs, &out_arcs)
}

/// Absorbs outside vertices into a good r-pair of an induced subdigraph one
/// at a time until it spans the whole semicomplete digraph.
///
/// A vertex dominating the entire current subdigraph becomes the new
/// out-root (its arc to the old out-root extends the out-branching); any
/// other absorbed vertex hangs off one arc in each direction.
pub fn semicomplete_util_extend(d: &DiGraph, r: Vertex, sub: &SubPair) -> Result<GoodPair> {
    require(is_semicomplete(d), "digraph must be semicomplete")?;
    require(in_generators(d).contains(&r), "r must be an in-generator")?;
    require(sub.in_root == r, "sub-pair must be rooted at r")?;
    require(
        sub.vertices.len() >= 2,
        "sub-pair needs at least 2 vertices",
    )?;

    let n = d.vertex_count();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut state = sub.clone();
    let mut covered = state.mask();
    while covered != all {
        let y = (0..n)
            .find(|&y| covered >> y & 1 == 0 && d.out_mask(y) & covered != 0)
            .ok_or_else(|| {
                Error::Internal("no outside vertex dominates into the subdigraph".into())
            })?;
        if d.out_mask(y) & covered == covered {
            // y -> everything covered: y becomes the new out-root.
            let v = BitIter(covered)
                .find(|&v| v != state.out_root)
                .expect("sub-pair has two vertices");
            state.in_arcs.push((y, v));
            state.out_arcs.push((y, state.out_root));
            state.out_root = y;
        } else {
            let z1 = (d.out_mask(y) & covered).trailing_zeros() as usize;
            let z2 = (d.in_mask(y) & covered).trailing_zeros() as usize;
            debug_assert!(z2 < 64, "semicompleteness provides an in-arc");
            state.in_arcs.push((y, z1));
            state.out_arcs.push((z2, y));
        }
        covered |= 1 << y;
        state.vertices.push(y);
    }
    state.vertices.sort_unstable();
    state.into_pair(d)
}

/// Good r-pair in a semicomplete digraph of order at least 4, or the
/// exception certificate — the two outcomes are mutually exhaustive.
pub fn semicomplete_good_r_pair(d: &DiGraph, r: Vertex) -> Result<Certificate> {
    let n = d.vertex_count();
    require(n >= 4, "need at least 4 vertices")?;
    require(is_semicomplete(d), "digraph must be semicomplete")?;
    require(in_generators(d).contains(&r), "r must be an in-generator")?;

    if let Some((y, z)) = is_exception(d, r)? {
        return Ok(Certificate::Exception { r, y, z });
    }
    if !is_strong(d) {
        let q = out_generators(d)
            .first()
            .copied()
            .ok_or_else(|| Error::Internal("non-strong digraph with no out-generator".into()))?;
        let pair = semicomplete_nonstrong_pair(d, r, q)?;
        return Ok(pair_found(pair, "non-strong"));
    }

    // r lies on a directed 3-cycle (z, y, r, z).
    let cycle = hamiltonian_cycle_through(d, r, Some(3))?;
    let (z, y) = (cycle[1], cycle[2]);
    for t in d.vertices() {
        if t == z || t == y || t == r {
            continue;
        }
        let (d4, back) = d.induced(&[z, y, r, t])?;
        let r_local = back.iter().position(|&v| v == r).expect("r in subset");
        if !in_generators(&d4).contains(&r_local) || is_4_exception(&d4, r_local) {
            continue;
        }
        let matched = tables::match_order4(&d4, r_local)
            .ok_or_else(|| Error::Internal("order-4 subdigraph admits no table pair".into()))?;
        let lift = |arcs: &[(Vertex, Vertex)]| -> Vec<(Vertex, Vertex)> {
            arcs.iter().map(|&(u, v)| (back[u], back[v])).collect()
        };
        let sub = SubPair {
            vertices: back.clone(),
            in_root: back[matched.in_root],
            out_root: back[matched.out_root],
            in_arcs: lift(&matched.in_arcs),
            out_arcs: lift(&matched.out_arcs),
        };
        let pair = semicomplete_util_extend(d, r, &sub)?;
        return Ok(pair_found(pair, "util-extension"));
    }
    // Every candidate 4-set failed, which forces r => t and y => t for all
    // other t. If r -> y, deleting yr isolates r as the only in-generator
    // of a non-strong semicomplete digraph.
    if d.has_arc(r, y) {
        let dprime = d.remove_arc(y, r)?;
        let q = out_generators(&dprime)
            .first()
            .copied()
            .ok_or_else(|| Error::Internal("endgame digraph has no out-generator".into()))?;
        let pair = semicomplete_nonstrong_pair(&dprime, r, q)?;
        // The pair uses only arcs of d - yr, so it is a pair of d as well.
        let pair = assemble_pair(
            d,
            pair.in_root(),
            pair.out_root(),
            &pair.in_branching.arcs().collect::<Vec<_>>(),
            &pair.out_branching.arcs().collect::<Vec<_>>(),
        )?;
        return Ok(pair_found(pair, "endgame"));
    }
    Err(Error::Internal(
        "non-exception input exhausted every constructive branch".into(),
    ))
}

fn pair_found(pair: GoodPair, route: &str) -> Certificate {
    Certificate::PairFound {
        pair,
        stats: SearchStats {
            branchings: 0,
            roots_tried: 0,
            side: Side::Out,
            route: format!("semicomplete-{route}"),
        },
    }
}

/// Good pair in any semicomplete digraph of order at least 4: rooted at a
/// vertex of in-degree at least two, which can never be an exception.
pub fn semicomplete_good_pair(d: &DiGraph) -> Result<GoodPair> {
    let n = d.vertex_count();
    require(n >= 4, "need at least 4 vertices")?;
    require(is_semicomplete(d), "digraph must be semicomplete")?;
    if !is_strong(d) {
        let r = in_generators(d)[0];
        let q = out_generators(d)[0];
        return semicomplete_nonstrong_pair(d, r, q);
    }
    let r = d
        .vertices()
        .find(|&v| d.in_mask(v).count_ones() >= 2)
        .ok_or_else(|| Error::Internal("order >= 4 forces an in-degree >= 2 vertex".into()))?;
    match semicomplete_good_r_pair(d, r)? {
        Certificate::PairFound { pair, .. } => Ok(pair),
        other => Err(Error::Internal(format!(
            "vertex of in-degree >= 2 cannot be an exception, got {other}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::validate_good_pair;
    use crate::families::{self, Family};
    use crate::oracle::{good_pair, Budget};

    #[test]
    fn tt4_pair_matches_the_drawn_one() {
        let d = families::generate(&Family::Tt4).unwrap().digraph;
        let pair = semicomplete_nonstrong_pair(&d, 3, 0).unwrap();
        assert_eq!(pair.in_root(), 3);
        assert_eq!(pair.out_root(), 0);
        assert_eq!(
            pair.in_branching.sorted_arcs(),
            vec![(0, 2), (1, 3), (2, 3)]
        );
        assert_eq!(
            pair.out_branching.sorted_arcs(),
            vec![(0, 1), (0, 3), (1, 2)]
        );
    }

    #[test]
    fn source_cycle_case_fires_when_two_out_generators() {
        // Two strong halves: a 3-cycle dominating a single sink would have
        // one generator on each side; use a 2-cycle source component.
        let d = DiGraph::build(
            4,
            &[
                (0, 1),
                (1, 0),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 2),
            ],
        )
        .unwrap();
        for r in [2, 3] {
            for q in [0, 1] {
                let pair = semicomplete_nonstrong_pair(&d, r, q).unwrap();
                assert_eq!(pair.in_root(), r);
                assert_eq!(pair.out_root(), q);
            }
        }
    }

    #[test]
    fn mirror_case_two_in_generators() {
        let d =
            DiGraph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 2)]).unwrap();
        // Out = {0}, In = {2, 3}.
        let pair = semicomplete_nonstrong_pair(&d, 2, 0).unwrap();
        assert_eq!(pair.in_root(), 2);
        assert_eq!(pair.out_root(), 0);
    }

    #[test]
    fn five_vertex_singleton_generators_pair() {
        // Out = {0} and In = {4}: the explicit wiring around one inner
        // arc uv.
        let arcs = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 3),
            (2, 3),
            (1, 4),
            (2, 4),
            (3, 4),
        ];
        let d = DiGraph::build(5, &arcs).unwrap();
        assert_eq!(out_generators(&d), vec![0]);
        assert_eq!(in_generators(&d), vec![4]);
        let pair = semicomplete_nonstrong_pair(&d, 4, 0).unwrap();
        assert_eq!(pair.in_root(), 4);
        assert_eq!(pair.out_root(), 0);
        // uv = (1, 2), the lowest inner arc.
        assert_eq!(
            pair.in_branching.sorted_arcs(),
            vec![(0, 2), (1, 4), (2, 4), (3, 4)]
        );
        assert_eq!(
            pair.out_branching.sorted_arcs(),
            vec![(0, 1), (0, 3), (0, 4), (1, 2)]
        );
    }

    #[test]
    fn nonstrong_rejects_strong_input() {
        let st4 = families::generate(&Family::St4).unwrap().digraph;
        assert!(matches!(
            semicomplete_nonstrong_pair(&st4, 0, 0),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn st4_rooted_a_is_an_exception() {
        let st4 = families::generate(&Family::St4).unwrap().digraph;
        match semicomplete_good_r_pair(&st4, 0).unwrap() {
            Certificate::Exception { r, y, z } => {
                assert_eq!((r, y, z), (0, 3, 2));
            }
            other => panic!("expected exception, got {other}"),
        }
    }

    #[test]
    fn st4_rooted_d_reproduces_the_figure_pair() {
        let st4 = families::generate(&Family::St4).unwrap().digraph;
        let cert = semicomplete_good_r_pair(&st4, 3).unwrap();
        let pair = cert.pair().expect("pair exists");
        assert_eq!(pair.in_root(), 3);
        assert_eq!(
            pair.in_branching.sorted_arcs(),
            vec![(0, 1), (1, 2), (2, 3)]
        );
        assert_eq!(
            pair.out_branching.sorted_arcs(),
            vec![(0, 2), (3, 0), (3, 1)]
        );
    }

    #[test]
    fn st4_plus_ba_rooted_a_has_a_pair() {
        let st4 = families::generate(&Family::St4).unwrap().digraph;
        let d = st4.add_arc(1, 0).unwrap();
        let cert = semicomplete_good_r_pair(&d, 0).unwrap();
        let pair = cert.pair().expect("repair arc admits a pair");
        assert_eq!(pair.in_root(), 0);
        assert!(validate_good_pair(&d, pair).is_ok());
    }

    #[test]
    fn util_extend_absorbs_a_dominating_vertex() {
        // ST4 plus a 5th vertex dominating everything: absorbing it makes
        // it the new out-root while the in-root stays at b.
        let st4 = families::generate(&Family::St4).unwrap().digraph;
        let mut arcs = st4.arc_pairs();
        for v in 0..4 {
            arcs.push((4, v));
        }
        let d = DiGraph::build(5, &arcs).unwrap();
        let sub = SubPair {
            vertices: vec![0, 1, 2, 3],
            in_root: 1,
            out_root: 3,
            in_arcs: vec![(2, 3), (0, 2), (3, 1)],
            out_arcs: vec![(0, 1), (1, 2), (3, 0)],
        };
        let pair = semicomplete_util_extend(&d, 1, &sub).unwrap();
        assert_eq!(pair.in_root(), 1);
        assert_eq!(pair.out_root(), 4);
        assert!(validate_good_pair(&d, &pair).is_ok());
    }

    #[test]
    fn util_extend_absorbs_a_mixed_vertex() {
        // The 5th vertex has arcs in both directions, so it hangs off one
        // arc on each side instead of taking over a root.
        let st4 = families::generate(&Family::St4).unwrap().digraph;
        let arcs: Vec<_> = st4
            .arc_pairs()
            .into_iter()
            .chain([(4, 0), (1, 4), (4, 2), (3, 4)])
            .collect();
        let d = DiGraph::build(5, &arcs).unwrap();
        let sub = SubPair {
            vertices: vec![0, 1, 2, 3],
            in_root: 1,
            out_root: 3,
            in_arcs: vec![(2, 3), (0, 2), (3, 1)],
            out_arcs: vec![(0, 1), (1, 2), (3, 0)],
        };
        let pair = semicomplete_util_extend(&d, 1, &sub).unwrap();
        assert_eq!(pair.in_root(), 1);
        assert_eq!(pair.out_root(), 3);
        assert!(validate_good_pair(&d, &pair).is_ok());
    }

    #[test]
    fn util_extend_from_a_complete_triple() {
        // A complete digraph on {0, 1, 2} carries a pair; three more
        // vertices get absorbed one by one.
        let mut arcs = vec![(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)];
        for v in 3..6 {
            for u in 0..v {
                arcs.push((u, v));
                if u != 0 {
                    arcs.push((v, u));
                }
            }
        }
        let d = DiGraph::build(6, &arcs).unwrap();
        assert!(is_semicomplete(&d));
        let sub = SubPair {
            vertices: vec![0, 1, 2],
            in_root: 0,
            out_root: 0,
            in_arcs: vec![(1, 0), (2, 0)],
            out_arcs: vec![(0, 1), (0, 2)],
        };
        let pair = semicomplete_util_extend(&d, 0, &sub).unwrap();
        assert_eq!(pair.in_root(), 0);
        assert!(validate_good_pair(&d, &pair).is_ok());
    }

    #[test]
    fn unrooted_pair_on_order4_inputs() {
        let st4 = families::generate(&Family::St4).unwrap().digraph;
        let pair = semicomplete_good_pair(&st4).unwrap();
        assert!(validate_good_pair(&st4, &pair).is_ok());
        let complete4 = DiGraph::build(
            4,
            &[
                (0, 1),
                (1, 0),
                (0, 2),
                (2, 0),
                (0, 3),
                (3, 0),
                (1, 2),
                (2, 1),
                (1, 3),
                (3, 1),
                (2, 3),
                (3, 2),
            ],
        )
        .unwrap();
        let pair = semicomplete_good_pair(&complete4).unwrap();
        assert!(validate_good_pair(&complete4, &pair).is_ok());
    }

    #[test]
    fn exception_verdict_agrees_with_oracle_on_all_order4_semicomplete() {
        // Every semicomplete digraph on 4 vertices: each vertex pair is one
        // of three states.
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let budget = Budget::default();
        let mut checked = 0u32;
        for code in 0..3u32.pow(6) {
            let mut arcs = Vec::new();
            let mut c = code;
            for &(u, v) in &pairs {
                match c % 3 {
                    0 => arcs.push((u, v)),
                    1 => arcs.push((v, u)),
                    _ => {
                        arcs.push((u, v));
                        arcs.push((v, u));
                    }
                }
                c /= 3;
            }
            let d = DiGraph::build(4, &arcs).unwrap();
            for r in in_generators(&d) {
                let constructive = semicomplete_good_r_pair(&d, r).unwrap();
                let oracle = good_pair(&d, Some(r), None, &budget).unwrap();
                assert_eq!(
                    constructive.found(),
                    oracle.found(),
                    "disagreement at code {code} root {r}"
                );
                if let Some(pair) = constructive.pair() {
                    assert_eq!(pair.in_root(), r);
                    assert!(validate_good_pair(&d, pair).is_ok());
                }
                checked += 1;
            }
        }
        assert!(checked > 2000, "swept {checked} rooted instances");
    }
}
