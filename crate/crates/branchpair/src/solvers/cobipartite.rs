//! Good pairs in 2-arc-strong co-bipartite digraphs, by case split on the
//! smaller side's size.

use crate::analysis::{arc_connectivity, co_bipartition, in_generators, is_strong, out_generators};
use crate::branching::{in_branching_via_bfs, GoodPair};
use crate::digraph::{BitIter, DiGraph, Vertex};
use crate::error::{Error, Result};
use crate::oracle::{good_pair as oracle_good_pair, is_exception, Budget};
use crate::solvers::{
    assemble_pair, extend_by_buffer, flip_pair, grow_by_absorption, semicomplete_good_pair,
    semicomplete_good_r_pair, small_good_pair, tables, CoBipCase, Strategy, SubPair,
};

pub fn cobipartite_good_pair(d: &DiGraph) -> Result<GoodPair> {
    cobipartite_with_case(d).map(|(pair, _)| pair)
}

/// Same solver, reporting which case fired.
pub fn cobipartite_good_pair_report(d: &DiGraph) -> Result<crate::solvers::SolveReport> {
    let (pair, strategy) = cobipartite_with_case(d)?;
    Ok(crate::solvers::SolveReport {
        strategy,
        pair,
        validated: true,
    })
}

pub(crate) fn cobipartite_with_case(d: &DiGraph) -> Result<(GoodPair, Strategy)> {
    if arc_connectivity(d)? < 2 {
        return Err(Error::PreconditionViolated(
            "co-bipartite solver needs arc-connectivity at least 2".into(),
        ));
    }
    let cb = co_bipartition(d)
        .ok_or_else(|| Error::PreconditionViolated("digraph is not co-bipartite".into()))?;
    if d.vertex_count() <= 5 {
        let cert = small_good_pair(d)?;
        let pair = cert
            .pair()
            .cloned()
            .ok_or_else(|| Error::Internal("2-arc-strong order <= 5 digraph refused".into()))?;
        return Ok((pair, Strategy::SmallLookup));
    }
    let cb = cb.normalized();
    let (v1, v2) = if cb.v1.len() <= cb.v2.len() {
        (cb.v1, cb.v2)
    } else {
        (cb.v2, cb.v1)
    };
    match v1.len() {
        1 | 2 => {
            let pair = small_side_extend(d, &v1, &v2)?;
            Ok((pair, Strategy::CoBipartite(CoBipCase::SmallSideExtend)))
        }
        3 => three_side(d, &v1, &v2),
        _ => {
            let pair = large_sides(d, &v1, &v2)?;
            Ok((pair, Strategy::CoBipartite(CoBipCase::LargeSides)))
        }
    }
}

/// Small side of one or two vertices: the big side carries a pair; each
/// leftover vertex has a neighbour on both sides in it.
fn small_side_extend(d: &DiGraph, v1: &[Vertex], v2: &[Vertex]) -> Result<GoodPair> {
    let (d2, back2) = d.induced(v2)?;
    let pair2 = semicomplete_good_pair(&d2)?;
    let sub = SubPair::from_local_pair(&pair2, &back2);
    extend_by_buffer(d, v1, &sub)
}

/// Both sides of order at least four: a pair of each side stitched together
/// by one crossing arc in each direction, with exception-aware root choice.
fn large_sides(d: &DiGraph, v1: &[Vertex], v2: &[Vertex]) -> Result<GoodPair> {
    let v2mask: u64 = v2.iter().fold(0, |m, &v| m | 1 << v);
    let (d1, back1) = d.induced(v1)?;

    // Arc a1 a2 from the in-generators of side one across; exists because
    // the digraph is strong and nothing leaves those generators inside
    // their own side.
    let mut in1: Vec<Vertex> = in_generators(&d1).into_iter().map(|v| back1[v]).collect();
    in1.sort_unstable();
    let (a1, a2) = in1
        .iter()
        .find_map(|&a1| {
            let m = d.out_mask(a1) & v2mask;
            (m != 0).then(|| (a1, m.trailing_zeros() as usize))
        })
        .ok_or_else(|| Error::Internal("no arc leaves the side-one in-generators".into()))?;
    let a1_local = back1.iter().position(|&v| v == a1).expect("a1 in side one");

    if is_exception(&d1, a1_local)?.is_some() {
        return stitched_exception(d, v1, v2, a1, a2, &d1, &back1, a1_local);
    }
    let pair1 = semicomplete_good_r_pair(&d1, a1_local)?
        .pair()
        .cloned()
        .ok_or_else(|| Error::Internal("non-exception side refused a rooted pair".into()))?;
    let sub1 = SubPair::from_local_pair(&pair1, &back1);

    // Arc b1 b2 from side one into the out-generators of side two,
    // distinct from a1 a2; exists because the digraph stays strong without
    // a1 a2.
    let (d2, back2) = d.induced(v2)?;
    let out2mask: u64 = out_generators(&d2)
        .into_iter()
        .fold(0, |m, v| m | 1 << back2[v]);
    let (b1, b2) = v1
        .iter()
        .find_map(|&b1| {
            BitIter(d.out_mask(b1) & out2mask)
                .find_map(|b2| ((b1, b2) != (a1, a2)).then_some((b1, b2)))
        })
        .ok_or_else(|| Error::Internal("no second crossing arc into side two".into()))?;
    let b2_local = back2.iter().position(|&v| v == b2).expect("b2 in side two");

    let rev2 = d2.reverse();
    if is_exception(&rev2, b2_local)?.is_some() {
        // Same stitch on the converse digraph, then flip back.
        let rd = d.reverse();
        let (rd2, rback2) = rd.induced(v2)?;
        let b2r = rback2
            .iter()
            .position(|&v| v == b2)
            .expect("b2 in side two");
        let pair = stitched_exception(&rd, v2, v1, b2, b1, &rd2, &rback2, b2r)?;
        let pair = flip_pair(pair);
        return assemble_pair(
            d,
            pair.in_root(),
            pair.out_root(),
            &pair.in_branching.arcs().collect::<Vec<_>>(),
            &pair.out_branching.arcs().collect::<Vec<_>>(),
        );
    }
    let rev_pair2 = semicomplete_good_r_pair(&rev2, b2_local)?
        .pair()
        .cloned()
        .ok_or_else(|| Error::Internal("non-exception converse side refused".into()))?;
    // A good b2-pair of the converse of side two is a pair of side two
    // whose out-branching is rooted at b2.
    let pair2 = flip_pair(rev_pair2);
    debug_assert_eq!(pair2.out_root(), b2_local);
    let sub2 = SubPair::from_local_pair(&pair2, &back2);

    let mut in_arcs = sub2.in_arcs.clone();
    in_arcs.push((a1, a2));
    in_arcs.extend_from_slice(&sub1.in_arcs);
    let mut out_arcs = sub1.out_arcs.clone();
    out_arcs.push((b1, b2));
    out_arcs.extend_from_slice(&sub2.out_arcs);
    assemble_pair(d, sub2.in_root, sub1.out_root, &in_arcs, &out_arcs)
}

/// The stitched pair when side one is an exception at `a1`: side one
/// contributes an in-branching rooted a1 and the star of arcs leaving a1,
/// while y1 and a1 re-enter the out-branching from side two.
#[allow(clippy::too_many_arguments)]
fn stitched_exception(
    d: &DiGraph,
    v1: &[Vertex],
    v2: &[Vertex],
    a1: Vertex,
    a2: Vertex,
    d1: &DiGraph,
    back1: &[Vertex],
    a1_local: Vertex,
) -> Result<GoodPair> {
    let (y1_local, _) = is_exception(d1, a1_local)?
        .ok_or_else(|| Error::Internal("stitched_exception without an exception".into()))?;
    let y1 = back1[y1_local];
    let (d2, back2) = d.induced(v2)?;
    let pair2 = semicomplete_good_pair(&d2)?;
    let sub2 = SubPair::from_local_pair(&pair2, &back2);

    let i1 = in_branching_via_bfs(d1, a1_local)
        .ok_or_else(|| Error::Internal("in-generator lost its branching".into()))?;
    let v2mask: u64 = v2.iter().fold(0, |m, &v| m | 1 << v);
    let a1_feeder = (d.in_mask(a1) & v2mask).trailing_zeros() as usize;
    let y1_feeder = (d.in_mask(y1) & v2mask).trailing_zeros() as usize;
    if a1_feeder >= 64 || y1_feeder >= 64 {
        return Err(Error::Internal(
            "2-arc-strongness must feed a1 and y1 from the far side".into(),
        ));
    }

    let mut in_arcs = sub2.in_arcs.clone();
    in_arcs.push((a1, a2));
    in_arcs.extend(i1.arcs().map(|(u, v)| (back1[u], back1[v])));
    let mut out_arcs = sub2.out_arcs.clone();
    out_arcs.push((a1_feeder, a1));
    out_arcs.push((y1_feeder, y1));
    for &v in v1 {
        if v != a1 && v != y1 {
            out_arcs.push((a1, v));
        }
    }
    assemble_pair(d, sub2.in_root, sub2.out_root, &in_arcs, &out_arcs)
}

/// Small side of exactly three vertices.
fn three_side(d: &DiGraph, v1: &[Vertex], v2: &[Vertex]) -> Result<(GoodPair, Strategy)> {
    let strategy = Strategy::CoBipartite(CoBipCase::ThreeSide);
    if v2.len() >= 4 {
        let (d2, back2) = d.induced(v2)?;
        let pair2 = semicomplete_good_pair(&d2)?;
        let sub = SubPair::from_local_pair(&pair2, &back2);
        if let Some(pair) = grow_by_absorption(d, sub)? {
            return Ok((pair, strategy));
        }
    } else {
        debug_assert_eq!(d.vertex_count(), 6);
        // Either side rich enough to start from.
        for side in [v2, v1] {
            if let Some(pair) = grow_from_triple(d, side)? {
                return Ok((pair, strategy));
            }
        }
        // A semicomplete window of order four plus a two-vertex buffer.
        if let Some(pair) = grow_from_clique4(d)? {
            return Ok((pair, strategy));
        }
        // Any rich triple across the sides.
        let triples: Vec<Vec<Vertex>> = (0..4)
            .flat_map(|i| ((i + 1)..5).flat_map(move |j| ((j + 1)..6).map(move |k| vec![i, j, k])))
            .collect();
        for triple in triples {
            if let Some(pair) = grow_from_triple(d, &triple)? {
                return Ok((pair, strategy));
            }
        }
        if let Some(m) = tables::match_order6(d) {
            let pair = assemble_pair(d, m.in_root, m.out_root, &m.in_arcs, &m.out_arcs)?;
            return Ok((pair, strategy));
        }
        if let Some(pair) = c6_split(d, v1, v2)? {
            return Ok((pair, strategy));
        }
    }
    // Structurally unreachable under the preconditions; the oracle keeps
    // the solver total if a shape slips through.
    let cert = oracle_good_pair(d, None, None, &Budget::default())?;
    let pair = cert
        .pair()
        .cloned()
        .ok_or_else(|| Error::Internal("2-arc-strong co-bipartite digraph refused".into()))?;
    Ok((pair, Strategy::OracleFallback))
}

/// Seeds the growth from a triple spanning at least four arcs.
fn grow_from_triple(d: &DiGraph, triple: &[Vertex]) -> Result<Option<GoodPair>> {
    let (dt, back) = d.induced(triple)?;
    if dt.vertex_count() != 3 || dt.is_multi() || dt.arc_count() < 4 {
        return Ok(None);
    }
    let cert = small_good_pair(&dt)?;
    let Some(pair) = cert.pair() else {
        return Ok(None);
    };
    let sub = SubPair::from_local_pair(pair, &back);
    grow_by_absorption(d, sub)
}

/// Seeds the growth from a semicomplete 4-window, extending over the
/// leftover pair of vertices.
fn grow_from_clique4(d: &DiGraph) -> Result<Option<GoodPair>> {
    let n = d.vertex_count();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for e in c + 1..n {
                    let window = [a, b, c, e];
                    let (dw, back) = d.induced(&window)?;
                    if !crate::analysis::is_semicomplete(&dw) {
                        continue;
                    }
                    let Ok(pair) = semicomplete_good_pair(&dw) else {
                        continue;
                    };
                    let sub = SubPair::from_local_pair(&pair, &back);
                    let buffer: Vec<Vertex> = (0..n).filter(|v| !window.contains(v)).collect();
                    match extend_by_buffer(d, &buffer, &sub) {
                        Ok(pair) => return Ok(Some(pair)),
                        Err(Error::PreconditionViolated(_)) => continue,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Both sides directed 3-cycles whose six crossing arcs form a directed
/// 6-cycle C: C minus one crossing arc is an in-branching, and the two
/// side paths joined by that arc are an out-branching.
fn c6_split(d: &DiGraph, v1: &[Vertex], v2: &[Vertex]) -> Result<Option<GoodPair>> {
    let side1: u64 = v1.iter().fold(0, |m, &v| m | 1 << v);
    let side2: u64 = v2.iter().fold(0, |m, &v| m | 1 << v);
    for side in [v1, v2] {
        let (ds, _) = d.induced(side)?;
        if ds.arc_count() != 3 || !is_strong(&ds) {
            return Ok(None);
        }
    }
    // Each vertex needs exactly one crossing arc out and one in.
    let other = |v: Vertex| if side1 >> v & 1 == 1 { side2 } else { side1 };
    let mut succ = vec![usize::MAX; d.vertex_count()];
    for v in d.vertices() {
        let out = d.out_mask(v) & other(v);
        let inn = d.in_mask(v) & other(v);
        if out.count_ones() != 1 || inn.count_ones() != 1 {
            return Ok(None);
        }
        succ[v] = out.trailing_zeros() as usize;
    }
    let start = v1[0];
    let mut cycle = vec![start];
    let mut cur = succ[start];
    while cur != start {
        if cycle.len() > 6 {
            return Ok(None);
        }
        cycle.push(cur);
        cur = succ[cur];
    }
    if cycle.len() != 6 {
        return Ok(None);
    }
    // The crossing arc kept for the out-branching: first cycle arc, which
    // leaves side one by construction.
    let (a_tail, a_head) = (cycle[0], cycle[1]);
    let in_arcs: Vec<(Vertex, Vertex)> = (1..6).map(|i| (cycle[i], cycle[(i + 1) % 6])).collect();
    let side_path = |side: &[Vertex], endpoint: Vertex, ending: bool| -> Vec<(Vertex, Vertex)> {
        // Hamiltonian path of a directed 3-cycle ending (or starting) at
        // the endpoint.
        let (ds, back) = d.induced(side).expect("side is non-empty");
        let local = back.iter().position(|&v| v == endpoint).expect("endpoint");
        let mut nxt = [0usize; 3];
        for (v, slot) in nxt.iter_mut().enumerate() {
            *slot = ds.out_neighbors(v).next().expect("3-cycle");
        }
        let seq = if ending {
            [nxt[local], nxt[nxt[local]], local]
        } else {
            [local, nxt[local], nxt[nxt[local]]]
        };
        (0..2).map(|i| (back[seq[i]], back[seq[i + 1]])).collect()
    };
    let p1 = side_path(v1, a_tail, true);
    let p2 = side_path(v2, a_head, false);
    let mut out_arcs = p1.clone();
    out_arcs.push((a_tail, a_head));
    out_arcs.extend_from_slice(&p2);
    let out_root = p1[0].0;
    let pair = assemble_pair(d, a_tail, out_root, &in_arcs, &out_arcs)?;
    Ok(Some(pair))
}
