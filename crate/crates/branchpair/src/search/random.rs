//! Seeded random digraph generation. The generator is a self-contained
//! SplitMix64 so sampled runs reproduce bit-for-bit from (seed, config)
//! across platforms and releases.

use crate::analysis::{arc_connectivity, independence_number};
use crate::digraph::{DiGraph, Vertex};
use crate::error::Result;

/// SplitMix64.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        // Rejection keeps the draw unbiased.
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// True with probability `percent`/100.
    pub fn percent(&mut self, percent: u64) -> bool {
        self.below(100) < percent
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, slice: &mut [T]) {
        for i in (1..slice.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            slice.swap(i, j);
        }
    }
}

/// Each ordered pair carries an arc independently with the given percent
/// probability.
pub fn random_digraph(rng: &mut Rng, n: usize, arc_percent: u64) -> DiGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.percent(arc_percent) {
                arcs.push((u, v));
            }
        }
    }
    DiGraph::build(n, &arcs).expect("loopless by construction")
}

/// Every pair adjacent: one of the three orientation states uniformly.
pub fn random_semicomplete(rng: &mut Rng, n: usize) -> DiGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match rng.below(3) {
                0 => arcs.push((u, v)),
                1 => arcs.push((v, u)),
                _ => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
            }
        }
    }
    DiGraph::build(n, &arcs).expect("loopless by construction")
}

pub fn random_tournament(rng: &mut Rng, n: usize) -> DiGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.percent(50) {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    DiGraph::build(n, &arcs).expect("loopless by construction")
}

/// Random co-bipartite digraph with arc-connectivity at least 2, by
/// rejection: random split, random semicomplete sides, each cross pair in
/// one of the four joint states.
pub fn random_cobipartite_lambda2(rng: &mut Rng, n: usize, tries: u32) -> Result<Option<DiGraph>> {
    for _ in 0..tries {
        let side1 = 1 + rng.below(n as u64 - 1) as usize;
        let mut ids: Vec<Vertex> = (0..n).collect();
        rng.shuffle(&mut ids);
        let mut in_side1 = vec![false; n];
        for &v in &ids[..side1] {
            in_side1[v] = true;
        }
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if in_side1[u] == in_side1[v] {
                    match rng.below(3) {
                        0 => arcs.push((u, v)),
                        1 => arcs.push((v, u)),
                        _ => {
                            arcs.push((u, v));
                            arcs.push((v, u));
                        }
                    }
                } else {
                    match rng.below(4) {
                        0 => {}
                        1 => arcs.push((u, v)),
                        2 => arcs.push((v, u)),
                        _ => {
                            arcs.push((u, v));
                            arcs.push((v, u));
                        }
                    }
                }
            }
        }
        let d = DiGraph::build(n, &arcs).expect("loopless by construction");
        if arc_connectivity(&d)? >= 2 {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Random digraph with independence number at most 2 and arc-connectivity
/// at least 2, by rejection over three shapes: co-bipartite, semicomplete
/// minus a complement matching, and semicomplete minus a complement odd
/// cycle (the last is never co-bipartite, so the harder solver stages get
/// exercised). Both parameters are verified exactly before returning.
pub fn random_alpha2_lambda2(rng: &mut Rng, n: usize, tries: u32) -> Result<Option<DiGraph>> {
    random_alpha2_min_lambda(rng, n, 2, tries)
}

/// Same shapes, arc-connectivity at least 3.
pub fn random_alpha2_lambda3(rng: &mut Rng, n: usize, tries: u32) -> Result<Option<DiGraph>> {
    random_alpha2_min_lambda(rng, n, 3, tries)
}

fn random_alpha2_min_lambda(
    rng: &mut Rng,
    n: usize,
    lambda_min: u32,
    tries: u32,
) -> Result<Option<DiGraph>> {
    for attempt in 0..tries {
        let d = match attempt % 3 {
            0 => match random_cobipartite_lambda2(rng, n, 1)? {
                Some(d) => d,
                None => continue,
            },
            1 => semicomplete_minus_matching(rng, n),
            _ => match semicomplete_minus_odd_cycle(rng, n) {
                Some(d) => d,
                None => continue,
            },
        };
        if arc_connectivity(&d)? < lambda_min {
            continue;
        }
        let (alpha, _) = independence_number(&d)?;
        if alpha <= 2 {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Semicomplete digraph with the adjacencies of a random matching deleted:
/// the complement is a matching, hence triangle-free, so the independence
/// number stays at most 2.
fn semicomplete_minus_matching(rng: &mut Rng, n: usize) -> DiGraph {
    let d = random_semicomplete(rng, n);
    let mut ids: Vec<Vertex> = (0..n).collect();
    rng.shuffle(&mut ids);
    let pairs = rng.below(n as u64 / 2 + 1) as usize;
    let mut doomed = Vec::new();
    for k in 0..pairs {
        let (u, v) = (ids[2 * k], ids[2 * k + 1]);
        for arc in [(u, v), (v, u)] {
            if d.has_arc(arc.0, arc.1) {
                doomed.push(arc);
            }
        }
    }
    d.remove_arcs(&doomed).expect("arcs were present")
}

/// Semicomplete digraph with the adjacencies along a random odd cycle
/// deleted: the complement is an odd cycle, triangle-free but not
/// bipartite, so the result has independence number at most 2 and is not
/// co-bipartite.
fn semicomplete_minus_odd_cycle(rng: &mut Rng, n: usize) -> Option<DiGraph> {
    if n < 5 {
        return None;
    }
    let d = random_semicomplete(rng, n);
    let max_k = if n >= 7 && rng.percent(50) { 7 } else { 5 };
    let k = max_k.min(if n.is_multiple_of(2) { n - 1 } else { n });
    let mut ids: Vec<Vertex> = (0..n).collect();
    rng.shuffle(&mut ids);
    let cycle = &ids[..k];
    let mut doomed = Vec::new();
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        for arc in [(u, v), (v, u)] {
            if d.has_arc(arc.0, arc.1) {
                doomed.push(arc);
            }
        }
    }
    Some(d.remove_arcs(&doomed).expect("arcs were present"))
}
