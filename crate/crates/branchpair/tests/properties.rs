//! Standalone property suites: branching validity, oracle duality under
//! reversal, enumeration uniqueness, Hamiltonian guarantees on qualifying
//! instances, generator-set strongness, and serialization round trips.

use std::collections::HashSet;

use proptest::prelude::*;

use branchpair::analysis::{
    arc_connectivity, co_bipartition, hamiltonian_cycle_through, hamiltonian_path, in_generators,
    independence_number, is_semicomplete, is_strong, min_semidegree, out_generators,
    strong_components,
};
use branchpair::branching::{validate_branching, Branching, Orientation};
use branchpair::digraph::DiGraph;
use branchpair::families::{self, Family};
use branchpair::io::{emit_text, parse_text};
use branchpair::oracle::{enumerate_out_branchings, good_pair, Budget};
use branchpair::search::{random_semicomplete, Rng};

/// Random simple digraph on 2..=6 vertices from an arc-mask seed.
fn small_digraph() -> impl Strategy<Value = DiGraph> {
    (2usize..=6, any::<u64>()).prop_map(|(n, mask)| {
        let bits = n * (n - 1);
        DiGraph::from_arc_mask(n, mask & ((1u64 << bits) - 1))
    })
}

fn semicomplete_digraph(max_n: usize) -> impl Strategy<Value = DiGraph> {
    (2usize..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = Rng::new(seed);
        random_semicomplete(&mut rng, n)
    })
}

proptest! {
    #[test]
    fn degree_sums_equal_arc_count(d in small_digraph()) {
        let out: u64 = d.vertices().map(|v| d.out_degree(v) as u64).sum();
        let inn: u64 = d.vertices().map(|v| d.in_degree(v) as u64).sum();
        prop_assert_eq!(out, d.arc_count());
        prop_assert_eq!(inn, d.arc_count());
    }

    #[test]
    fn induced_counts_inner_arcs(d in small_digraph(), subset_bits in any::<u64>()) {
        let n = d.vertex_count();
        let mask = subset_bits & ((1u64 << n) - 1);
        prop_assume!(mask != 0);
        let (sub, back) = d.induced_mask(mask).unwrap();
        let expected = d
            .arcs()
            .filter(|a| mask >> a.tail & 1 == 1 && mask >> a.head & 1 == 1)
            .count();
        prop_assert_eq!(sub.distinct_arc_count(), expected);
        prop_assert_eq!(back.len(), mask.count_ones() as usize);
    }

    #[test]
    fn reverse_involutes_and_swaps_degrees(d in small_digraph()) {
        let rev = d.reverse();
        prop_assert_eq!(rev.reverse(), d.clone());
        for v in d.vertices() {
            prop_assert_eq!(rev.out_degree(v), d.in_degree(v));
        }
    }

    #[test]
    fn text_round_trip(d in small_digraph()) {
        let parsed = parse_text(&emit_text(&d)).unwrap();
        prop_assert_eq!(parsed, d);
    }

    #[test]
    fn lambda_at_most_min_semidegree(d in small_digraph()) {
        let lambda = arc_connectivity(&d).unwrap();
        prop_assert!(lambda <= min_semidegree(&d));
        prop_assert_eq!(lambda >= 1, strong_components(&d).count() == 1);
    }

    #[test]
    fn generator_sets_flip_under_reversal(d in small_digraph()) {
        prop_assert_eq!(out_generators(&d), in_generators(&d.reverse()));
    }

    #[test]
    fn cobipartition_sides_are_semicomplete(d in small_digraph()) {
        if let Some(cb) = co_bipartition(&d) {
            for side in [&cb.v1, &cb.v2] {
                if !side.is_empty() {
                    let (sub, _) = d.induced(side).unwrap();
                    prop_assert!(is_semicomplete(&sub));
                }
            }
        }
    }

    /// Every enumerated out-branching validates, none repeats, and the
    /// count matches an independent brute force over arc subsets.
    #[test]
    fn enumeration_is_sound_unique_and_complete(d in small_digraph(), root in 0usize..6) {
        let n = d.vertex_count();
        prop_assume!(root < n);
        let arcs = d.arc_pairs();
        prop_assume!(arcs.len() <= 18);
        let mut brute = 0u64;
        for mask in 0u64..(1 << arcs.len()) {
            if mask.count_ones() as usize != n - 1 {
                continue;
            }
            let subset: Vec<_> = arcs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a)
                .collect();
            if let Ok(b) = Branching::from_arcs(Orientation::Out, root, n, &subset) {
                if validate_branching(&d, &b).is_ok() {
                    brute += 1;
                }
            }
        }
        match enumerate_out_branchings(&d, root) {
            Ok(iter) => {
                let mut seen = HashSet::new();
                let mut count = 0u64;
                for b in iter {
                    prop_assert!(validate_branching(&d, &b).is_ok());
                    prop_assert!(seen.insert(b.sorted_arcs()));
                    count += 1;
                }
                prop_assert_eq!(count, brute);
            }
            Err(_) => prop_assert_eq!(brute, 0),
        }
    }

    /// The oracle answers identically on the converse digraph with the
    /// root constraints swapped.
    #[test]
    fn oracle_duality_under_reversal(d in small_digraph(), r in 0usize..6, q in 0usize..6) {
        let n = d.vertex_count();
        prop_assume!(r < n && q < n);
        let budget = Budget::default();
        let direct = good_pair(&d, Some(r), Some(q), &budget).unwrap();
        let dual = good_pair(&d.reverse(), Some(q), Some(r), &budget).unwrap();
        prop_assert_eq!(direct.found(), dual.found());
    }

    /// For a fixed out-branching, a completing in-branching rooted at r
    /// exists exactly when every vertex reaches r in the residual.
    #[test]
    fn residual_test_characterizes_completions(d in small_digraph(), root in 0usize..6, r in 0usize..6) {
        let n = d.vertex_count();
        prop_assume!(root < n && r < n);
        let Ok(iter) = enumerate_out_branchings(&d, root) else {
            return Ok(());
        };
        for (i, o) in iter.enumerate() {
            if i >= 5 {
                break;
            }
            let residual = d.remove_arcs(&o.arcs().collect::<Vec<_>>()).unwrap();
            let reach_all = branchpair::analysis::reaching(&residual, r).count_ones() as usize == n;
            // Brute force: some arc subset of the residual forms an
            // in-branching rooted r.
            let arcs = residual.arc_pairs();
            let mut exists = false;
            if arcs.len() <= 18 {
                for mask in 0u64..(1 << arcs.len()) {
                    if mask.count_ones() as usize != n - 1 {
                        continue;
                    }
                    let subset: Vec<_> = arcs
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| mask >> j & 1 == 1)
                        .map(|(_, &a)| a)
                        .collect();
                    if let Ok(b) = Branching::from_arcs(Orientation::In, r, n, &subset) {
                        if validate_branching(&residual, &b).is_ok() {
                            exists = true;
                            break;
                        }
                    }
                }
                prop_assert_eq!(exists, reach_all);
            }
        }
    }

    /// Strong semicomplete digraphs carry cycles of every length through
    /// every vertex.
    #[test]
    fn moon_cycles_exist(d in semicomplete_digraph(7)) {
        prop_assume!(is_strong(&d) && d.vertex_count() >= 3);
        for v in d.vertices() {
            for len in 3..=d.vertex_count() {
                let cycle = hamiltonian_cycle_through(&d, v, Some(len)).unwrap();
                prop_assert_eq!(cycle.len(), len);
                prop_assert_eq!(cycle[0], v);
                for w in cycle.windows(2) {
                    prop_assert!(d.has_arc(w[0], w[1]));
                }
                prop_assert!(d.has_arc(cycle[len - 1], cycle[0]));
            }
        }
    }

    /// Strong digraphs with independence number at most two always have a
    /// Hamiltonian path.
    #[test]
    fn chen_manalastras_path_exists(d in small_digraph()) {
        prop_assume!(is_strong(&d));
        let (alpha, _) = independence_number(&d).unwrap();
        prop_assume!(alpha <= 2);
        let path = hamiltonian_path(&d, None, None).unwrap();
        prop_assert!(path.is_some());
        let path = path.unwrap();
        prop_assert_eq!(path.len(), d.vertex_count());
        for w in path.windows(2) {
            prop_assert!(d.has_arc(w[0], w[1]));
        }
    }

    /// Generator sets of semicomplete digraphs induce strong subdigraphs.
    #[test]
    fn generator_sets_induce_strong_subdigraphs(d in semicomplete_digraph(8)) {
        for gens in [in_generators(&d), out_generators(&d)] {
            prop_assert!(!gens.is_empty());
            let (sub, _) = d.induced(&gens).unwrap();
            prop_assert!(is_strong(&sub));
        }
    }

    /// Every good pair the oracle returns survives full validation, and
    /// root constraints are honoured.
    #[test]
    fn oracle_pairs_validate_with_roots(d in small_digraph(), r in 0usize..6) {
        let n = d.vertex_count();
        prop_assume!(r < n);
        let cert = good_pair(&d, Some(r), None, &Budget::default()).unwrap();
        if let Some(pair) = cert.pair() {
            prop_assert_eq!(pair.in_root(), r);
            prop_assert!(branchpair::branching::validate_good_pair(&d, pair).is_ok());
        }
    }
}

proptest! {
    /// On semicomplete digraphs of order at least 4 a rooted pair exists
    /// exactly when the root is not an exception.
    #[test]
    fn rooted_pairs_exist_iff_not_exception(d in semicomplete_digraph(7)) {
        prop_assume!(d.vertex_count() >= 4);
        let budget = Budget::default();
        for r in in_generators(&d) {
            let exception = branchpair::oracle::is_exception(&d, r).unwrap().is_some();
            let found = good_pair(&d, Some(r), None, &budget).unwrap().found();
            prop_assert_eq!(found, !exception);
        }
    }
}

#[test]
fn ramsey_witness_on_the_one_core_triple_w() {
    // 25 vertices with independence number 7: an independent triple must
    // be found.
    let d = families::generate(&Family::TripleW { satellite: 1 })
        .unwrap()
        .digraph;
    match branchpair::analysis::ramsey_witness(&d).unwrap() {
        branchpair::analysis::RamseyWitness::IndependentTriple(t) => {
            for i in 0..3 {
                for j in i + 1..3 {
                    assert!(!d.adjacent(t[i], t[j]));
                }
            }
        }
        other => panic!("expected an independent triple, got {other:?}"),
    }
}

#[test]
fn family_serialization_round_trips() {
    let specs = [
        Family::St4,
        Family::FourException {
            dc: true,
            cb: false,
        },
        Family::Tt4,
        Family::ThreeCyclePlusSource,
        Family::ThreeCyclePlusSink,
        Family::E4,
        Family::F4,
        Family::W,
        Family::H4,
        Family::WPrime { n: 11 },
        Family::TripleW { satellite: 2 },
        Family::HighSemidegree { k: 1 },
        Family::GluedTriple { r: 2 },
        Family::BadMulti,
        Family::ThreeTwoCycles { variant: 1 },
        Family::CoBipSix { variant: 2 },
    ];
    for spec in specs {
        let generated = families::generate(&spec).unwrap();
        let parsed = parse_text(&emit_text(&generated.digraph)).unwrap();
        assert_eq!(parsed, generated.digraph, "{spec:?}");
    }
}
