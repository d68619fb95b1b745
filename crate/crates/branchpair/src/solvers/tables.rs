//! Hardcoded labeled pairs for the order-4 and order-6 base cases, matched
//! into concrete digraphs by brute-force embedding over vertex bijections.

use crate::digraph::{DiGraph, Vertex};

/// An order-4 template: a required arc pattern plus a good pair rooted at
/// `in_root`. A match embeds the required arcs as a subset of the target's
/// arcs with the in-root pinned.
pub(crate) struct Order4Table {
    pub required: &'static [(usize, usize)],
    pub in_root: usize,
    pub out_root: usize,
    pub in_arcs: &'static [(usize, usize)],
    pub out_arcs: &'static [(usize, usize)],
}

/// Strong tournament on (a, b, c, d) = (0, 1, 2, 3).
const ST4: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 1)];

/// Non-strong tournaments first, then the strong tournament's three good
/// roots, then the four one-extra-arc repairs for root a.
pub(crate) const ORDER4_TABLES: &[Order4Table] = &[
    // Transitive tournament, rooted at the sink.
    Order4Table {
        required: &[(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)],
        in_root: 3,
        out_root: 0,
        in_arcs: &[(2, 3), (0, 2), (1, 3)],
        out_arcs: &[(0, 1), (1, 2), (0, 3)],
    },
    // 3-cycle dominated by a source, rooted inside the cycle.
    Order4Table {
        required: &[(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)],
        in_root: 2,
        out_root: 3,
        in_arcs: &[(0, 1), (1, 2), (3, 0)],
        out_arcs: &[(2, 0), (3, 1), (3, 2)],
    },
    // 3-cycle dominating a sink, rooted at the sink.
    Order4Table {
        required: &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
        in_root: 3,
        out_root: 2,
        in_arcs: &[(1, 2), (0, 3), (2, 3)],
        out_arcs: &[(0, 1), (2, 0), (1, 3)],
    },
    // Strong tournament rooted at b.
    Order4Table {
        required: &ST4,
        in_root: 1,
        out_root: 3,
        in_arcs: &[(2, 3), (0, 2), (3, 1)],
        out_arcs: &[(0, 1), (1, 2), (3, 0)],
    },
    // Strong tournament rooted at c.
    Order4Table {
        required: &ST4,
        in_root: 2,
        out_root: 2,
        in_arcs: &[(1, 2), (0, 2), (3, 1)],
        out_arcs: &[(0, 1), (2, 3), (3, 0)],
    },
    // Strong tournament rooted at d.
    Order4Table {
        required: &ST4,
        in_root: 3,
        out_root: 3,
        in_arcs: &[(0, 1), (1, 2), (2, 3)],
        out_arcs: &[(3, 0), (0, 2), (3, 1)],
    },
    // Strong tournament plus ba, rooted at a.
    Order4Table {
        required: &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 1), (1, 0)],
        in_root: 0,
        out_root: 3,
        in_arcs: &[(2, 3), (3, 1), (1, 0)],
        out_arcs: &[(0, 1), (1, 2), (3, 0)],
    },
    // Strong tournament plus ad, rooted at a.
    Order4Table {
        required: &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 1), (0, 3)],
        in_root: 0,
        out_root: 0,
        in_arcs: &[(1, 2), (2, 3), (3, 0)],
        out_arcs: &[(0, 1), (0, 2), (0, 3)],
    },
    // Strong tournament plus ca, rooted at a.
    Order4Table {
        required: &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 1), (2, 0)],
        in_root: 0,
        out_root: 0,
        in_arcs: &[(1, 2), (3, 0), (2, 0)],
        out_arcs: &[(2, 3), (0, 2), (3, 1)],
    },
    // Strong tournament plus bd, rooted at a.
    Order4Table {
        required: &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 1), (1, 3)],
        in_root: 0,
        out_root: 0,
        in_arcs: &[(1, 2), (2, 3), (3, 0)],
        out_arcs: &[(0, 1), (0, 2), (1, 3)],
    },
];

/// A matched order-4 pair in target indices.
pub(crate) struct MatchedPair {
    pub in_root: Vertex,
    pub out_root: Vertex,
    pub in_arcs: Vec<(Vertex, Vertex)>,
    pub out_arcs: Vec<(Vertex, Vertex)>,
}

/// Embeds the first matching order-4 template into `d` with the in-root at
/// `r`. Tables in fixed order, bijections in lexicographic order, so the
/// outcome is deterministic.
pub(crate) fn match_order4(d: &DiGraph, r: Vertex) -> Option<MatchedPair> {
    debug_assert_eq!(d.vertex_count(), 4);
    let others: Vec<Vertex> = (0..4).filter(|&v| v != r).collect();
    const ORDERS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for table in ORDER4_TABLES {
        // Slots other than the table's in-root, in increasing label order.
        let slots: Vec<usize> = (0..4).filter(|&v| v != table.in_root).collect();
        for order in ORDERS {
            let mut phi = [usize::MAX; 4];
            phi[table.in_root] = r;
            for (slot, &pick) in slots.iter().zip(order.iter()) {
                phi[*slot] = others[pick];
            }
            if table
                .required
                .iter()
                .all(|&(u, v)| d.has_arc(phi[u], phi[v]))
            {
                let map =
                    |arcs: &[(usize, usize)]| arcs.iter().map(|&(u, v)| (phi[u], phi[v])).collect();
                return Some(MatchedPair {
                    in_root: phi[table.in_root],
                    out_root: phi[table.out_root],
                    in_arcs: map(table.in_arcs),
                    out_arcs: map(table.out_arcs),
                });
            }
        }
    }
    None
}

/// An order-6 template matched by exact arc-set equality.
pub(crate) struct Order6Table {
    pub arcs: &'static [(usize, usize)],
    pub in_root: usize,
    pub out_root: usize,
    pub in_arcs: &'static [(usize, usize)],
    pub out_arcs: &'static [(usize, usize)],
}

/// The five co-bipartite endgame digraphs on (a1, b1, c1, a2, b2, c2) =
/// (0..6): two with three cross 2-cycles, three with a transitive side and
/// no 2-cycles.
pub(crate) const ORDER6_TABLES: &[Order6Table] = &[
    Order6Table {
        arcs: &[
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (3, 0),
            (1, 4),
            (4, 1),
            (2, 5),
            (5, 2),
        ],
        in_root: 5,
        out_root: 0,
        in_arcs: &[(0, 1), (4, 5), (1, 4), (3, 0), (2, 0)],
        out_arcs: &[(3, 4), (1, 2), (0, 3), (2, 5), (4, 1)],
    },
    Order6Table {
        arcs: &[
            (0, 1),
            (1, 2),
            (2, 0),
            (4, 3),
            (5, 4),
            (3, 5),
            (0, 3),
            (3, 0),
            (1, 4),
            (4, 1),
            (2, 5),
            (5, 2),
        ],
        in_root: 5,
        out_root: 0,
        in_arcs: &[(0, 1), (1, 2), (4, 3), (2, 5), (3, 0)],
        out_arcs: &[(5, 4), (3, 5), (0, 3), (4, 1), (5, 2)],
    },
    Order6Table {
        arcs: &[
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (3, 5),
            (2, 3),
            (2, 4),
            (1, 3),
            (5, 0),
            (5, 1),
            (4, 0),
        ],
        in_root: 5,
        out_root: 3,
        in_arcs: &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
        out_arcs: &[(0, 2), (3, 5), (2, 4), (5, 0), (5, 1)],
    },
    Order6Table {
        arcs: &[
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 4),
            (4, 5),
            (5, 3),
            (2, 3),
            (2, 4),
            (3, 1),
            (5, 0),
            (1, 5),
            (4, 0),
        ],
        in_root: 5,
        out_root: 5,
        in_arcs: &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
        out_arcs: &[(0, 2), (5, 3), (2, 4), (3, 1), (5, 0)],
    },
    Order6Table {
        arcs: &[
            (0, 1),
            (1, 2),
            (0, 2),
            (4, 3),
            (5, 4),
            (3, 5),
            (2, 3),
            (2, 4),
            (3, 1),
            (5, 0),
            (1, 5),
            (4, 0),
        ],
        in_root: 3,
        out_root: 3,
        in_arcs: &[(0, 1), (1, 2), (2, 3), (4, 3), (5, 4)],
        out_arcs: &[(0, 2), (3, 5), (2, 4), (3, 1), (5, 0)],
    },
];

/// Finds a bijection identifying `d` with one of the order-6 templates and
/// maps its pair over.
pub(crate) fn match_order6(d: &DiGraph) -> Option<MatchedPair> {
    if d.vertex_count() != 6 || d.is_multi() {
        return None;
    }
    let arc_pairs = d.arc_pairs();
    for table in ORDER6_TABLES {
        if table.arcs.len() != arc_pairs.len() {
            continue;
        }
        let mut phi: Vec<Vertex> = (0..6).collect();
        if embed_exact(d, table.arcs, &mut phi, 0, &mut [false; 6]) {
            let map =
                |arcs: &[(usize, usize)]| arcs.iter().map(|&(u, v)| (phi[u], phi[v])).collect();
            return Some(MatchedPair {
                in_root: phi[table.in_root],
                out_root: phi[table.out_root],
                in_arcs: map(table.in_arcs),
                out_arcs: map(table.out_arcs),
            });
        }
    }
    None
}

fn embed_exact(
    d: &DiGraph,
    template: &[(usize, usize)],
    phi: &mut Vec<Vertex>,
    depth: usize,
    used: &mut [bool; 6],
) -> bool {
    if depth == 6 {
        let mapped: std::collections::BTreeSet<(Vertex, Vertex)> =
            template.iter().map(|&(u, v)| (phi[u], phi[v])).collect();
        let actual: std::collections::BTreeSet<(Vertex, Vertex)> =
            d.arc_pairs().into_iter().collect();
        return mapped == actual;
    }
    for w in 0..6 {
        if used[w] {
            continue;
        }
        // Degree pruning keeps the 720 candidates cheap.
        let tdeg = template.iter().filter(|&&(u, _)| u == depth).count();
        if d.out_mask(w).count_ones() as usize != tdeg {
            continue;
        }
        phi[depth] = w;
        used[w] = true;
        // Arc consistency against already-placed template vertices.
        let consistent = template.iter().all(|&(u, v)| {
            if u < depth && v == depth {
                d.has_arc(phi[u], w)
            } else if v < depth && u == depth {
                d.has_arc(w, phi[v])
            } else {
                true
            }
        });
        if consistent && embed_exact(d, template, phi, depth + 1, used) {
            return true;
        }
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::{validate_good_pair, Branching, GoodPair, Orientation};
    use crate::families::{self, Family};

    fn check_table_pair(d: &DiGraph, m: &MatchedPair) {
        let i = Branching::from_arcs(Orientation::In, m.in_root, 4, &m.in_arcs).unwrap();
        let o = Branching::from_arcs(Orientation::Out, m.out_root, 4, &m.out_arcs).unwrap();
        assert!(validate_good_pair(d, &GoodPair::new(i, o)).is_ok());
    }

    #[test]
    fn st4_tables_give_exact_figure_pairs() {
        let st4 = families::generate(&Family::St4).unwrap().digraph;
        for r in [1, 2, 3] {
            let m = match_order4(&st4, r).unwrap();
            assert_eq!(m.in_root, r);
            check_table_pair(&st4, &m);
        }
        let m = match_order4(&st4, 3).unwrap();
        assert_eq!(m.in_arcs, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(m.out_arcs, vec![(3, 0), (0, 2), (3, 1)]);
    }

    #[test]
    fn st4_rooted_a_has_no_match() {
        let st4 = families::generate(&Family::St4).unwrap().digraph;
        assert!(match_order4(&st4, 0).is_none());
    }

    #[test]
    fn st4_plus_repair_arcs_match_rooted_a() {
        let st4 = families::generate(&Family::St4).unwrap().digraph;
        for extra in [(1, 0), (0, 3), (2, 0), (1, 3)] {
            let d = st4.add_arc(extra.0, extra.1).unwrap();
            let m = match_order4(&d, 0).expect("repair arc admits a pair");
            assert_eq!(m.in_root, 0);
            check_table_pair(&d, &m);
        }
    }

    #[test]
    fn nonstrong_tournaments_match_their_roots() {
        for (family, root) in [
            (Family::Tt4, 3),
            (Family::ThreeCyclePlusSource, 2),
            (Family::ThreeCyclePlusSink, 3),
        ] {
            let d = families::generate(&family).unwrap().digraph;
            let m = match_order4(&d, root).unwrap();
            check_table_pair(&d, &m);
        }
    }

    #[test]
    fn order6_tables_validate_on_their_generators() {
        for family in [
            Family::ThreeTwoCycles { variant: 1 },
            Family::ThreeTwoCycles { variant: 2 },
            Family::CoBipSix { variant: 1 },
            Family::CoBipSix { variant: 2 },
            Family::CoBipSix { variant: 3 },
        ] {
            let d = families::generate(&family).unwrap().digraph;
            let m = match_order6(&d).unwrap_or_else(|| panic!("{family:?} should match"));
            let i = Branching::from_arcs(Orientation::In, m.in_root, 6, &m.in_arcs).unwrap();
            let o = Branching::from_arcs(Orientation::Out, m.out_root, 6, &m.out_arcs).unwrap();
            assert!(
                validate_good_pair(&d, &GoodPair::new(i, o)).is_ok(),
                "{family:?}"
            );
        }
    }

    #[test]
    fn order6_tables_match_relabeled_copies() {
        let d = families::generate(&Family::ThreeTwoCycles { variant: 1 })
            .unwrap()
            .digraph;
        // Relabel by a fixed permutation and expect a match again.
        let perm = [2usize, 0, 4, 1, 5, 3];
        let arcs: Vec<(Vertex, Vertex)> = d
            .arc_pairs()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        let relabeled = DiGraph::build(6, &arcs).unwrap();
        let m = match_order6(&relabeled).unwrap();
        let i = Branching::from_arcs(Orientation::In, m.in_root, 6, &m.in_arcs).unwrap();
        let o = Branching::from_arcs(Orientation::Out, m.out_root, 6, &m.out_arcs).unwrap();
        assert!(validate_good_pair(&relabeled, &GoodPair::new(i, o)).is_ok());
    }
}
