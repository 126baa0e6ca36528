mod common;

use proptest::prelude::*;
use rgraphs::covers::{
    check_family, fulkerson_cover, Budget, FamilyConstraint, MatchingFamily, Outcome,
};
use rgraphs::format::{parse, parse_edge_list, to_edge_list, to_graph6};
use rgraphs::matching::{
    enumerate_perfect_matchings, enumerate_with_forced, has_perfect_matching, maximum_matching,
    tutte_violator,
};
use rgraphs::multigraph::{boundary, is_bipartite};
use rgraphs::oddcut::{is_brick, is_r_graph, min_odd_cut};
use rgraphs::{Multigraph, VertexSet};

use common::*;

fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (0..=max_n).prop_flat_map(move |n| {
        let pairs = if n < 2 {
            Just(Vec::new()).boxed()
        } else {
            prop::collection::vec((0..n, 0..n - 1), 0..=max_m)
                .prop_map(|v| {
                    v.into_iter()
                        .map(|(u, w)| (u, if w >= u { w + 1 } else { w }))
                        .collect()
                })
                .boxed()
        };
        pairs.prop_map(move |p: Vec<(usize, usize)>| Multigraph::new(n, p).unwrap())
    })
}

fn with_subset(max_n: usize, max_m: usize) -> impl Strategy<Value = (Multigraph, VertexSet)> {
    multigraph(max_n, max_m).prop_flat_map(|g| {
        let n = g.vertex_count();
        prop::collection::vec(any::<bool>(), n).prop_map(move |mask| (g.clone(), VertexSet::from_mask(&mask)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_sum_is_twice_edge_count(g in multigraph(12, 30)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn boundary_is_shared_with_complement((g, x) in with_subset(10, 25)) {
        let a = boundary(&g, &x).unwrap().boundary;
        let b = boundary(&g, &x.complement()).unwrap().boundary;
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.len(), cut_size(&g, &x.to_mask()));
    }

    #[test]
    fn edge_list_round_trip(g in multigraph(12, 30)) {
        let back = parse_edge_list(&to_edge_list(&g)).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn graph6_round_trip_on_simple_graphs(g in multigraph(12, 30)) {
        if g.is_simple() {
            let text = to_graph6(&g).unwrap();
            let back = parse(&text).unwrap();
            prop_assert_eq!(back.vertex_count(), g.vertex_count());
            let mut a: Vec<_> = g.edges().iter().map(|e| e.normalized()).collect();
            let mut b: Vec<_> = back.edges().iter().map(|e| e.normalized()).collect();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        } else {
            prop_assert!(to_graph6(&g).is_err());
        }
    }

    #[test]
    fn perfect_matching_iff_no_tutte_violator(g in multigraph(10, 20)) {
        let has = has_perfect_matching(&g);
        prop_assert_eq!(has, tutte_violator(&g).unwrap().is_none());
        prop_assert_eq!(has, brute_has_pm(&g, &vec![true; g.vertex_count()]));
        prop_assert_eq!(has, 2 * maximum_matching(&g).len() == g.vertex_count());
    }

    #[test]
    fn min_odd_cut_matches_subset_scan(g in multigraph(10, 24)) {
        let n = g.vertex_count();
        prop_assume!(n >= 2 && n % 2 == 0 && g.is_connected());
        let res = min_odd_cut(&g).unwrap();
        prop_assert_eq!(res.size, brute_min_odd_cut(&g));
        prop_assert!(res.side.is_odd());
        prop_assert_eq!(res.size, cut_size(&g, &res.side.to_mask()));
    }

    #[test]
    fn enumeration_is_exact_and_forcing_filters(g in multigraph(8, 14)) {
        let all = enumerate_perfect_matchings(&g, usize::MAX);
        let got: Vec<Vec<usize>> = all.matchings.iter().map(|m| m.edges().to_vec()).collect();
        let mut want = brute_perfect_matchings(&g);
        want.sort();
        let mut sorted = got.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), got.len());
        prop_assert_eq!(sorted, want);
        if let Some(&e) = got.first().and_then(|m| m.first()) {
            let forced = enumerate_with_forced(&g, &[e], usize::MAX);
            prop_assert!(forced.matchings.iter().all(|m| m.contains(e)));
            let expected = got.iter().filter(|m| m.contains(&e)).count();
            prop_assert_eq!(forced.matchings.len(), expected);
        }
    }

    #[test]
    fn bricks_are_never_bipartite(g in multigraph(8, 20)) {
        if is_brick(&g) {
            prop_assert!(is_bipartite(&g).is_none());
            prop_assert!(has_perfect_matching(&g));
        }
    }
}

#[test]
fn fulkerson_covers_are_triple_empty() {
    for (name, g) in cubic_corpus() {
        if !is_r_graph(&g, 3).holds {
            continue;
        }
        let res = fulkerson_cover(&g, 3, &Budget::default()).unwrap();
        let Outcome::Found(cover) = res.outcome else {
            panic!("{name}: no cover");
        };
        // a cover of a cubic graph has every edge in exactly two members
        for e in 0..g.edge_count() {
            let hits = cover.matchings.iter().filter(|m| m.contains(e)).count();
            assert_eq!(hits, 2, "{name}");
        }
        let mut distinct = cover.matchings.clone();
        distinct.sort_by(|a, b| a.edges().cmp(b.edges()));
        distinct.dedup();
        if distinct.len() == cover.matchings.len() {
            let fam = MatchingFamily {
                constraint: FamilyConstraint::AllTriplesEmpty,
                matchings: distinct,
            };
            check_family(&g, &fam).unwrap();
        }
    }
}
