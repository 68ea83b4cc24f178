mod common;

use std::collections::BTreeSet;

use confluent::enumeration::list_max_bicliques;
use confluent::graph::{complement, subdivide};
use confluent::planarity::{embed, is_planar};
use confluent::reduction::{expand, reduce, Status};
use confluent::track::from_reduction;
use confluent::Graph;
use proptest::prelude::*;

use common::{brute_bicliques, brute_planar};

fn graph(max_n: usize, directed: bool) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| if directed { u != v } else { u < v }).map(move |v| (u, v)))
            .collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |edges| Graph::from_edges(n, directed, &edges).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_round_trip(g in graph(12, false)) {
        prop_assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn directed_edge_list_round_trip(g in graph(9, true)) {
        prop_assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in graph(12, false)) {
        let c = complement(&g).unwrap();
        prop_assert_eq!(c.m() + g.m(), g.n() * g.n().saturating_sub(1) / 2);
        prop_assert_eq!(complement(&c).unwrap(), g);
    }

    #[test]
    fn subdivision_is_bipartite_and_preserves_planarity(g in graph(8, false)) {
        let s = subdivide(&g).unwrap();
        prop_assert_eq!((s.n(), s.m()), (g.n() + g.m(), 2 * g.m()));
        prop_assert!(s.is_bipartite());
        prop_assert_eq!(is_planar(&s), is_planar(&g));
    }

    #[test]
    fn planarity_matches_minor_search(g in graph(8, false)) {
        prop_assert_eq!(is_planar(&g), brute_planar(&g));
        if let Ok(e) = embed(&g) {
            prop_assert!(e.matches(&g) && e.satisfies_euler() && e.faces_partition_darts());
        }
    }

    #[test]
    fn bicliques_match_brute_force(g in graph(10, false)) {
        let got: BTreeSet<_> = list_max_bicliques(&g).unwrap().into_iter().collect();
        prop_assert_eq!(got, brute_bicliques(&g));
    }

    #[test]
    fn reduction_round_trips(g in graph(11, false)) {
        let r = reduce(&g).unwrap();
        prop_assert_eq!(expand(&r).unwrap(), g.clone());
        if r.status == Status::Planar {
            prop_assert_eq!(from_reduction(&r).unwrap().realized_edges(), g.edge_set());
        }
    }

    #[test]
    fn directed_reduction_round_trips(d in graph(8, true)) {
        let r = reduce(&d).unwrap();
        prop_assert_eq!(expand(&r).unwrap(), d.clone());
        if r.status == Status::Planar {
            prop_assert_eq!(from_reduction(&r).unwrap().realized_edges(), d.edge_set());
        }
    }
}
