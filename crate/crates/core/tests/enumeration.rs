mod common;

use std::collections::BTreeSet;

use confluent::enumeration::{build_index, directed_bicliques, list_max_bicliques, list_max_cliques, orient, Biclique};
use confluent::graph::Family;
use confluent::{Graph, VertexId};
use rand::Rng;

use common::{brute_bicliques, brute_cliques, random_degenerate, random_digraph, random_edit, rng};

fn suite() -> Vec<Graph> {
    let mut r = rng(7);
    (0..200)
        .map(|i| {
            let n = r.gen_range(1..=10);
            let p = [0.2, 0.4, 0.6, 0.8][i % 4];
            Family::Random { n, p, seed: 1000 + i as u64 }.generate().unwrap()
        })
        .collect()
}

#[test]
fn cliques_match_subsets() {
    for g in suite() {
        for min in [1, 3, 4] {
            let got: BTreeSet<Vec<VertexId>> = list_max_cliques(&g, min).unwrap().into_iter().collect();
            assert_eq!(got, brute_cliques(&g, min), "{}", g.to_edge_list());
        }
    }
}

#[test]
fn bicliques_match_subsets() {
    for g in suite() {
        let got: BTreeSet<Biclique> = list_max_bicliques(&g).unwrap().into_iter().collect();
        assert_eq!(got, brute_bicliques(&g), "{}", g.to_edge_list());
    }
}

#[test]
fn index_matches_direct_listing() {
    for g in suite() {
        let idx = build_index(&g).unwrap();
        assert!(idx.check_invariants());
        assert_eq!(idx.bicliques(), brute_bicliques(&g));
    }
}

#[test]
fn replacement_matches_rebuild() {
    let mut r = rng(11);
    let mut edits = 0;
    let mut seed = 0;
    while edits < 1000 {
        seed += 1;
        let n = r.gen_range(8..=16);
        let g = Family::Random { n, p: r.gen_range(0.25..0.6), seed }.generate().unwrap();
        let mut idx = build_index(&g).unwrap();
        for _ in 0..10 {
            let Some((removed, members)) = random_edit(&idx, &mut r) else {
                break;
            };
            let x = idx.graph().n();
            let new_edges: Vec<_> = members.iter().map(|&m| (m, x)).collect();
            idx.apply_replacement(&removed, x, &new_edges).unwrap();
            let fresh = build_index(idx.graph()).unwrap();
            assert_eq!(idx.bicliques(), fresh.bicliques(), "seed {seed}");
            assert_eq!(idx.bicliques(), list_max_bicliques(idx.graph()).unwrap().into_iter().collect());
            assert!(idx.check_invariants(), "seed {seed}");
            edits += 1;
        }
    }
}

#[test]
fn tuple_count_is_linear() {
    // out-degree at most 3 gives at most 2^3 - 3 - 1 = 4 tuples per vertex
    let mut r = rng(3);
    for n in [50, 200, 800] {
        let g = random_degenerate(&mut r, n, 3);
        let idx = build_index(&g).unwrap();
        assert!(idx.orientation().max_outdegree() <= 3);
        assert!(idx.tuple_count() <= 4 * n, "n={n}: {} tuples", idx.tuple_count());
    }
}

#[test]
fn orientation_is_acyclic_and_covers() {
    let mut r = rng(5);
    for _ in 0..50 {
        let n = r.gen_range(1..60);
        let d = r.gen_range(1..6);
        let g = random_degenerate(&mut r, n, d);
        let o = orient(&g).unwrap();
        assert!(o.is_acyclic() && o.covers(&g));
        assert!(o.max_outdegree() <= d);
    }
}

#[test]
fn directed_bicliques_are_one_way_sub_bicliques() {
    let mut r = rng(9);
    for _ in 0..100 {
        let n = r.gen_range(4..=10);
        let d = random_digraph(&mut r, n, 0.6);
        let maximal = brute_bicliques(&d.underlying());
        for b in directed_bicliques(&d).unwrap() {
            assert!(b.side_a().len() >= 2 && b.side_b().len() >= 2);
            assert!(b.is_one_way_complete(&d), "{b:?} in {}", d.to_edge_list());
            let inside = |m: &Biclique| {
                let (x, y) = (m.side_a(), m.side_b());
                (b.side_a().is_subset(x) && b.side_b().is_subset(y))
                    || (b.side_a().is_subset(y) && b.side_b().is_subset(x))
            };
            assert!(maximal.iter().any(inside));
        }
    }
}

#[test]
fn uniformly_oriented_bicliques_are_recovered() {
    let mut r = rng(13);
    for _ in 0..50 {
        let (a, b) = (r.gen_range(2..6), r.gen_range(2..6));
        let mut d = Graph::directed(a + b);
        for x in 0..a {
            for y in a..a + b {
                if r.gen_bool(0.7) {
                    d.add_edge(x, y).unwrap();
                }
            }
        }
        let found: BTreeSet<_> =
            directed_bicliques(&d).unwrap().into_iter().map(|b| (b.side_a().clone(), b.side_b().clone())).collect();
        for m in brute_bicliques(&d.underlying()) {
            let (x, y) = if m.side_a().iter().all(|&v| v < a) {
                (m.side_a().clone(), m.side_b().clone())
            } else {
                (m.side_b().clone(), m.side_a().clone())
            };
            assert!(found.contains(&(x, y)), "{}", d.to_edge_list());
        }
    }
}
