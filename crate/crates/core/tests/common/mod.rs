//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use confluent::enumeration::{list_max_cliques, Biclique, BicliqueIndex};
use confluent::graph::CographExpr;
use confluent::{Graph, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn masks(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 32);
    g.vertices().map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect()
}

fn members(mask: u32) -> Vec<VertexId> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Maximal cliques with at least `min` vertices, by checking every subset.
pub fn brute_cliques(g: &Graph, min: usize) -> BTreeSet<Vec<VertexId>> {
    let adj = masks(g);
    let n = g.n();
    let mut out = BTreeSet::new();
    for s in 1u32..(1 << n) {
        if (s.count_ones() as usize) < min {
            continue;
        }
        let vs = members(s);
        let complete = vs.iter().all(|&v| adj[v] & s == s & !(1 << v));
        let maximal = (0..n).all(|w| s >> w & 1 == 1 || adj[w] & s != s);
        if complete && maximal {
            out.insert(vs);
        }
    }
    out
}

/// Maximal bicliques with both sides of two or more: pairs `(A, B)` with
/// `B` the common neighborhood of `A` and `A` that of `B`.
pub fn brute_bicliques(g: &Graph) -> BTreeSet<Biclique> {
    let adj = masks(g);
    let n = g.n();
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let common = |s: u32| members(s).iter().fold(all, |m, &v| m & adj[v]);
    let mut out = BTreeSet::new();
    for a in 1u32..(1 << n) {
        if a.count_ones() < 2 {
            continue;
        }
        let b = common(a);
        if b.count_ones() >= 2 && common(b) == a {
            out.insert(Biclique::new(members(a).into_iter().collect(), members(b).into_iter().collect()));
        }
    }
    out
}

fn has_kuratowski_subgraph(adj: &[u32]) -> bool {
    let n = adj.len();
    let full = |s: u32| members(s).iter().all(|&v| adj[v] & s == s & !(1 << v));
    for s in 1u32..(1 << n) {
        match s.count_ones() {
            5 if full(s) => return true,
            6 => {
                let vs = members(s);
                // bipartitions with vs[0] on side a
                for rest in 0u32..32 {
                    if rest.count_ones() != 2 {
                        continue;
                    }
                    let a: u32 = (1 << vs[0]) | members(rest).iter().fold(0, |m, &i| m | 1 << vs[i + 1]);
                    let b = s & !a;
                    if members(a).iter().all(|&v| adj[v] & b == b) {
                        return true;
                    }
                }
            }
            _ => {}
        }
    }
    false
}

fn contract(adj: &[u32], u: usize, v: usize) -> Vec<u32> {
    // merge v into u, then drop v and shift higher ids down
    let n = adj.len();
    let mut merged: Vec<u32> = adj.to_vec();
    merged[u] = (adj[u] | adj[v]) & !(1 << u) & !(1 << v);
    for w in 0..n {
        if w != u && w != v && adj[w] >> v & 1 == 1 {
            merged[w] |= 1 << u;
        }
    }
    let low = (1u32 << v) - 1;
    (0..n)
        .filter(|&w| w != v)
        .map(|w| {
            let m = merged[w] & !(1 << v);
            (m & low) | ((m >> 1) & !low)
        })
        .collect()
}

fn has_kuratowski_minor(adj: Vec<u32>, seen: &mut HashSet<Vec<u32>>) -> bool {
    if adj.len() < 5 || !seen.insert(adj.clone()) {
        return false;
    }
    if has_kuratowski_subgraph(&adj) {
        return true;
    }
    for u in 0..adj.len() {
        for v in members(adj[u]) {
            if u < v && has_kuratowski_minor(contract(&adj, u, v), seen) {
                return true;
            }
        }
    }
    false
}

/// Planarity by Wagner's theorem: no K5 or K3,3 minor, found by trying
/// every sequence of edge contractions.
pub fn brute_planar(g: &Graph) -> bool {
    !has_kuratowski_minor(masks(&g.underlying()), &mut HashSet::new())
}

pub fn intersection_graph(iv: &[(i64, i64)]) -> Graph {
    let mut g = Graph::undirected(iv.len());
    for i in 0..iv.len() {
        for j in i + 1..iv.len() {
            let (a, b) = iv[i];
            let (c, d) = iv[j];
            if a.max(c) <= b.min(d) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

pub fn complement_edges(g: &Graph) -> BTreeSet<(VertexId, VertexId)> {
    let mut out = BTreeSet::new();
    for u in g.vertices() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                out.insert((u, v));
            }
        }
    }
    out
}

pub fn random_intervals(r: &mut ChaCha8Rng, n: usize) -> Vec<(i64, i64)> {
    (0..n)
        .map(|_| {
            let a = r.gen_range(0..20);
            (a, a + r.gen_range(0..8))
        })
        .collect()
}

pub fn random_cograph(r: &mut ChaCha8Rng, leaves: usize) -> CographExpr {
    let mut next = 0;
    build_cograph(r, leaves, &mut next)
}

fn build_cograph(r: &mut ChaCha8Rng, k: usize, next: &mut usize) -> CographExpr {
    let e = if k == 1 {
        *next += 1;
        CographExpr::leaf(format!("v{}", *next - 1))
    } else {
        let parts = r.gen_range(2..=k.min(3));
        let mut sizes = vec![1; parts];
        for _ in parts..k {
            let i = r.gen_range(0..parts);
            sizes[i] += 1;
        }
        CographExpr::union(sizes.into_iter().map(|s| build_cograph(r, s, next)).collect())
    };
    if r.gen_bool(0.5) {
        CographExpr::complement(e)
    } else {
        e
    }
}

/// Random digraph: each pair gets an arc with probability `p`, in a random direction.
pub fn random_digraph(r: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut d = Graph::directed(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                if r.gen_bool(0.5) {
                    d.add_edge(u, v).unwrap();
                } else {
                    d.add_edge(v, u).unwrap();
                }
            }
        }
    }
    d
}

/// Random graph in which every vertex has at most `d` earlier neighbors.
pub fn random_degenerate(r: &mut ChaCha8Rng, n: usize, d: usize) -> Graph {
    let mut g = Graph::undirected(n);
    for v in 1..n {
        for _ in 0..d.min(v) {
            let w = r.gen_range(0..v);
            g.add_edge(v, w).unwrap();
        }
    }
    g
}

/// Edge set of a cograph expression, evaluated bottom-up on leaf bitmasks.
pub fn cograph_edges(e: &CographExpr) -> BTreeSet<(VertexId, VertexId)> {
    // returns the subtree's leaf mask; adj holds adjacency within the subtree
    fn eval(e: &CographExpr, next: &mut usize, adj: &mut Vec<u32>) -> u32 {
        match e {
            CographExpr::Leaf(_) => {
                adj.push(0);
                *next += 1;
                1 << (*next - 1)
            }
            CographExpr::Union(cs) => cs.iter().fold(0, |m, c| m | eval(c, next, adj)),
            CographExpr::Complement(c) => {
                let s = eval(c, next, adj);
                for v in members(s) {
                    adj[v] = s & !adj[v] & !(1 << v);
                }
                s
            }
        }
    }
    let mut adj = Vec::new();
    eval(e, &mut 0, &mut adj);
    let mut out = BTreeSet::new();
    for (u, &m) in adj.iter().enumerate() {
        for v in members(m) {
            if u < v {
                out.insert((u, v));
            }
        }
    }
    out
}

pub type Edit = (Vec<(VertexId, VertexId)>, Vec<VertexId>);

/// A random clique or biclique replacement on the index's graph: the edges
/// to remove and the members to attach to a new vertex.
pub fn random_edit(idx: &BicliqueIndex, r: &mut ChaCha8Rng) -> Option<Edit> {
    let g = idx.graph();
    if r.gen_bool(0.3) {
        let cliques = list_max_cliques(g, 3).unwrap();
        let c = cliques.choose(r)?;
        let k = r.gen_range(3..=c.len());
        let mut vs: Vec<VertexId> = c.choose_multiple(r, k).copied().collect();
        vs.sort();
        let removed = vs.iter().enumerate().flat_map(|(i, &a)| vs[i + 1..].iter().map(move |&b| (a, b))).collect();
        Some((removed, vs))
    } else {
        let all: Vec<Biclique> = idx.bicliques().into_iter().collect();
        let b = all.choose(r)?;
        let pick = |side: &BTreeSet<VertexId>, r: &mut ChaCha8Rng| {
            let v: Vec<VertexId> = side.iter().copied().collect();
            let k = r.gen_range(2..=v.len());
            v.choose_multiple(r, k).copied().collect::<Vec<_>>()
        };
        let a = pick(b.side_a(), r);
        let bb = pick(b.side_b(), r);
        let removed = a.iter().flat_map(|&x| bb.iter().map(move |&y| (x, y))).collect();
        Some((removed, a.into_iter().chain(bb).collect()))
    }
}
