//! Closed-form networks for interval graphs, tree and cycle complements,
//! and cographs. Terminal `v` is always node `v`.

use std::collections::BTreeMap;

use super::{JunctionStyle, NodeId, SegmentId, TrackNetwork};
use crate::error::{Error, Result};
use crate::graph::{is_tree, CographExpr, Graph, IntervalModel, VertexId};

fn with_terminals(n: usize) -> TrackNetwork {
    let mut t = TrackNetwork::new(false);
    for v in 0..n {
        t.add_terminal(v);
    }
    t
}

/// Endpoint-rank lattice: node `(l, r)` for every rank span covered by some
/// interval, with a left leg to `(l, r - 1)` and a right leg to `(l + 1, r)`.
/// Each interval's terminal hangs from the node of its own span. A curve
/// descends from one terminal to a base node `(k, k)`, turns there, and
/// climbs to another terminal, so it exists exactly when both spans contain
/// some rank `k`.
pub fn build_interval_track(m: &IntervalModel) -> Result<TrackNetwork> {
    if m.is_empty() {
        return Err(Error::InvalidParameter("interval model is empty".into()));
    }
    let spans = m.rank_spans();
    let covered = |l: usize, r: usize| spans.iter().any(|&(a, b)| a <= l && r <= b);
    let mut t = with_terminals(spans.len());
    let mut lattice: BTreeMap<(usize, usize), NodeId> = BTreeMap::new();
    let top = 2 * spans.len();
    for l in 0..top {
        for r in l..top {
            if covered(l, r) {
                lattice.insert((l, r), t.add_junction(JunctionStyle::Switch));
            }
        }
    }
    // parents[node] and children[node] hold segment ids
    let mut up: BTreeMap<NodeId, Vec<SegmentId>> = BTreeMap::new();
    let mut down: BTreeMap<NodeId, Vec<SegmentId>> = BTreeMap::new();
    for (&(l, r), &x) in &lattice {
        if l == r {
            continue;
        }
        for child in [(l, r - 1), (l + 1, r)] {
            let y = lattice[&child];
            let s = t.add_segment(x, y);
            down.entry(x).or_default().push(s);
            up.entry(y).or_default().push(s);
        }
    }
    for (i, &(l, r)) in spans.iter().enumerate() {
        let x = lattice[&(l, r)];
        let s = t.add_segment(i, x);
        up.entry(x).or_default().push(s);
    }
    for (&(l, r), &x) in &lattice {
        let parents = up.get(&x).cloned().unwrap_or_default();
        if l == r {
            for (i, &a) in parents.iter().enumerate() {
                for &b in &parents[i + 1..] {
                    t.allow(x, a, b);
                }
            }
        } else {
            for &a in &parents {
                for &b in &down[&x] {
                    t.allow(x, a, b);
                }
            }
        }
    }
    Ok(t)
}

/// Network realizing the complement of a tree.
///
/// The tree is rooted at vertex 0. Every internal vertex `p` gets a connector
/// `F(p)` meeting its own terminal, its children's terminals, the connectors
/// of internal children and the connector of its parent. A curve climbs from
/// a vertex through ancestor connectors and descends into any branch other
/// than the one it came from, which avoids exactly the tree edges.
pub fn build_cotree_track(tree: &Graph) -> Result<TrackNetwork> {
    if !is_tree(tree) {
        return Err(Error::NotATree);
    }
    let mut t = with_terminals(tree.n());
    cotree_into(&mut t, tree, 0);
    Ok(t)
}

fn cotree_into(t: &mut TrackNetwork, tree: &Graph, root: VertexId) {
    let n = tree.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &w in tree.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
        i += 1;
    }
    let children = |p: VertexId| -> Vec<VertexId> {
        tree.neighbors(p).iter().copied().filter(|&c| parent[c] == p && c != p).collect()
    };
    let mut hub: BTreeMap<VertexId, NodeId> = BTreeMap::new();
    for &u in &order {
        if !children(u).is_empty() {
            hub.insert(u, t.add_junction(JunctionStyle::Switch));
        }
    }
    // per vertex: own-terminal segment to its hub, terminal segment to parent's hub, hub-to-parent-hub
    let mut own: BTreeMap<VertexId, SegmentId> = BTreeMap::new();
    let mut to_parent: BTreeMap<VertexId, SegmentId> = BTreeMap::new();
    let mut hub_up: BTreeMap<VertexId, SegmentId> = BTreeMap::new();
    for &u in &order {
        if let Some(&h) = hub.get(&u) {
            own.insert(u, t.add_segment(u, h));
        }
        if u != root {
            let ph = hub[&parent[u]];
            to_parent.insert(u, t.add_segment(u, ph));
            if let Some(&h) = hub.get(&u) {
                hub_up.insert(u, t.add_segment(h, ph));
            }
        }
    }
    for (&p, &h) in &hub {
        let cs = children(p);
        for (i, &a) in cs.iter().enumerate() {
            for &b in &cs[i + 1..] {
                t.allow(h, to_parent[&a], to_parent[&b]);
                for (x, y) in [(a, b), (b, a)] {
                    if let Some(&s) = hub_up.get(&y) {
                        t.allow(h, to_parent[&x], s);
                    }
                }
                if let (Some(&s), Some(&u)) = (hub_up.get(&a), hub_up.get(&b)) {
                    t.allow(h, s, u);
                }
            }
        }
        for &c in &cs {
            if let Some(&s) = hub_up.get(&c) {
                t.allow(h, own[&p], s);
            }
        }
        if let Some(&up) = hub_up.get(&p) {
            for &c in &cs {
                t.allow(h, up, to_parent[&c]);
                if let Some(&s) = hub_up.get(&c) {
                    t.allow(h, up, s);
                }
            }
        }
    }
}

/// Network realizing the complement of the cycle `0 1 … n-1`.
///
/// Vertex `n - 1` is set aside; the rest form a path whose complement is
/// drawn as a tree complement, and a fan junction joins `n - 1` to every
/// path vertex except its two cycle neighbors.
pub fn build_cocycle_track(n: usize) -> Result<TrackNetwork> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let mut t = with_terminals(n);
    let path = Graph::from_edges(n - 1, false, &(0..n - 2).map(|i| (i, i + 1)).collect::<Vec<_>>())?;
    cotree_into(&mut t, &path, 0);
    let v = n - 1;
    let targets: Vec<VertexId> = (1..n.saturating_sub(2)).collect();
    if !targets.is_empty() {
        let fan = t.add_junction(JunctionStyle::Switch);
        let stem = t.add_segment(v, fan);
        for w in targets {
            let s = t.add_segment(fan, w);
            t.allow(fan, stem, s);
        }
    }
    Ok(t)
}

enum Cotree {
    Leaf(VertexId),
    Node { join: bool, children: Vec<Cotree> },
}

fn to_cotree(e: &CographExpr, negated: bool, next: &mut VertexId) -> Cotree {
    match e {
        CographExpr::Leaf(_) => {
            *next += 1;
            Cotree::Leaf(*next - 1)
        }
        CographExpr::Union(cs) => {
            Cotree::Node { join: negated, children: cs.iter().map(|c| to_cotree(c, negated, next)).collect() }
        }
        CographExpr::Complement(c) => to_cotree(c, !negated, next),
    }
}

/// Network realizing a cograph: one junction per union or join of the
/// cotree, joined to its children and by a tail to its parent. Curves pass
/// between a child and the tail everywhere and between two children only at
/// joins. Leaf `i` of the expression is vertex `i`.
pub fn build_cograph_track(e: &CographExpr) -> Result<TrackNetwork> {
    e.validate()?;
    let n = e.leaves().len();
    let mut t = with_terminals(n);
    let mut next = 0;
    let tree = to_cotree(e, false, &mut next);
    cograph_into(&mut t, &tree);
    Ok(t)
}

/// Adds the subtree `c`; returns its top node and, for a junction, the
/// segments to its children.
fn cograph_into(t: &mut TrackNetwork, c: &Cotree) -> (NodeId, Vec<SegmentId>) {
    match c {
        Cotree::Leaf(v) => (*v, Vec::new()),
        Cotree::Node { join, children } => {
            let j = t.add_junction(JunctionStyle::Switch);
            let mut segs = Vec::new();
            for c in children {
                let (x, below) = cograph_into(t, c);
                let tail = t.add_segment(x, j);
                for s in below {
                    t.allow(x, s, tail);
                }
                segs.push(tail);
            }
            if *join {
                for (i, &a) in segs.iter().enumerate() {
                    for &b in &segs[i + 1..] {
                        t.allow(j, a, b);
                    }
                }
            }
            (j, segs)
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::graph::{complement, Family};
    use crate::planarity::is_planar;

    fn check(t: &TrackNetwork, expected: &Graph) {
        t.validate().unwrap();
        assert_eq!(t.realized_edges(), expected.edge_set());
        assert!(is_planar(&t.underlying()));
    }

    fn intersection_graph(m: &IntervalModel) -> Graph {
        let mut g = Graph::undirected(m.len());
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if m.intersects(i, j) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn single_interval() {
        let m = IntervalModel::from_integers(&[(0, 1)]).unwrap();
        assert!(build_interval_track(&m).unwrap().realized_edges().is_empty());
    }

    #[test]
    fn three_intervals() {
        let m = IntervalModel::from_integers(&[(0, 2), (1, 4), (3, 5)]).unwrap();
        let t = build_interval_track(&m).unwrap();
        assert_eq!(t.realized_edges(), BTreeSet::from([(0, 1), (1, 2)]));
        check(&t, &intersection_graph(&m));
    }

    #[test]
    fn touching_and_nested_intervals() {
        let m = IntervalModel::from_integers(&[(0, 10), (2, 3), (3, 4), (5, 6), (6, 6), (8, 12)]).unwrap();
        check(&build_interval_track(&m).unwrap(), &intersection_graph(&m));
    }

    #[test]
    fn five_overlapping_intervals_draw_k5() {
        let m = IntervalModel::from_integers(&[(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)]).unwrap();
        let g = intersection_graph(&m);
        assert_eq!(g.m(), 10);
        check(&build_interval_track(&m).unwrap(), &g);
    }

    #[test]
    fn star_complement_is_triangle() {
        let star = Family::CompleteBipartite(1, 3).generate().unwrap();
        let t = build_cotree_track(&star).unwrap();
        assert_eq!(t.realized_edges(), BTreeSet::from([(1, 2), (1, 3), (2, 3)]));
    }

    #[test]
    fn path_complements() {
        for n in 1..=8 {
            let p = Family::Path(n).generate().unwrap();
            let t = build_cotree_track(&p).unwrap();
            check(&t, &complement(&p).unwrap());
        }
        let p6 = Family::Path(6).generate().unwrap();
        assert_eq!(build_cotree_track(&p6).unwrap().realized_edges().len(), 10);
    }

    #[test]
    fn random_tree_complements() {
        for seed in 0..30 {
            let tree = Family::RandomTree { n: 11, seed }.generate().unwrap();
            check(&build_cotree_track(&tree).unwrap(), &complement(&tree).unwrap());
        }
    }

    #[test]
    fn cotree_rejects_non_trees() {
        assert!(matches!(build_cotree_track(&Family::Cycle(4).generate().unwrap()), Err(Error::NotATree)));
    }

    #[test]
    fn cycle_complements() {
        for n in 3..=12 {
            let c = Family::Cycle(n).generate().unwrap();
            check(&build_cocycle_track(n).unwrap(), &complement(&c).unwrap());
        }
        assert_eq!(build_cocycle_track(8).unwrap().realized_edges().len(), 20);
        assert!(build_cocycle_track(2).is_err());
    }

    #[test]
    fn small_cographs() {
        let k2 = CographExpr::parse("cu(a, b)").unwrap();
        assert_eq!(build_cograph_track(&k2).unwrap().realized_edges(), BTreeSet::from([(0, 1)]));
        let empty = CographExpr::parse("u(a, b)").unwrap();
        assert!(build_cograph_track(&empty).unwrap().realized_edges().is_empty());
    }

    #[test]
    fn nested_cograph() {
        let e = CographExpr::parse("cu(cu(a, b), cu(cu(c, d), cu(e, f), g))").unwrap();
        let g = Family::Cograph(e.clone()).generate().unwrap();
        check(&build_cograph_track(&e).unwrap(), &g);
    }
}
