use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::orient::{orient, Orientation};
use crate::error::Result;
use crate::graph::{Graph, VertexId};

/// A complete bipartite subgraph. Sides are stored so that `side_a` holds the
/// smallest vertex id, which makes equal bicliques compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Biclique {
    side_a: BTreeSet<VertexId>,
    side_b: BTreeSet<VertexId>,
}

impl Biclique {
    pub fn new(a: BTreeSet<VertexId>, b: BTreeSet<VertexId>) -> Self {
        if a.first() <= b.first() || b.is_empty() {
            Biclique { side_a: a, side_b: b }
        } else {
            Biclique { side_a: b, side_b: a }
        }
    }

    pub fn from_slices(a: &[VertexId], b: &[VertexId]) -> Self {
        Self::new(a.iter().copied().collect(), b.iter().copied().collect())
    }

    pub fn side_a(&self) -> &BTreeSet<VertexId> {
        &self.side_a
    }

    pub fn side_b(&self) -> &BTreeSet<VertexId> {
        &self.side_b
    }

    pub fn vertex_count(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }

    pub fn edge_count(&self) -> usize {
        self.side_a.len() * self.side_b.len()
    }

    /// Sides disjoint, non-empty, and every cross pair an edge of `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        !self.side_a.is_empty()
            && !self.side_b.is_empty()
            && self.side_a.is_disjoint(&self.side_b)
            && self.side_a.iter().all(|&a| self.side_b.iter().all(|&b| g.has_edge(a, b)))
    }
}

impl fmt::Display for Biclique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<VertexId>| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} | {}", join(&self.side_a), join(&self.side_b))
    }
}

/// Vertices adjacent to every member of `set` (the whole vertex set when `set` is empty).
pub fn common_neighbors(g: &Graph, set: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    let mut iter = set.iter();
    match iter.next() {
        None => g.vertices().collect(),
        Some(&first) => {
            let mut acc = g.neighbors(first).clone();
            for &v in iter {
                acc.retain(|w| g.neighbors(v).contains(w));
            }
            acc
        }
    }
}

/// The partner side of a tuple: its creators together with outgoing
/// neighbors of tuple members that are adjacent to every member.
pub(crate) fn tuple_partners(g: &Graph, o: &Orientation, tuple: &BTreeSet<VertexId>) -> (usize, BTreeSet<VertexId>) {
    let mut members = tuple.iter();
    let first = *members.next().expect("tuples are non-empty");
    let mut creators: BTreeSet<VertexId> = o.in_neighbors(first).clone();
    for &t in members {
        creators.retain(|c| o.in_neighbors(t).contains(c));
    }
    let creator_count = creators.len();
    let mut partners = creators;
    for &t in tuple {
        for &w in o.out_neighbors(t) {
            if !tuple.contains(&w) && tuple.iter().all(|&s| g.has_edge(s, w)) {
                partners.insert(w);
            }
        }
    }
    (creator_count, partners)
}

/// The maximal biclique generated by a tuple, when both sides have two or more vertices.
pub(crate) fn tuple_biclique(g: &Graph, o: &Orientation, tuple: &BTreeSet<VertexId>) -> (usize, Option<Biclique>) {
    let (creators, partners) = tuple_partners(g, o, tuple);
    if partners.len() < 2 {
        return (creators, None);
    }
    let closure = common_neighbors(g, &partners);
    debug_assert!(closure.is_superset(tuple));
    (creators, Some(Biclique::new(closure, partners)))
}

/// Calls `f` on every subset of `set` with at least two elements.
pub(crate) fn for_each_tuple(set: &BTreeSet<VertexId>, mut f: impl FnMut(BTreeSet<VertexId>)) {
    let items: Vec<VertexId> = set.iter().copied().collect();
    assert!(items.len() < 32, "outdegree {} too large for tuple enumeration", items.len());
    for mask in 1u32..(1u32 << items.len()) {
        if mask.count_ones() >= 2 {
            f(items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
        }
    }
}

/// All maximal complete bipartite subgraphs with both sides of size two or
/// more, sorted.
///
/// For any acyclic orientation one side of every maximal biclique is a tuple
/// (a subset of some vertex's outgoing neighbors): the vertex of the biclique
/// that comes first in the order points at the entire opposite side. So
/// every tuple is closed into `(N(N(T)), N(T))` and duplicates are dropped.
pub fn list_max_bicliques(g: &Graph) -> Result<Vec<Biclique>> {
    let o = orient(g)?;
    Ok(bicliques_with(g, &o))
}

pub(crate) fn bicliques_with(g: &Graph, o: &Orientation) -> Vec<Biclique> {
    let mut seen: HashSet<BTreeSet<VertexId>> = HashSet::new();
    let mut out = BTreeSet::new();
    for v in g.vertices() {
        for_each_tuple(o.out_neighbors(v), |t| {
            if seen.insert(t.clone()) {
                if let (_, Some(b)) = tuple_biclique(g, o, &t) {
                    out.insert(b);
                }
            }
        });
    }
    out.into_iter().collect()
}
