use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::bicliques::{common_neighbors, for_each_tuple, tuple_partners, Biclique};
use super::orient::{orient, Orientation};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

type Tuple = Vec<VertexId>;

/// Hash-table entry for one tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleEntry {
    pub creators: usize,
    /// Outgoing neighbors of tuple members that are adjacent to all members.
    pub adjacent_out: Vec<VertexId>,
    pub biclique: Option<Biclique>,
}

/// Priority key: vertex count, then edge count.
fn size_key(b: &Biclique) -> (usize, usize) {
    (b.vertex_count(), b.edge_count())
}

/// Maximal bicliques of a graph that is edited by clique and biclique
/// replacements, maintained through a table of tuples of an acyclic
/// orientation.
///
/// Only tuples that touch a replaced vertex, or whose partner side does, are
/// recomputed after an edit.
#[derive(Clone, Debug)]
pub struct BicliqueIndex {
    graph: Graph,
    orientation: Orientation,
    tuples: HashMap<Tuple, TupleEntry>,
    by_member: HashMap<VertexId, BTreeSet<Tuple>>,
    by_partner: HashMap<VertexId, BTreeSet<Tuple>>,
    /// Arc `t -> w` with `t` in a tuple and `w` listed as its adjacent outgoing neighbor.
    by_arc: HashMap<(VertexId, VertexId), BTreeSet<Tuple>>,
    counts: HashMap<Biclique, usize>,
    queue: BTreeMap<(usize, usize), BTreeSet<Biclique>>,
}

/// Builds the index of an undirected graph.
pub fn build_index(g: &Graph) -> Result<BicliqueIndex> {
    let orientation = orient(g)?;
    let mut index = BicliqueIndex {
        graph: g.clone(),
        orientation,
        tuples: HashMap::new(),
        by_member: HashMap::new(),
        by_partner: HashMap::new(),
        by_arc: HashMap::new(),
        counts: HashMap::new(),
        queue: BTreeMap::new(),
    };
    let mut all = BTreeSet::new();
    for v in g.vertices() {
        for_each_tuple(index.orientation.out_neighbors(v), |t| {
            all.insert(t.into_iter().collect::<Tuple>());
        });
    }
    for t in all {
        index.refresh(&t);
    }
    Ok(index)
}

impl BicliqueIndex {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn tuple_count(&self) -> usize {
        self.tuples.len()
    }

    pub fn entry(&self, tuple: &[VertexId]) -> Option<&TupleEntry> {
        self.tuples.get(tuple)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Every maximal biclique (both sides ≥ 2) of the current graph.
    pub fn bicliques(&self) -> BTreeSet<Biclique> {
        self.counts.keys().cloned().collect()
    }

    /// Largest biclique by vertex count, then edge count, then lexicographic order.
    pub fn largest(&self) -> Option<&Biclique> {
        self.queue.values().next_back().and_then(|bucket| bucket.first())
    }

    /// Bicliques from largest to smallest.
    pub fn by_size(&self) -> impl Iterator<Item = &Biclique> {
        self.queue.values().rev().flat_map(|bucket| bucket.iter())
    }

    fn detach(&mut self, t: &Tuple) {
        let Some(old) = self.tuples.remove(t) else {
            return;
        };
        for &v in t {
            if let Some(s) = self.by_member.get_mut(&v) {
                s.remove(t);
            }
        }
        if let Some(b) = &old.biclique {
            for &p in b.side_a().iter().chain(b.side_b()) {
                if let Some(s) = self.by_partner.get_mut(&p) {
                    s.remove(t);
                }
            }
            let c = self.counts.get_mut(b).expect("counted biclique");
            *c -= 1;
            if *c == 0 {
                self.counts.remove(b);
                let key = size_key(b);
                let bucket = self.queue.get_mut(&key).unwrap();
                bucket.remove(b);
                if bucket.is_empty() {
                    self.queue.remove(&key);
                }
            }
        }
        for &w in &old.adjacent_out {
            for &m in t {
                if let Some(s) = self.by_arc.get_mut(&(m, w)) {
                    s.remove(t);
                    if s.is_empty() {
                        self.by_arc.remove(&(m, w));
                    }
                }
            }
        }
    }

    /// Recomputes the entry of `t` from the current graph and orientation.
    fn refresh(&mut self, t: &Tuple) {
        self.detach(t);
        let set: BTreeSet<VertexId> = t.iter().copied().collect();
        let (creators, partners) = tuple_partners(&self.graph, &self.orientation, &set);
        if creators == 0 {
            return;
        }
        let adjacent_out: Vec<VertexId> =
            partners.iter().copied().filter(|&w| t.iter().any(|&m| self.orientation.points(m, w))).collect();
        let biclique =
            (partners.len() >= 2).then(|| Biclique::new(common_neighbors(&self.graph, &partners), partners.clone()));

        for &v in t {
            self.by_member.entry(v).or_default().insert(t.clone());
        }
        for &w in &adjacent_out {
            for &m in t {
                if self.orientation.points(m, w) {
                    self.by_arc.entry((m, w)).or_default().insert(t.clone());
                }
            }
        }
        if let Some(b) = &biclique {
            for &p in b.side_a().iter().chain(b.side_b()) {
                self.by_partner.entry(p).or_default().insert(t.clone());
            }
            *self.counts.entry(b.clone()).or_default() += 1;
            self.queue.entry(size_key(b)).or_default().insert(b.clone());
        }
        self.tuples.insert(t.clone(), TupleEntry { creators, adjacent_out, biclique });
    }

    /// Applies a clique or biclique replacement: `removed` are the edges among
    /// the members, `new_vertex` must be the next fresh id, and `new_edges`
    /// join it to every member.
    ///
    /// Edges from members with outgoing arcs inside the replaced structure
    /// are oriented toward the new vertex and the rest away from it, keeping
    /// the orientation acyclic.
    pub fn apply_replacement(
        &mut self,
        removed: &[(VertexId, VertexId)],
        new_vertex: VertexId,
        new_edges: &[(VertexId, VertexId)],
    ) -> Result<()> {
        let members = validate_edit(&self.graph, removed, new_vertex, new_edges)?;

        let senders: BTreeSet<VertexId> =
            removed.iter().map(|&(a, b)| if self.orientation.points(a, b) { a } else { b }).collect();
        let anchor = senders.iter().copied().max_by_key(|&s| self.orientation.position(s));

        let mut affected: BTreeSet<Tuple> = BTreeSet::new();
        let mut touched: BTreeSet<VertexId> = members.clone();
        touched.insert(new_vertex);
        let collect = |idx: &Self, affected: &mut BTreeSet<Tuple>| {
            for v in &touched {
                if *v < idx.graph.n() {
                    for_each_tuple(idx.orientation.out_neighbors(*v), |t| {
                        affected.insert(t.into_iter().collect());
                    });
                }
                for map in [&idx.by_member, &idx.by_partner] {
                    if let Some(ts) = map.get(v) {
                        affected.extend(ts.iter().cloned());
                    }
                }
            }
        };
        collect(self, &mut affected);

        for &(a, b) in removed {
            self.graph.remove_edge(a, b);
            self.orientation.remove_edge(a, b);
        }
        let v = self.graph.add_vertex();
        debug_assert_eq!(v, new_vertex);
        self.orientation.push_vertex();
        self.orientation.place_after(v, anchor);
        for &c in &members {
            self.graph.add_edge(c, v)?;
            if self.orientation.position(c) < self.orientation.position(v) {
                self.orientation.add_arc(c, v);
            } else {
                self.orientation.add_arc(v, c);
            }
        }

        collect(self, &mut affected);
        for t in &affected {
            self.refresh(t);
        }
        Ok(())
    }

    /// Structural self-check used by tests: entries reference live vertices
    /// and arcs only, and every stored biclique is maximal and complete.
    pub fn check_invariants(&self) -> bool {
        let n = self.graph.n();
        self.tuples.iter().all(|(t, e)| {
            t.iter().all(|&v| v < n)
                && e.adjacent_out.iter().all(|&w| t.iter().any(|&m| self.orientation.points(m, w)))
                && e.biclique.as_ref().is_none_or(|b| b.is_valid_in(&self.graph))
        }) && self.by_arc.keys().all(|&(a, b)| self.graph.has_edge(a, b))
            && self.orientation.is_acyclic()
            && self.orientation.covers(&self.graph)
    }
}

/// Checks that the edit is a clique or complete-bipartite replacement on
/// live vertices and returns the member set.
pub(crate) fn validate_edit(
    g: &Graph,
    removed: &[(VertexId, VertexId)],
    new_vertex: VertexId,
    new_edges: &[(VertexId, VertexId)],
) -> Result<BTreeSet<VertexId>> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    if new_vertex != g.n() {
        return Err(Error::InvalidEdit(format!("new vertex must be {}, got {new_vertex}", g.n())));
    }
    let mut members = BTreeSet::new();
    for &(a, b) in new_edges {
        let other = match (a == new_vertex, b == new_vertex) {
            (true, false) => b,
            (false, true) => a,
            _ => return Err(Error::InvalidEdit(format!("new edge ({a}, {b}) must join the new vertex"))),
        };
        if other >= g.n() {
            return Err(Error::InvalidEdit(format!("vertex {other} is not live")));
        }
        members.insert(other);
    }
    if members.len() != new_edges.len() || members.len() < 2 {
        return Err(Error::InvalidEdit("new edges must reach at least two distinct members".into()));
    }
    let mut removed_set = BTreeSet::new();
    for &(a, b) in removed {
        if !g.has_edge(a, b) {
            return Err(Error::InvalidEdit(format!("edge ({a}, {b}) is not live")));
        }
        if !members.contains(&a) || !members.contains(&b) {
            return Err(Error::InvalidEdit(format!("removed edge ({a}, {b}) leaves the member set")));
        }
        removed_set.insert((a.min(b), a.max(b)));
    }
    let k = members.len();
    if removed_set.len() == k * (k - 1) / 2 {
        return Ok(members);
    }
    // complete bipartite on the members
    let mut side: BTreeMap<VertexId, bool> = BTreeMap::new();
    let first = *members.first().unwrap();
    side.insert(first, false);
    let mut stack = vec![first];
    while let Some(u) = stack.pop() {
        for &(a, b) in &removed_set {
            let w = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            match side.get(&w) {
                None => {
                    side.insert(w, !side[&u]);
                    stack.push(w);
                }
                Some(&s) if s == side[&u] => return Err(Error::InvalidEdit("removed edges are not bipartite".into())),
                _ => {}
            }
        }
    }
    let a = side.values().filter(|s| !**s).count();
    let b = side.len() - a;
    if side.len() != k || removed_set.len() != a * b {
        return Err(Error::InvalidEdit("removed edges are neither a clique nor a complete biclique".into()));
    }
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::list_max_bicliques;
    use crate::graph::Family;

    fn replace(index: &mut BicliqueIndex, b: &Biclique) {
        let removed: Vec<_> = b.side_a().iter().flat_map(|&a| b.side_b().iter().map(move |&x| (a, x))).collect();
        let v = index.graph().n();
        let new_edges: Vec<_> = b.side_a().iter().chain(b.side_b()).map(|&c| (c, v)).collect();
        index.apply_replacement(&removed, v, &new_edges).unwrap();
    }

    #[test]
    fn c4_index() {
        let g = Family::Cycle(4).generate().unwrap();
        let mut idx = build_index(&g).unwrap();
        assert_eq!(idx.bicliques().len(), 1);
        let b = idx.largest().unwrap().clone();
        replace(&mut idx, &b);
        assert!(idx.is_empty());
        let star = idx.graph();
        assert_eq!(star.degree(4), 4);
        assert_eq!(star.m(), 4);
        assert!(idx.check_invariants());
    }

    #[test]
    fn empty_graph() {
        assert!(build_index(&Graph::undirected(5)).unwrap().is_empty());
        assert_eq!(build_index(&Graph::undirected(5)).unwrap().tuple_count(), 0);
    }

    #[test]
    fn cube_face_replacement_matches_rebuild() {
        let g = Family::Hypercube(3).generate().unwrap();
        let mut idx = build_index(&g).unwrap();
        let b = idx.largest().unwrap().clone();
        replace(&mut idx, &b);
        let fresh = list_max_bicliques(idx.graph()).unwrap();
        assert_eq!(idx.bicliques(), fresh.into_iter().collect());
        assert!(idx.check_invariants());
    }

    #[test]
    fn replacement_without_bicliques() {
        let g = Graph::from_edges(4, false, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let mut idx = build_index(&g).unwrap();
        assert!(idx.is_empty());
        idx.apply_replacement(&[(0, 1), (1, 2), (0, 2)], 4, &[(0, 4), (1, 4), (2, 4)]).unwrap();
        assert!(idx.is_empty());
        assert!(idx.check_invariants());
    }

    #[test]
    fn rejects_dead_references() {
        let g = Family::Cycle(4).generate().unwrap();
        let mut idx = build_index(&g).unwrap();
        assert!(idx.apply_replacement(&[(0, 2)], 4, &[(0, 4), (2, 4)]).is_err());
        assert!(idx.apply_replacement(&[(0, 1)], 7, &[(0, 7), (1, 7)]).is_err());
        assert!(idx.apply_replacement(&[(0, 1)], 4, &[(0, 4), (9, 4)]).is_err());
        assert!(idx.apply_replacement(&[(0, 1), (2, 3)], 4, &[(0, 4), (1, 4), (2, 4), (3, 4)]).is_err());
    }
}
