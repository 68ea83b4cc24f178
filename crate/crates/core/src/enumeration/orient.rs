use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// An acyclic orientation with bounded outdegree.
///
/// `order` lists vertices so that every edge points from the earlier vertex
/// to the later one; `d` is the outdegree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    out: Vec<BTreeSet<VertexId>>,
    inc: Vec<BTreeSet<VertexId>>,
    order: Vec<VertexId>,
    position: Vec<usize>,
    d: usize,
}

/// Degeneracy orientation: repeatedly peel a minimum-degree vertex (smallest
/// id on ties) and orient its remaining edges away from it.
pub fn orient(g: &Graph) -> Result<Orientation> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut buckets: BTreeSet<(usize, VertexId)> = g.vertices().map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = buckets.pop_first() {
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets.remove(&(degree[w], w));
                degree[w] -= 1;
                buckets.insert((degree[w], w));
            }
        }
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut out = vec![BTreeSet::new(); n];
    let mut inc = vec![BTreeSet::new(); n];
    for (u, v) in g.edges() {
        let (a, b) = if position[u] < position[v] { (u, v) } else { (v, u) };
        out[a].insert(b);
        inc[b].insert(a);
    }
    let d = out.iter().map(BTreeSet::len).max().unwrap_or(0);
    Ok(Orientation { out, inc, order, position, d })
}

impl Orientation {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.position[v]
    }

    pub fn out_neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.inc[v]
    }

    pub fn points(&self, u: VertexId, v: VertexId) -> bool {
        self.out[u].contains(&v)
    }

    pub fn max_outdegree(&self) -> usize {
        self.out.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Every arc goes forward in `order`.
    pub fn is_acyclic(&self) -> bool {
        self.out.iter().enumerate().all(|(u, outs)| outs.iter().all(|&v| self.position[u] < self.position[v]))
    }

    /// Each edge of `g` is oriented exactly once and nothing else is.
    pub fn covers(&self, g: &Graph) -> bool {
        let arcs: usize = self.out.iter().map(BTreeSet::len).sum();
        arcs == g.m() && g.edges().all(|(u, v)| self.points(u, v) != self.points(v, u))
    }

    pub(crate) fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        if self.out[u].remove(&v) {
            self.inc[v].remove(&u);
        } else if self.out[v].remove(&u) {
            self.inc[u].remove(&v);
        }
    }

    /// Appends a vertex with no edges at the end of the order.
    pub(crate) fn push_vertex(&mut self) -> VertexId {
        let v = self.out.len();
        self.out.push(BTreeSet::new());
        self.inc.push(BTreeSet::new());
        self.position.push(self.order.len());
        self.order.push(v);
        v
    }

    /// Moves `v` to just after position `after` (or to the front) in the order.
    pub(crate) fn place_after(&mut self, v: VertexId, after: Option<VertexId>) {
        self.order.retain(|&x| x != v);
        let at = after.map_or(0, |a| self.order.iter().position(|&x| x == a).unwrap() + 1);
        self.order.insert(at, v);
        for (i, &x) in self.order.iter().enumerate() {
            self.position[x] = i;
        }
    }

    pub(crate) fn add_arc(&mut self, u: VertexId, v: VertexId) {
        self.out[u].insert(v);
        self.inc[v].insert(u);
        self.d = self.d.max(self.out[u].len());
    }
}
