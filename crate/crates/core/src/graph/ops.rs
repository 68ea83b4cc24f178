use super::Graph;
use crate::error::{Error, Result};

/// Same vertices; `(u, v)` is an edge iff it is not an edge of `g`.
pub fn complement(g: &Graph) -> Result<Graph> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    let mut h = Graph::undirected(n);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                h.add_edge(u, v)?;
            }
        }
    }
    for (&v, name) in g.labels() {
        h.set_label(v, name.clone());
    }
    Ok(h)
}

/// Replaces every edge `(u, v)` by a path `u - x - v` through a fresh vertex.
///
/// Subdivision vertices are numbered `n, n+1, ...` in sorted edge order.
pub fn subdivide(g: &Graph) -> Result<Graph> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    let mut h = Graph::undirected(g.n());
    for (&v, name) in g.labels() {
        h.set_label(v, name.clone());
    }
    for (u, v) in g.edges() {
        let x = h.add_vertex();
        h.add_edge(u, x)?;
        h.add_edge(x, v)?;
    }
    Ok(h)
}

/// Keeps every edge and, for each edge `(u, v)`, adds a fresh vertex adjacent
/// to both `u` and `v`.
pub fn attach_edge_triangles(g: &Graph) -> Result<Graph> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    let mut h = g.clone();
    for (u, v) in g.edges() {
        let x = h.add_vertex();
        h.add_edge(u, x)?;
        h.add_edge(x, v)?;
    }
    Ok(h)
}
