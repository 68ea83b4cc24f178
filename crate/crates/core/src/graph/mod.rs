//! Simple graphs, the edge-list text format, and graph families.

mod families;
mod ops;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub(crate) use families::is_tree;
pub use families::{CographExpr, Family, IntervalModel, Rational};
pub use ops::{attach_edge_triangles, complement, subdivide};

pub type VertexId = usize;

/// A simple graph on vertices `0..n`.
///
/// Undirected edges are stored once in each endpoint's neighbor set. Directed
/// graphs keep separate out- and in-neighbor sets; `(u, v)` and `(v, u)` may
/// both be present.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    directed: bool,
    out: Vec<BTreeSet<VertexId>>,
    inc: Vec<BTreeSet<VertexId>>,
    labels: BTreeMap<VertexId, String>,
}

impl Graph {
    pub fn new(n: usize, directed: bool) -> Self {
        Graph {
            directed,
            out: vec![BTreeSet::new(); n],
            inc: if directed { vec![BTreeSet::new(); n] } else { Vec::new() },
            labels: BTreeMap::new(),
        }
    }

    pub fn undirected(n: usize) -> Self {
        Self::new(n, false)
    }

    pub fn directed(n: usize) -> Self {
        Self::new(n, true)
    }

    pub fn from_edges(n: usize, directed: bool, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Self::new(n, directed);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn m(&self) -> usize {
        let total: usize = self.out.iter().map(BTreeSet::len).sum();
        if self.directed {
            total
        } else {
            total / 2
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.out.push(BTreeSet::new());
        if self.directed {
            self.inc.push(BTreeSet::new());
        }
        self.out.len() - 1
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("vertex {v} out of range for graph with {} vertices", self.n())))
        }
    }

    /// Adds an edge, returning `false` if it was already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidParameter(format!("self loop at vertex {u}")));
        }
        let fresh = self.out[u].insert(v);
        if self.directed {
            self.inc[v].insert(u);
        } else {
            self.out[v].insert(u);
        }
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        let present = self.out[u].remove(&v);
        if self.directed {
            self.inc[v].remove(&u);
        } else {
            self.out[v].remove(&u);
        }
        present
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && self.out[u].contains(&v)
    }

    /// Neighbors of `v` (out-neighbors for directed graphs).
    pub fn neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.out[v]
    }

    /// In-neighbors of `v`; for undirected graphs, the neighbor set.
    pub fn predecessors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        if self.directed {
            &self.inc[v]
        } else {
            &self.out[v]
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        if self.directed {
            self.out[v].len() + self.inc[v].len()
        } else {
            self.out[v].len()
        }
    }

    /// Edges in sorted order; undirected edges are reported once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let directed = self.directed;
        self.out
            .iter()
            .enumerate()
            .flat_map(move |(u, nbrs)| nbrs.iter().copied().filter(move |&v| directed || u < v).map(move |v| (u, v)))
    }

    pub fn edge_set(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges().collect()
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<VertexId, String> {
        &self.labels
    }

    pub fn set_label(&mut self, v: VertexId, name: impl Into<String>) {
        self.labels.insert(v, name.into());
    }

    /// The underlying undirected graph (identity for undirected input).
    pub fn underlying(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut g = Graph::undirected(self.n());
        for (u, v) in self.edges() {
            g.out[u].insert(v);
            g.out[v].insert(u);
        }
        g.labels = self.labels.clone();
        g
    }

    /// Removes vertex `v`, shifting higher ids down by one.
    pub fn without_vertex(&self, v: VertexId) -> Result<Graph> {
        self.check_vertex(v)?;
        let shift = |x: VertexId| if x > v { x - 1 } else { x };
        let mut g = Graph::new(self.n() - 1, self.directed);
        for (a, b) in self.edges() {
            if a != v && b != v {
                g.add_edge(shift(a), shift(b))?;
            }
        }
        for (&x, name) in &self.labels {
            if x != v {
                g.labels.insert(shift(x), name.clone());
            }
        }
        Ok(g)
    }

    /// True when the underlying graph is bipartite.
    pub fn is_bipartite(&self) -> bool {
        let g = self.underlying();
        let mut color = vec![None; g.n()];
        for s in g.vertices() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for &w in g.neighbors(u) {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            stack.push(w);
                        }
                        Some(cw) if cw == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let g = self.underlying();
        let mut seen = vec![false; g.n()];
        let mut out = Vec::new();
        for s in g.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in g.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Parses the edge-list document format.
    ///
    /// ```text
    /// 3 2 undirected
    /// # label 0 main
    /// 0 1
    /// 1 2
    /// ```
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (hline, header) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .ok_or(Error::Parse { line: 1, message: "missing header".into() })?;
        let bad_header = || Error::Parse {
            line: hline,
            message: format!("malformed header {header:?}, expected `n m directed|undirected`"),
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(bad_header());
        }
        let n: usize = fields[0].parse().map_err(|_| bad_header())?;
        let m: usize = fields[1].parse().map_err(|_| bad_header())?;
        let directed = match fields[2] {
            "directed" => true,
            "undirected" => false,
            _ => return Err(bad_header()),
        };

        let mut g = Graph::new(n, directed);
        let mut edge_lines = 0;
        for (line, l) in lines {
            if l.is_empty() {
                continue;
            }
            if let Some(comment) = l.strip_prefix('#') {
                let mut parts = comment.trim_start().splitn(3, ' ');
                if parts.next() == Some("label") {
                    let v = parts
                        .next()
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse { line, message: "malformed label line".into() })?;
                    if v >= n {
                        return Err(Error::Parse { line, message: format!("label for out-of-range vertex {v}") });
                    }
                    g.set_label(v, parts.next().unwrap_or("").trim());
                }
                continue;
            }
            let ids: Vec<&str> = l.split_whitespace().collect();
            let parse_id = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::Parse { line, message: format!("bad vertex id {s:?}") })
            };
            if ids.len() != 2 {
                return Err(Error::Parse { line, message: format!("expected `u v`, got {l:?}") });
            }
            let (u, v) = (parse_id(ids[0])?, parse_id(ids[1])?);
            if u >= n || v >= n {
                return Err(Error::Parse { line, message: format!("vertex id out of range (n = {n})") });
            }
            if u == v {
                return Err(Error::Parse { line, message: format!("self loop at vertex {u}") });
            }
            g.add_edge(u, v)?;
            edge_lines += 1;
        }
        if edge_lines != m {
            return Err(Error::Parse {
                line: hline,
                message: format!("header announces {m} edges but {edge_lines} edge lines follow"),
            });
        }
        Ok(g)
    }

    /// Serializes to the edge-list format; `parse(g.to_edge_list()) == g`.
    pub fn to_edge_list(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.directed { "directed" } else { "undirected" };
        writeln!(f, "{} {} {}", self.n(), self.m(), kind)?;
        for (v, name) in &self.labels {
            writeln!(f, "# label {v} {name}")?;
        }
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse(s)
    }
}
