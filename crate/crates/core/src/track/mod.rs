//! Track networks: the combinatorial form of a confluent drawing.
//!
//! Nodes are terminals (graph vertices) or junctions; segments join nodes;
//! each junction lists the segment pairs a smooth curve may pass through.
//! Terminals only start or end a curve.

mod constructions;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::reduction::{JunctionKind, ReductionResult, Side, Status};

pub use constructions::{build_cocycle_track, build_cograph_track, build_cotree_track, build_interval_track};

pub type NodeId = usize;
pub type SegmentId = usize;

/// How a junction is drawn; transitions are always explicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JunctionStyle {
    /// Traffic circle joining every incident segment.
    Circle,
    Biclique,
    Directed,
    /// Generic switch used by the closed-form constructions.
    Switch,
}

impl From<JunctionKind> for JunctionStyle {
    fn from(k: JunctionKind) -> Self {
        match k {
            JunctionKind::Clique => JunctionStyle::Circle,
            JunctionKind::Biclique => JunctionStyle::Biclique,
            JunctionKind::Directed => JunctionStyle::Directed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Terminal(VertexId),
    Junction(JunctionStyle),
}

/// A segment between two nodes; runs from `a` to `b` in directed networks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: NodeId,
    pub b: NodeId,
}

impl Segment {
    pub fn other(&self, x: NodeId) -> NodeId {
        if self.a == x {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackNetwork {
    directed: bool,
    nodes: Vec<Node>,
    segments: Vec<Segment>,
    incident: Vec<Vec<SegmentId>>,
    /// Per node: unordered pairs `(min, max)`, or `(in, out)` when directed.
    transitions: Vec<BTreeSet<(SegmentId, SegmentId)>>,
}

impl TrackNetwork {
    pub fn new(directed: bool) -> Self {
        TrackNetwork {
            directed,
            nodes: Vec::new(),
            segments: Vec::new(),
            incident: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn add_node(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.incident.push(Vec::new());
        self.transitions.push(BTreeSet::new());
        self.nodes.len() - 1
    }

    pub fn add_terminal(&mut self, v: VertexId) -> NodeId {
        self.add_node(Node::Terminal(v))
    }

    pub fn add_junction(&mut self, style: JunctionStyle) -> NodeId {
        self.add_node(Node::Junction(style))
    }

    pub fn add_segment(&mut self, a: NodeId, b: NodeId) -> SegmentId {
        assert!(a != b && a < self.nodes.len() && b < self.nodes.len(), "bad segment ({a}, {b})");
        self.segments.push(Segment { a, b });
        let id = self.segments.len() - 1;
        self.incident[a].push(id);
        self.incident[b].push(id);
        id
    }

    /// Lets a curve pass from `s` to `t` at `node` (in either direction
    /// unless the network is directed).
    pub fn allow(&mut self, node: NodeId, s: SegmentId, t: SegmentId) {
        let pair = if self.directed { (s, t) } else { (s.min(t), s.max(t)) };
        self.transitions[node].insert(pair);
    }

    /// Renames the vertex of every terminal.
    pub fn relabel_terminals(&mut self, f: impl Fn(VertexId) -> VertexId) {
        for node in &mut self.nodes {
            if let Node::Terminal(v) = node {
                *v = f(*v);
            }
        }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn incident(&self, node: NodeId) -> &[SegmentId] {
        &self.incident[node]
    }

    pub fn transitions(&self, node: NodeId) -> &BTreeSet<(SegmentId, SegmentId)> {
        &self.transitions[node]
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.iter().map(BTreeSet::len).sum()
    }

    pub fn junction_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Junction(_))).count()
    }

    pub fn terminals(&self) -> impl Iterator<Item = (NodeId, VertexId)> + '_ {
        self.nodes.iter().enumerate().filter_map(|(i, n)| match n {
            Node::Terminal(v) => Some((i, *v)),
            Node::Junction(_) => None,
        })
    }

    fn passes(&self, node: NodeId, s: SegmentId, t: SegmentId) -> bool {
        if s == t || matches!(self.nodes[node], Node::Terminal(_)) {
            return false;
        }
        if self.directed {
            self.segments[s].b == node && self.segments[t].a == node && self.transitions[node].contains(&(s, t))
        } else {
            self.transitions[node].contains(&(s.min(t), s.max(t)))
        }
    }

    /// Structural checks: simple underlying graph, distinct terminal
    /// vertices, transitions between distinct incident segments at junctions.
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for (i, s) in self.segments.iter().enumerate() {
            if s.a == s.b || s.a >= self.nodes.len() || s.b >= self.nodes.len() {
                return Err(Error::InvalidParameter(format!("segment {i} is malformed")));
            }
            if !seen.insert((s.a.min(s.b), s.a.max(s.b))) {
                return Err(Error::InvalidParameter(format!("segment {i} duplicates another")));
            }
        }
        let mut vertices = HashSet::new();
        for (_, v) in self.terminals() {
            if !vertices.insert(v) {
                return Err(Error::InvalidParameter(format!("vertex {v} has two terminals")));
            }
        }
        for (node, pairs) in self.transitions.iter().enumerate() {
            if !pairs.is_empty() && matches!(self.nodes[node], Node::Terminal(_)) {
                return Err(Error::InvalidParameter(format!("terminal node {node} has transitions")));
            }
            for &(s, t) in pairs {
                let ok = s != t
                    && s < self.segments.len()
                    && t < self.segments.len()
                    && self.incident[node].contains(&s)
                    && self.incident[node].contains(&t)
                    && (!self.directed || (self.segments[s].b == node && self.segments[t].a == node));
                if !ok {
                    return Err(Error::InvalidParameter(format!("transition ({s}, {t}) at node {node} is invalid")));
                }
            }
        }
        Ok(())
    }

    /// Nodes and segments as a graph, undirected.
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::undirected(self.nodes.len());
        for s in &self.segments {
            g.add_edge(s.a, s.b).expect("segments join distinct nodes");
        }
        g
    }

    /// A dart is a segment traversed into its head node.
    fn start_darts(&self, node: NodeId) -> Vec<(SegmentId, NodeId)> {
        self.incident[node]
            .iter()
            .filter(|&&s| !self.directed || self.segments[s].a == node)
            .map(|&s| (s, self.segments[s].other(node)))
            .collect()
    }

    fn next_darts(&self, (s, x): (SegmentId, NodeId)) -> impl Iterator<Item = (SegmentId, NodeId)> + '_ {
        self.incident[x].iter().filter(move |&&t| self.passes(x, s, t)).map(move |&t| (t, self.segments[t].other(x)))
    }

    /// Darts from which `target` can be reached when segment reuse is ignored.
    fn backward_reachable(&self, target: NodeId) -> HashSet<(SegmentId, NodeId)> {
        let mut good = HashSet::new();
        let mut queue = VecDeque::new();
        for &s in &self.incident[target] {
            if !self.directed || self.segments[s].b == target {
                good.insert((s, target));
                queue.push_back((s, target));
            }
        }
        while let Some((t, y)) = queue.pop_front() {
            let x = self.segments[t].other(y);
            for &s in &self.incident[x] {
                let prev = (s, x);
                if self.passes(x, s, t) && good.insert(prev) {
                    queue.push_back(prev);
                }
            }
        }
        good
    }

    fn reaches(
        &self,
        dart: (SegmentId, NodeId),
        target: NodeId,
        good: &HashSet<(SegmentId, NodeId)>,
        used: &mut Vec<bool>,
    ) -> bool {
        if dart.1 == target {
            return true;
        }
        let candidates: Vec<_> = self.next_darts(dart).filter(|d| good.contains(d) && !used[d.0]).collect();
        for d in candidates {
            used[d.0] = true;
            let found = self.reaches(d, target, good, used);
            used[d.0] = false;
            if found {
                return true;
            }
        }
        false
    }

    /// Vertex pairs joined by a smooth curve: a walk from one terminal to
    /// another that passes only through allowed transitions and never uses a
    /// segment twice. Pairs are `(min, max)` unless the network is directed.
    pub fn realized_edges(&self) -> BTreeSet<(VertexId, VertexId)> {
        let terminals: BTreeMap<NodeId, VertexId> = self.terminals().collect();
        let mut out = BTreeSet::new();
        let mut cache: HashMap<NodeId, HashSet<(SegmentId, NodeId)>> = HashMap::new();
        for (&src, &u) in &terminals {
            // candidate targets by relaxed search
            let mut seen = HashSet::new();
            let mut queue: VecDeque<_> = self.start_darts(src).into_iter().collect();
            seen.extend(queue.iter().copied());
            let mut hits = BTreeSet::new();
            while let Some(d) = queue.pop_front() {
                if terminals.contains_key(&d.1) {
                    if d.1 != src {
                        hits.insert(d.1);
                    }
                    continue;
                }
                for e in self.next_darts(d) {
                    if seen.insert(e) {
                        queue.push_back(e);
                    }
                }
            }
            for dst in hits {
                let v = terminals[&dst];
                let pair = if self.directed { (u, v) } else { (u.min(v), u.max(v)) };
                if out.contains(&pair) {
                    continue;
                }
                let good = cache.entry(dst).or_insert_with(|| self.backward_reachable(dst));
                let mut used = vec![false; self.segments.len()];
                let found = self.start_darts(src).into_iter().filter(|d| good.contains(d)).any(|d| {
                    used[d.0] = true;
                    let r = self.reaches(d, dst, good, &mut used);
                    used[d.0] = false;
                    r
                });
                if found {
                    out.insert(pair);
                }
            }
        }
        out
    }

    /// Realized pairs as a graph on `n` vertices.
    pub fn realized_graph(&self, n: usize) -> Result<Graph> {
        let mut g = Graph::new(n, self.directed);
        for (u, v) in self.realized_edges() {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&NetworkJson::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: NetworkJson = serde_json::from_str(text)?;
        j.try_into()
    }
}

/// Builds the network of a successful reduction: a terminal per original
/// vertex, a junction per step, a segment per edge of the reduced graph.
pub fn from_reduction(r: &ReductionResult) -> Result<TrackNetwork> {
    if r.status != Status::Planar {
        return Err(Error::ReductionFailed);
    }
    let g = &r.reduced;
    let n0 = r.original.n();
    let junctions = r.junctions();
    let mut t = TrackNetwork::new(g.is_directed());
    for v in g.vertices() {
        match junctions.get(v) {
            None => t.add_terminal(v),
            Some(state) => t.add_junction(state.kind.into()),
        };
    }
    let mut seg: HashMap<(VertexId, VertexId), SegmentId> = HashMap::new();
    for (u, v) in g.edges() {
        let id = t.add_segment(u, v);
        seg.insert((u, v), id);
        if !g.is_directed() {
            seg.insert((v, u), id);
        }
    }
    for (j, state) in junctions.iter() {
        let side = |p: &VertexId| -> Result<Side> {
            state.sides.get(p).copied().ok_or_else(|| Error::InconsistentLog {
                step: j - n0,
                message: format!("junction {j} has no side for {p}"),
            })
        };
        if g.is_directed() {
            for p in g.predecessors(j) {
                for q in g.neighbors(j) {
                    if p != q && state.passes(side(p)?, side(q)?) {
                        t.allow(j, seg[&(*p, j)], seg[&(j, *q)]);
                    }
                }
            }
        } else {
            let nbrs: Vec<VertexId> = g.neighbors(j).iter().copied().collect();
            for (i, p) in nbrs.iter().enumerate() {
                for q in &nbrs[i + 1..] {
                    let (sp, sq) = (side(p)?, side(q)?);
                    if state.passes(sp, sq) || state.passes(sq, sp) {
                        t.allow(j, seg[&(*p, j)], seg[&(*q, j)]);
                    }
                }
            }
        }
    }
    Ok(t)
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    id: NodeId,
    #[serde(rename = "type")]
    ty: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    kind: Option<JunctionStyle>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    vertex: Option<VertexId>,
}

#[derive(Serialize, Deserialize)]
struct SegmentJson {
    id: SegmentId,
    a: NodeId,
    b: NodeId,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    directed: bool,
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    nodes: Vec<NodeJson>,
    segments: Vec<SegmentJson>,
    transitions: BTreeMap<String, Vec<(SegmentId, SegmentId)>>,
}

impl From<&TrackNetwork> for NetworkJson {
    fn from(t: &TrackNetwork) -> Self {
        let nodes = t
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| match *n {
                Node::Terminal(v) => NodeJson { id, ty: "terminal".into(), kind: None, vertex: Some(v) },
                Node::Junction(s) => NodeJson { id, ty: "junction".into(), kind: Some(s), vertex: None },
            })
            .collect();
        let segments = t
            .segments
            .iter()
            .enumerate()
            .map(|(id, s)| SegmentJson { id, a: s.a, b: s.b, directed: t.directed })
            .collect();
        let transitions = t
            .transitions
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(|(i, p)| (i.to_string(), p.iter().copied().collect()))
            .collect();
        NetworkJson { nodes, segments, transitions }
    }
}

impl TryFrom<NetworkJson> for TrackNetwork {
    type Error = Error;

    fn try_from(j: NetworkJson) -> Result<Self> {
        let directed = j.segments.iter().any(|s| s.directed);
        let mut t = TrackNetwork::new(directed);
        for (i, n) in j.nodes.iter().enumerate() {
            if n.id != i {
                return Err(Error::InvalidParameter(format!("node ids must be 0..n, got {}", n.id)));
            }
            let node = match (n.ty.as_str(), n.vertex, n.kind) {
                ("terminal", Some(v), _) => Node::Terminal(v),
                ("junction", _, Some(k)) => Node::Junction(k),
                _ => return Err(Error::InvalidParameter(format!("node {i} is malformed"))),
            };
            t.add_node(node);
        }
        for (i, s) in j.segments.iter().enumerate() {
            if s.id != i || s.a == s.b || s.a >= t.nodes.len() || s.b >= t.nodes.len() {
                return Err(Error::InvalidParameter(format!("segment {i} is malformed")));
            }
            t.add_segment(s.a, s.b);
        }
        for (key, pairs) in j.transitions {
            let node: NodeId =
                key.parse().map_err(|_| Error::InvalidParameter(format!("bad transition node {key}")))?;
            if node >= t.nodes.len() {
                return Err(Error::InvalidParameter(format!("bad transition node {key}")));
            }
            for (s, u) in pairs {
                t.allow(node, s, u);
            }
        }
        t.validate()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::planarity::is_planar;
    use crate::reduction::{reduce_directed, reduce_undirected};

    fn edges(g: &Graph) -> BTreeSet<(VertexId, VertexId)> {
        g.edge_set()
    }

    #[test]
    fn k5_traffic_circle() {
        let g = Family::Complete(5).generate().unwrap();
        let t = from_reduction(&reduce_undirected(&g).unwrap()).unwrap();
        assert_eq!(t.junction_count(), 1);
        assert_eq!(t.segments().len(), 5);
        assert_eq!(t.transition_count(), 10);
        assert_eq!(t.realized_edges(), edges(&g));
        assert!(is_planar(&t.underlying()));
    }

    #[test]
    fn k33_cross_only() {
        let g = Family::CompleteBipartite(3, 3).generate().unwrap();
        let t = from_reduction(&reduce_undirected(&g).unwrap()).unwrap();
        assert_eq!((t.junction_count(), t.segments().len(), t.transition_count()), (1, 6, 9));
        assert_eq!(t.realized_edges(), edges(&g));
    }

    #[test]
    fn planar_graph_realizes_itself() {
        let g = Family::Path(5).generate().unwrap();
        let t = from_reduction(&reduce_undirected(&g).unwrap()).unwrap();
        assert_eq!(t.segments().len(), 4);
        assert_eq!(t.realized_edges(), edges(&g));
    }

    #[test]
    fn single_segment() {
        let mut t = TrackNetwork::new(false);
        let a = t.add_terminal(3);
        let b = t.add_terminal(7);
        t.add_segment(a, b);
        assert_eq!(t.realized_edges(), BTreeSet::from([(3, 7)]));
    }

    #[test]
    fn no_segment_reuse() {
        // A loop at a junction: the only route from 0 back out to 1 would
        // traverse the stem twice.
        let mut t = TrackNetwork::new(false);
        let a = t.add_terminal(0);
        let b = t.add_terminal(1);
        let j = t.add_junction(JunctionStyle::Switch);
        let k = t.add_junction(JunctionStyle::Switch);
        let s0 = t.add_segment(a, j);
        let stem = t.add_segment(j, k);
        let s1 = t.add_segment(b, j);
        let _ = s1;
        t.allow(j, s0, stem);
        assert!(t.realized_edges().is_empty());
    }

    #[test]
    fn failed_reduction_rejected() {
        let r = reduce_undirected(&Family::PetersenMinusVertex.generate().unwrap()).unwrap();
        assert!(matches!(from_reduction(&r), Err(Error::ReductionFailed)));
    }

    #[test]
    fn directed_k33() {
        let mut arcs = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                arcs.push((a, b));
            }
        }
        let d = Graph::from_edges(6, true, &arcs).unwrap();
        let t = from_reduction(&reduce_directed(&d).unwrap()).unwrap();
        assert_eq!(t.realized_edges(), edges(&d));
    }

    #[test]
    fn random_reductions_realize_original() {
        for seed in 0..30 {
            let g = Family::Random { n: 10, p: 0.55, seed }.generate().unwrap();
            let r = reduce_undirected(&g).unwrap();
            if r.status == Status::Planar {
                let t = from_reduction(&r).unwrap();
                t.validate().unwrap();
                assert_eq!(t.realized_edges(), edges(&g), "seed {seed}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = Family::CompleteBipartite(3, 4).generate().unwrap();
        let t = from_reduction(&reduce_undirected(&g).unwrap()).unwrap();
        let back = TrackNetwork::from_json(&t.to_json().unwrap()).unwrap();
        assert_eq!(back, t);
    }
}
