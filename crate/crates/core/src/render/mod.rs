//! Geometry and SVG for track networks.

mod svg;

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::planarity::Embedding;
use crate::track::{JunctionStyle, Node, TrackNetwork};

pub use svg::emit_svg;

pub type Point = (f64, f64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Convex barycentric placement with the largest face fixed on a circle.
    Barycentric,
    /// Stress majorization on graph distances; crossings are possible.
    Stress,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Barycentric => "barycentric",
            Method::Stress => "stress",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeGlyph {
    pub node: Node,
    pub pos: Point,
    pub label: Option<String>,
    /// Direction along which merging segments meet, for junctions.
    pub axis: Point,
}

/// A cubic curve for one segment; `points[0]` and `points[3]` are the
/// positions of its endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub id: usize,
    pub points: [Point; 4],
    pub directed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub nodes: Vec<NodeGlyph>,
    pub curves: Vec<Curve>,
    pub width: f64,
    pub height: f64,
    pub method: Method,
}

impl Layout {
    /// Uses vertex names from `g` as terminal labels where present.
    pub fn set_labels(&mut self, g: &Graph) {
        for glyph in &mut self.nodes {
            if let Node::Terminal(v) = glyph.node {
                if let Some(name) = g.label(v) {
                    glyph.label = Some(name.to_string());
                }
            }
        }
    }

    /// Straight segments between node positions.
    pub fn skeleton(&self) -> Vec<(Point, Point)> {
        self.curves.iter().map(|c| (c.points[0], c.points[3])).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub junction_radius: f64,
    pub terminal_radius: f64,
    pub stroke_width: f64,
    pub arrowheads: bool,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 600.0,
            height: 600.0,
            margin: 40.0,
            junction_radius: 7.0,
            terminal_radius: 9.0,
            stroke_width: 1.5,
            arrowheads: true,
            labels: true,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<()> {
        let dims = [self.width, self.height, self.junction_radius, self.terminal_radius, self.stroke_width];
        if dims.iter().any(|d| !(d.is_finite() && *d > 0.0)) || self.margin.is_nan() || self.margin < 0.0 {
            return Err(Error::InvalidParameter("render dimensions must be positive".into()));
        }
        if 2.0 * self.margin >= self.width.min(self.height) {
            return Err(Error::InvalidParameter("margin leaves no drawing area".into()));
        }
        Ok(())
    }
}

/// Places the nodes of `t` using the embedding `e` of its underlying graph.
pub fn layout(t: &TrackNetwork, e: &Embedding, o: &RenderOptions) -> Result<Layout> {
    o.validate()?;
    let g = t.underlying();
    if !e.matches(&g) {
        return Err(Error::Mismatch("embedding does not belong to the network".into()));
    }
    let (raw, method) = match barycentric(&g, e) {
        Some(p) => (p, Method::Barycentric),
        None => (stress(&g), Method::Stress),
    };
    let pos = separate(fit(&raw, o), o);
    let axes: Vec<Point> = (0..g.n()).map(|x| junction_axis(t, x, &pos)).collect();
    let curves = t
        .segments()
        .iter()
        .enumerate()
        .map(|(id, s)| {
            let (p, q) = (pos[s.a], pos[s.b]);
            let c1 = control(t, s.a, p, q, axes[s.a]);
            let c2 = control(t, s.b, q, p, axes[s.b]);
            Curve { id, points: [p, c1, c2, q], directed: t.is_directed() }
        })
        .collect();
    let nodes = t
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &node)| NodeGlyph {
            node,
            pos: pos[i],
            label: match node {
                Node::Terminal(v) => Some(v.to_string()),
                Node::Junction(_) => None,
            },
            axis: axes[i],
        })
        .collect();
    Ok(Layout { nodes, curves, width: o.width, height: o.height, method })
}

fn sub(a: Point, b: Point) -> Point {
    (a.0 - b.0, a.1 - b.1)
}

fn norm(a: Point) -> f64 {
    a.0.hypot(a.1)
}

fn unit(a: Point) -> Point {
    let l = norm(a);
    if l < 1e-12 {
        (1.0, 0.0)
    } else {
        (a.0 / l, a.1 / l)
    }
}

/// Axis of a merging junction: from its first-side neighbors toward its
/// second-side neighbors for bicliques, otherwise the principal direction
/// of its incident segments.
fn junction_axis(t: &TrackNetwork, x: usize, pos: &[Point]) -> Point {
    if matches!(t.nodes()[x], Node::Terminal(_) | Node::Junction(JunctionStyle::Circle)) {
        return (1.0, 0.0);
    }
    // Doubling angles folds opposite directions together.
    let (mut c, mut s) = (0.0, 0.0);
    for &seg in t.incident(x) {
        let d = unit(sub(pos[t.segments()[seg].other(x)], pos[x]));
        let a = d.1.atan2(d.0);
        c += (2.0 * a).cos();
        s += (2.0 * a).sin();
    }
    let a = s.atan2(c) / 2.0;
    (a.cos(), a.sin())
}

fn control(t: &TrackNetwork, x: usize, p: Point, q: Point, axis: Point) -> Point {
    let d = sub(q, p);
    let len = norm(d);
    match t.nodes()[x] {
        Node::Junction(JunctionStyle::Circle) | Node::Terminal(_) => (p.0 + d.0 / 3.0, p.1 + d.1 / 3.0),
        Node::Junction(_) => {
            let sign = if d.0 * axis.0 + d.1 * axis.1 >= 0.0 { 1.0 } else { -1.0 };
            (p.0 + sign * axis.0 * len * 0.35, p.1 + sign * axis.1 * len * 0.35)
        }
    }
}

fn is_triconnected(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 {
        return false;
    }
    let connected_without = |a: usize, b: usize| {
        let start = (0..n).find(|&v| v != a && v != b).unwrap();
        let mut seen = vec![false; n];
        seen[a] = true;
        seen[b] = true;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n - if a == b { 1 } else { 2 }
    };
    (0..n).all(|a| (a..n).all(|b| connected_without(a, b)))
}

/// Tutte's barycentric embedding, for 3-connected graphs only.
fn barycentric(g: &Graph, e: &Embedding) -> Option<Vec<Point>> {
    if !is_triconnected(g) {
        return None;
    }
    let mut outer: Vec<VertexId> = Vec::new();
    for v in e.face_vertices(e.outer_face()) {
        if !outer.contains(&v) {
            outer.push(v);
        }
    }
    if outer.len() < 3 {
        return None;
    }
    let n = g.n();
    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    let k = outer.len() as f64;
    for (i, &v) in outer.iter().enumerate() {
        let a = std::f64::consts::TAU * i as f64 / k;
        pos[v] = (a.cos(), a.sin());
        fixed[v] = true;
    }
    for _ in 0..200_000 {
        let mut change: f64 = 0.0;
        for v in 0..n {
            if fixed[v] {
                continue;
            }
            let d = g.degree(v) as f64;
            let (sx, sy) = g.neighbors(v).iter().fold((0.0, 0.0), |(x, y), &w| (x + pos[w].0, y + pos[w].1));
            let next = (sx / d, sy / d);
            change = change.max(norm(sub(next, pos[v])));
            pos[v] = next;
        }
        if change < 1e-12 {
            break;
        }
    }
    Some(pos)
}

fn distances(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (s, row) in d.iter_mut().enumerate() {
        row[s] = 0.0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if row[w].is_infinite() {
                    row[w] = row[u] + 1.0;
                    queue.push_back(w);
                }
            }
        }
    }
    let far = d.iter().flatten().filter(|x| x.is_finite()).fold(0.0f64, |a, &b| a.max(b)) + 1.0;
    for row in &mut d {
        for x in row.iter_mut() {
            if x.is_infinite() {
                *x = far;
            }
        }
    }
    d
}

/// Stress majorization from a circular start.
fn stress(g: &Graph) -> Vec<Point> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let d = distances(g);
    let r = n as f64 / std::f64::consts::TAU;
    let mut pos: Vec<Point> = (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            (r * a.cos(), r * a.sin())
        })
        .collect();
    for _ in 0..300 {
        for i in 0..n {
            let (mut nx, mut ny, mut wsum) = (0.0, 0.0, 0.0);
            for j in 0..n {
                if i == j {
                    continue;
                }
                let w = 1.0 / (d[i][j] * d[i][j]);
                let diff = sub(pos[i], pos[j]);
                let dist = norm(diff).max(1e-9);
                nx += w * (pos[j].0 + d[i][j] * diff.0 / dist);
                ny += w * (pos[j].1 + d[i][j] * diff.1 / dist);
                wsum += w;
            }
            pos[i] = (nx / wsum, ny / wsum);
        }
    }
    pos
}

/// Scales positions into the canvas, preserving aspect ratio.
fn fit(raw: &[Point], o: &RenderOptions) -> Vec<Point> {
    if raw.is_empty() {
        return Vec::new();
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in raw {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let (w, h) = (o.width - 2.0 * o.margin, o.height - 2.0 * o.margin);
    let span = (x1 - x0).max(y1 - y0);
    let scale = if span < 1e-12 { 0.0 } else { w.min(h) / span };
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    raw.iter().map(|&(x, y)| (o.width / 2.0 + (x - cx) * scale, o.height / 2.0 + (y - cy) * scale)).collect()
}

/// Nudges apart nodes closer than a millionth of the canvas diagonal.
fn separate(mut pos: Vec<Point>, o: &RenderOptions) -> Vec<Point> {
    let eps = 1e-6 * o.width.hypot(o.height);
    let step = eps.max(1e-3) * 2.0;
    for i in 0..pos.len() {
        let mut k = 1.0;
        while (0..i).any(|j| norm(sub(pos[i], pos[j])) < eps.max(1e-3)) {
            pos[i].0 += step * k;
            pos[i].1 += step * k * 0.5;
            k += 1.0;
        }
    }
    pos
}

/// Terminal positions keyed by vertex.
pub fn terminal_positions(l: &Layout) -> BTreeMap<VertexId, Point> {
    l.nodes
        .iter()
        .filter_map(|g| match g.node {
            Node::Terminal(v) => Some((v, g.pos)),
            Node::Junction(_) => None,
        })
        .collect()
}
