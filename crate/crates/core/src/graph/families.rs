use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// Exact rational number used for interval endpoints.
#[derive(Clone, Copy, Debug, Eq, Serialize, Deserialize)]
pub struct Rational {
    num: i64,
    den: u64,
}

impl Rational {
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(Rational { num, den })
    }

    pub fn integer(v: i64) -> Self {
        Rational { num: v, den: 1 }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad rational {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => Rational::new(p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None => Ok(Rational::integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

/// A set of closed intervals; vertex `i` of the interval graph is interval `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalModel {
    intervals: Vec<(Rational, Rational)>,
}

impl IntervalModel {
    pub fn new(intervals: Vec<(Rational, Rational)>) -> Result<Self> {
        if let Some((a, b)) = intervals.iter().find(|(a, b)| a > b) {
            return Err(Error::InvalidParameter(format!("interval [{a}, {b}] has a > b")));
        }
        Ok(IntervalModel { intervals })
    }

    pub fn from_integers(intervals: &[(i64, i64)]) -> Result<Self> {
        Self::new(intervals.iter().map(|&(a, b)| (a.into(), b.into())).collect())
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Closed intervals intersect iff `a_j <= b_i` and `a_i <= b_j`.
    pub fn intersects(&self, i: usize, j: usize) -> bool {
        let (ai, bi) = self.intervals[i];
        let (aj, bj) = self.intervals[j];
        aj <= bi && ai <= bj
    }

    /// Endpoint ranks: every endpoint gets a distinct rank in `0..2n`, left
    /// endpoints ordered before right endpoints of equal value so that touching
    /// closed intervals overlap in rank space.
    pub fn rank_spans(&self) -> Vec<(usize, usize)> {
        let mut events: Vec<(Rational, u8, usize)> = Vec::with_capacity(2 * self.len());
        for (i, &(a, b)) in self.intervals.iter().enumerate() {
            events.push((a, 0, i));
            events.push((b, 1, i));
        }
        events.sort();
        let mut spans = vec![(0, 0); self.len()];
        for (rank, &(_, side, i)) in events.iter().enumerate() {
            if side == 0 {
                spans[i].0 = rank;
            } else {
                spans[i].1 = rank;
            }
        }
        spans
    }

    /// One interval per non-empty line, `a b` with integer or `p/q` endpoints.
    pub fn parse(text: &str) -> Result<Self> {
        let mut intervals = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Parse { line: i + 1, message: "expected `a b`".into() });
            }
            let a = parts[0].parse().map_err(|e: Error| Error::Parse { line: i + 1, message: e.to_string() })?;
            let b = parts[1].parse().map_err(|e: Error| Error::Parse { line: i + 1, message: e.to_string() })?;
            intervals.push((a, b));
        }
        Self::new(intervals)
    }
}

/// Expression tree for a cograph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CographExpr {
    Leaf(String),
    Union(Vec<CographExpr>),
    Complement(Box<CographExpr>),
}

impl CographExpr {
    pub fn leaf(name: impl Into<String>) -> Self {
        CographExpr::Leaf(name.into())
    }

    pub fn union(children: Vec<CographExpr>) -> Self {
        CographExpr::Union(children)
    }

    pub fn complement(child: CographExpr) -> Self {
        CographExpr::Complement(Box::new(child))
    }

    /// Complement of a union, the join.
    pub fn co_union(children: Vec<CographExpr>) -> Self {
        Self::complement(Self::union(children))
    }

    /// Leaf names in left-to-right order; leaf `i` becomes vertex `i`.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            CographExpr::Leaf(name) => out.push(name),
            CographExpr::Union(cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
            CographExpr::Complement(c) => c.collect_leaves(out),
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn walk(e: &CographExpr) -> Result<()> {
            match e {
                CographExpr::Leaf(name) if name.is_empty() => Err(Error::InvalidParameter("empty leaf name".into())),
                CographExpr::Leaf(_) => Ok(()),
                CographExpr::Union(cs) if cs.len() < 2 => {
                    Err(Error::InvalidParameter("union needs at least two children".into()))
                }
                CographExpr::Union(cs) => cs.iter().try_for_each(walk),
                CographExpr::Complement(c) => walk(c),
            }
        }
        walk(self)?;
        let leaves = self.leaves();
        let distinct: BTreeSet<_> = leaves.iter().collect();
        if distinct.len() != leaves.len() {
            return Err(Error::InvalidParameter("duplicate leaf name".into()));
        }
        Ok(())
    }

    /// Drops complement pairs, so no complement directly wraps another.
    pub fn normalized(&self) -> CographExpr {
        match self {
            CographExpr::Leaf(_) => self.clone(),
            CographExpr::Union(cs) => CographExpr::Union(cs.iter().map(Self::normalized).collect()),
            CographExpr::Complement(inner) => match inner.normalized() {
                CographExpr::Complement(x) => *x,
                other => CographExpr::complement(other),
            },
        }
    }

    /// Parses `u(a, b)`, `c(x)`, and `cu(a, b)` (complement of union).
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = ExprParser { s: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        e.validate()?;
        Ok(e)
    }
}

impl fmt::Display for CographExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CographExpr::Leaf(name) => write!(f, "{name}"),
            CographExpr::Complement(inner) => match inner.as_ref() {
                CographExpr::Union(cs) => write_call(f, "cu", cs),
                other => write!(f, "c({other})"),
            },
            CographExpr::Union(cs) => write_call(f, "u", cs),
        }
    }
}

fn write_call(f: &mut fmt::Formatter<'_>, head: &str, cs: &[CographExpr]) -> fmt::Result {
    write!(f, "{head}(")?;
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 1, message: format!("{msg} at column {}", self.pos + 1) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected identifier"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CographExpr> {
        let name = self.ident()?;
        if !self.eat(b'(') {
            return Ok(CographExpr::Leaf(name));
        }
        let mut args = vec![self.expr()?];
        while self.eat(b',') {
            args.push(self.expr()?);
        }
        if !self.eat(b')') {
            return Err(self.err("expected `)`"));
        }
        match name.as_str() {
            "u" => Ok(CographExpr::Union(args)),
            "cu" => Ok(CographExpr::co_union(args)),
            "c" if args.len() == 1 => Ok(CographExpr::complement(args.pop().unwrap())),
            "c" => Err(self.err("complement takes one argument")),
            other => Err(self.err(&format!("unknown operator {other:?}"))),
        }
    }
}

/// Named graph families with fixed vertex numberings.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `K_n` on `0..n`.
    Complete(usize),
    /// `K_{m,n}`: side A is `0..m`, side B is `m..m+n`.
    CompleteBipartite(usize, usize),
    /// `0 - 1 - ... - (n-1)`.
    Path(usize),
    /// Path plus the edge `(n-1, 0)`.
    Cycle(usize),
    /// Vertex = bitstring value; edges join values differing in one bit.
    Hypercube(u32),
    /// Outer cycle `0..5`, inner pentagram `5..10` (`5+i ~ 5+(i+2)%5`), spokes `i ~ 5+i`.
    Petersen,
    /// Petersen with vertex 9 removed.
    PetersenMinusVertex,
    /// Vertex per interval, edge iff the intervals intersect.
    Interval(IntervalModel),
    /// Tree from a Prüfer sequence over `0..len+2`.
    TreePrufer(Vec<usize>),
    /// Tree on `n` vertices given by its edges.
    TreeEdges(usize, Vec<(VertexId, VertexId)>),
    /// Uniform random labeled tree (random Prüfer sequence).
    RandomTree { n: usize, seed: u64 },
    /// Vertex per leaf in left-to-right order.
    Cograph(CographExpr),
    /// Erdős–Rényi `G(n, p)`.
    Random { n: usize, p: f64, seed: u64 },
}

impl Family {
    pub fn generate(&self) -> Result<Graph> {
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter(what.to_string()))
            }
        };
        match self {
            Family::Complete(n) => {
                need(*n >= 1, "complete graph needs n >= 1")?;
                let mut g = Graph::undirected(*n);
                for u in 0..*n {
                    for v in u + 1..*n {
                        g.add_edge(u, v)?;
                    }
                }
                Ok(g)
            }
            Family::CompleteBipartite(a, b) => {
                need(*a >= 1 && *b >= 1, "complete bipartite graph needs m, n >= 1")?;
                let mut g = Graph::undirected(a + b);
                for u in 0..*a {
                    for v in *a..a + b {
                        g.add_edge(u, v)?;
                    }
                }
                Ok(g)
            }
            Family::Path(n) => {
                need(*n >= 1, "path needs n >= 1")?;
                let mut g = Graph::undirected(*n);
                for v in 1..*n {
                    g.add_edge(v - 1, v)?;
                }
                Ok(g)
            }
            Family::Cycle(n) => {
                need(*n >= 3, "cycle needs n >= 3")?;
                let mut g = Family::Path(*n).generate()?;
                g.add_edge(n - 1, 0)?;
                Ok(g)
            }
            Family::Hypercube(d) => {
                need(*d >= 1 && *d <= 20, "hypercube needs 1 <= d <= 20")?;
                let n = 1usize << d;
                let mut g = Graph::undirected(n);
                for u in 0..n {
                    for bit in 0..*d {
                        let v = u ^ (1 << bit);
                        if u < v {
                            g.add_edge(u, v)?;
                        }
                    }
                }
                Ok(g)
            }
            Family::Petersen => {
                let mut g = Graph::undirected(10);
                for i in 0..5 {
                    g.add_edge(i, (i + 1) % 5)?;
                    g.add_edge(5 + i, 5 + (i + 2) % 5)?;
                    g.add_edge(i, 5 + i)?;
                }
                Ok(g)
            }
            Family::PetersenMinusVertex => Family::Petersen.generate()?.without_vertex(9),
            Family::Interval(model) => {
                let mut g = Graph::undirected(model.len());
                for i in 0..model.len() {
                    for j in i + 1..model.len() {
                        if model.intersects(i, j) {
                            g.add_edge(i, j)?;
                        }
                    }
                }
                Ok(g)
            }
            Family::TreePrufer(seq) => prufer_tree(seq),
            Family::TreeEdges(n, edges) => {
                let g = Graph::from_edges(*n, false, edges)?;
                if !is_tree(&g) {
                    return Err(Error::NotATree);
                }
                Ok(g)
            }
            Family::RandomTree { n, seed } => {
                need(*n >= 1, "tree needs n >= 1")?;
                if *n <= 2 {
                    return Family::Path(*n).generate();
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..*n)).collect();
                prufer_tree(&seq)
            }
            Family::Cograph(expr) => {
                expr.validate()?;
                let (n, edges) = eval_cograph(expr);
                let mut g = Graph::from_edges(n, false, &edges)?;
                for (i, name) in expr.leaves().into_iter().enumerate() {
                    g.set_label(i, name);
                }
                Ok(g)
            }
            Family::Random { n, p, seed } => {
                need((0.0..=1.0).contains(p), "edge probability must lie in [0, 1]")?;
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut g = Graph::undirected(*n);
                for u in 0..*n {
                    for v in u + 1..*n {
                        if rng.gen_bool(*p) {
                            g.add_edge(u, v)?;
                        }
                    }
                }
                Ok(g)
            }
        }
    }
}

/// Evaluates by explicit union and complement of adjacency sets.
fn eval_cograph(e: &CographExpr) -> (usize, Vec<(VertexId, VertexId)>) {
    match e {
        CographExpr::Leaf(_) => (1, Vec::new()),
        CographExpr::Union(cs) => {
            let mut n = 0;
            let mut edges = Vec::new();
            for c in cs {
                let (k, es) = eval_cograph(c);
                edges.extend(es.into_iter().map(|(u, v)| (u + n, v + n)));
                n += k;
            }
            (n, edges)
        }
        CographExpr::Complement(c) => {
            let (n, edges) = eval_cograph(c);
            let present: BTreeSet<_> = edges.into_iter().collect();
            let mut out = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if !present.contains(&(u, v)) {
                        out.push((u, v));
                    }
                }
            }
            (n, out)
        }
    }
}

fn prufer_tree(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(Error::InvalidParameter(format!("Prüfer entry {bad} out of range for n = {n}")));
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut g = Graph::undirected(n);
    for &x in seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        g.add_edge(leaf, x)?;
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let last: Vec<_> = leaves.into_iter().collect();
    g.add_edge(last[0], last[1])?;
    Ok(g)
}

/// Connected and acyclic.
pub(crate) fn is_tree(g: &Graph) -> bool {
    !g.is_directed() && g.n() >= 1 && g.m() + 1 == g.n() && g.components().len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complement;

    #[test]
    fn hypercube_counts() {
        let q4 = Family::Hypercube(4).generate().unwrap();
        assert_eq!((q4.n(), q4.m()), (16, 32));
        assert!(q4.has_edge(0b0101, 0b0111));
    }

    #[test]
    fn petersen_shape() {
        let p = Family::Petersen.generate().unwrap();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        let pv = Family::PetersenMinusVertex.generate().unwrap();
        assert_eq!((pv.n(), pv.m()), (9, 12));
        // homeomorphic to K_{3,3}: six degree-3 branch vertices, three subdivision vertices
        let deg3 = pv.vertices().filter(|&v| pv.degree(v) == 3).count();
        let deg2 = pv.vertices().filter(|&v| pv.degree(v) == 2).count();
        assert_eq!((deg3, deg2), (6, 3));
    }

    #[test]
    fn interval_example() {
        let m = IntervalModel::from_integers(&[(0, 2), (1, 4), (3, 5)]).unwrap();
        let g = Family::Interval(m).generate().unwrap();
        assert_eq!(g.edge_set(), [(0, 1), (1, 2)].into_iter().collect());
    }

    #[test]
    fn touching_intervals_intersect() {
        let m = IntervalModel::from_integers(&[(0, 2), (2, 3), (4, 4), (4, 4)]).unwrap();
        let g = Family::Interval(m.clone()).generate().unwrap();
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(2, 3), "duplicate intervals are twins");
        let spans = m.rank_spans();
        assert!(spans[1].0 < spans[0].1);
    }

    #[test]
    fn rationals_compare_exactly() {
        let a: Rational = "1/3".parse().unwrap();
        let b: Rational = "2/6".parse().unwrap();
        assert_eq!(a, b);
        assert!(a < Rational::integer(1));
        assert!(IntervalModel::from_integers(&[(3, 1)]).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(Family::Complete(0).generate().is_err());
        assert!(Family::Hypercube(0).generate().is_err());
        assert!(Family::Cycle(2).generate().is_err());
        assert!(Family::TreeEdges(3, vec![(0, 1)]).generate().is_err());
    }

    #[test]
    fn prufer_and_random_trees() {
        let t = Family::TreePrufer(vec![3, 3, 3]).generate().unwrap();
        assert_eq!(t.degree(3), 4);
        for seed in 0..20 {
            let t = Family::RandomTree { n: 9, seed }.generate().unwrap();
            assert!(is_tree(&t));
            let c = complement(&t).unwrap();
            assert_eq!(c.m(), 9 * 8 / 2 - t.m());
        }
        assert_eq!(
            Family::RandomTree { n: 7, seed: 4 }.generate().unwrap(),
            Family::RandomTree { n: 7, seed: 4 }.generate().unwrap()
        );
    }

    #[test]
    fn cograph_parse_and_eval() {
        let e = CographExpr::parse("cu(cu(a,b), cu(cu(c,d), cu(e,f), g))").unwrap();
        assert_eq!(e.leaves(), vec!["a", "b", "c", "d", "e", "f", "g"]);
        assert_eq!(e.to_string(), "cu(cu(a, b), cu(cu(c, d), cu(e, f), g))");
        let g = Family::Cograph(e).generate().unwrap();
        assert_eq!(g.label(6), Some("g"));
        // complement of the union: a sees every leaf outside its own pair, but not b
        assert_eq!(g.degree(0), 5);
        assert!(!g.has_edge(0, 1));

        let k2 = Family::Cograph(CographExpr::parse("cu(a, b)").unwrap()).generate().unwrap();
        assert_eq!(k2.m(), 1);
        let e2 = Family::Cograph(CographExpr::parse("u(a, b)").unwrap()).generate().unwrap();
        assert_eq!(e2.m(), 0);
    }

    #[test]
    fn cograph_rejects_malformed() {
        assert!(CographExpr::parse("u(a)").is_err());
        assert!(CographExpr::parse("u(a, a)").is_err());
        assert!(CographExpr::parse("x(a, b)").is_err());
        assert!(CographExpr::parse("u(a, b").is_err());
    }

    #[test]
    fn normalization_drops_double_complement() {
        let e = CographExpr::complement(CographExpr::complement(CographExpr::union(vec![
            CographExpr::leaf("a"),
            CographExpr::leaf("b"),
        ])));
        assert!(matches!(e.normalized(), CographExpr::Union(_)));
    }
}
