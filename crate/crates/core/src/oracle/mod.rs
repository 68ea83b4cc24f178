//! Exact decision of merge-reducibility for small graphs: depth-first search
//! over every sequence of clique and biclique replacements, with states
//! memoized up to isomorphism.

mod canon;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::enumeration::{list_max_bicliques, list_max_cliques, Biclique};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::planarity::is_planar;
use crate::reduction::{JunctionKind, Junctions, ReductionResult, ReductionStep, Side, Status, StepKind};

use canon::Labelled;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_states: usize,
    pub max_depth: usize,
    /// Largest input vertex count accepted.
    pub max_vertices: usize,
    pub memo: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_states: 1_000_000, max_depth: 12, max_vertices: 16, memo: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BudgetKind {
    NodeBudget,
    DepthBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Reducible(Vec<ReductionStep>),
    NotReducible,
    Inconclusive(BudgetKind),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub states: usize,
    pub memo_hits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub stats: Stats,
}

impl Verdict {
    /// `reducible`, `not-reducible` or `inconclusive(<reason>)`.
    pub fn label(&self) -> String {
        match &self.outcome {
            Outcome::Reducible(_) => "reducible".into(),
            Outcome::NotReducible => "not-reducible".into(),
            Outcome::Inconclusive(BudgetKind::NodeBudget) => "inconclusive(node-budget)".into(),
            Outcome::Inconclusive(BudgetKind::DepthBudget) => "inconclusive(depth-budget)".into(),
        }
    }
}

/// Every clique of four or more vertices and every complete bipartite
/// subgraph with both sides of two or more, maximal or not.
pub fn merge_candidates(g: &Graph) -> Result<Vec<StepKind>> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    candidates(g, &Junctions::new(g.n()))
}

fn subsets(items: &[VertexId], min: usize, f: &mut impl FnMut(Vec<VertexId>)) {
    assert!(items.len() < 32, "set of {} vertices too large", items.len());
    for mask in 1u32..(1u32 << items.len()) {
        if mask.count_ones() as usize >= min {
            f(items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
        }
    }
}

/// Admissible candidates, largest first, ties lexicographic.
fn candidates(g: &Graph, junctions: &Junctions) -> Result<Vec<StepKind>> {
    let mut cliques = BTreeSet::new();
    for c in list_max_cliques(g, 4)? {
        subsets(&c, 4, &mut |s| {
            cliques.insert(s);
        });
    }
    let mut bicliques = BTreeSet::new();
    for b in list_max_bicliques(g)? {
        let a: Vec<VertexId> = b.side_a().iter().copied().collect();
        let bs: Vec<VertexId> = b.side_b().iter().copied().collect();
        subsets(&a, 2, &mut |x| {
            subsets(&bs, 2, &mut |y| {
                bicliques.insert(Biclique::new(x.iter().copied().collect(), y.into_iter().collect()));
            })
        });
    }
    let mut out: Vec<StepKind> = cliques
        .into_iter()
        .map(|members| StepKind::Clique { members })
        .chain(bicliques.iter().map(StepKind::from_biclique))
        .filter(|k| junctions.admits(k))
        .collect();
    out.sort_by(|x, y| {
        size_key(y)
            .cmp(&size_key(x))
            .then_with(|| (rank(x), x.members().collect::<Vec<_>>()).cmp(&(rank(y), y.members().collect())))
    });
    Ok(out)
}

fn size_key(k: &StepKind) -> (usize, usize) {
    (k.members().count(), k.internal_edges().len())
}

fn rank(k: &StepKind) -> u8 {
    match k {
        StepKind::Clique { .. } => 0,
        StepKind::Biclique { .. } => 1,
        StepKind::DirectedBiclique { .. } => 2,
    }
}

fn apply(g: &Graph, step: &ReductionStep) -> Graph {
    let mut h = g.clone();
    for &(u, v) in &step.removed {
        h.remove_edge(u, v);
    }
    let j = h.add_vertex();
    for m in step.kind.members() {
        h.add_edge(m, j).expect("members are live");
    }
    h
}

fn key(g: &Graph, junctions: &Junctions) -> Vec<u32> {
    let side_code = |s: Side| match s {
        Side::A => 1,
        Side::B => 2,
    };
    let label = |v: VertexId, w: VertexId| -> u32 {
        let at = |x: VertexId, y: VertexId| junctions.get(x).and_then(|s| s.sides.get(&y)).map_or(0, |&s| side_code(s));
        at(v, w) * 3 + at(w, v)
    };
    let colour = g
        .vertices()
        .map(|v| match junctions.get(v).map(|s| s.kind) {
            None => 0,
            Some(JunctionKind::Clique) => 1,
            Some(JunctionKind::Biclique) => 2,
            Some(JunctionKind::Directed) => 3,
        })
        .collect();
    let adj = g.vertices().map(|v| g.neighbors(v).iter().map(|&w| (w, label(v, w))).collect()).collect();
    Labelled { colour, adj }.canonical()
}

fn quick_planar(g: &Graph) -> bool {
    (g.n() < 3 || g.m() <= 3 * g.n() - 6) && is_planar(g)
}

struct Search {
    budget: Budget,
    stats: Stats,
    depth_cut: bool,
    memo: HashMap<Vec<u32>, usize>,
}

enum Found {
    Yes(Vec<ReductionStep>),
    No,
    OutOfStates,
}

impl Search {
    fn dfs(&mut self, g: &Graph, junctions: &Junctions, steps: &mut Vec<ReductionStep>) -> Result<Found> {
        if quick_planar(g) {
            return Ok(Found::Yes(steps.clone()));
        }
        let remaining = self.budget.max_depth - steps.len();
        if remaining == 0 {
            self.depth_cut = true;
            return Ok(Found::No);
        }
        let state_key = if self.budget.memo {
            let k = key(g, junctions);
            if self.memo.get(&k).is_some_and(|&r| r >= remaining) {
                self.stats.memo_hits += 1;
                return Ok(Found::No);
            }
            Some(k)
        } else {
            None
        };
        if self.stats.states >= self.budget.max_states {
            return Ok(Found::OutOfStates);
        }
        self.stats.states += 1;
        for kind in candidates(g, junctions)? {
            let removed = kind.internal_edges();
            let step = ReductionStep { kind, junction: g.n(), removed };
            let next = apply(g, &step);
            let mut j = junctions.clone();
            j.record(&step);
            steps.push(step);
            let found = self.dfs(&next, &j, steps)?;
            steps.pop();
            if !matches!(found, Found::No) {
                return Ok(found);
            }
        }
        if let Some(k) = state_key {
            self.memo.insert(k, remaining);
        }
        Ok(Found::No)
    }
}

/// Searches all replacement sequences for one that makes `g` planar.
pub fn decide_confluence(g: &Graph, budget: Budget) -> Result<Verdict> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    if g.n() > budget.max_vertices {
        return Err(Error::TooLarge { n: g.n(), cap: budget.max_vertices });
    }
    let mut search = Search { budget, stats: Stats::default(), depth_cut: false, memo: HashMap::new() };
    let found = search.dfs(g, &Junctions::new(g.n()), &mut Vec::new())?;
    let outcome = match found {
        Found::Yes(steps) => Outcome::Reducible(steps),
        Found::OutOfStates => Outcome::Inconclusive(BudgetKind::NodeBudget),
        Found::No if search.depth_cut => Outcome::Inconclusive(BudgetKind::DepthBudget),
        Found::No => Outcome::NotReducible,
    };
    Ok(Verdict { outcome, stats: search.stats })
}

/// Packages a witness as a reduction log.
pub fn witness_result(g: &Graph, steps: Vec<ReductionStep>) -> Result<ReductionResult> {
    let reduced = crate::reduction::replay(g, &steps)?;
    let status = if is_planar(&reduced) { Status::Planar } else { Status::Failed };
    Ok(ReductionResult { original: g.clone(), steps, reduced, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{attach_edge_triangles, subdivide, Family};
    use crate::track::from_reduction;

    fn gen(f: Family) -> Graph {
        f.generate().unwrap()
    }

    fn decide(g: &Graph) -> Verdict {
        decide_confluence(g, Budget::default()).unwrap()
    }

    #[test]
    fn k5_candidates() {
        // 1 K5, 5 K4, 15 splits of a 4-set into 2+2, 10 splits of the 5-set into 2+3
        assert_eq!(merge_candidates(&gen(Family::Complete(5))).unwrap().len(), 31);
    }

    #[test]
    fn petersen_minus_vertex_has_no_candidates() {
        let g = gen(Family::PetersenMinusVertex);
        assert!(merge_candidates(&g).unwrap().is_empty());
        assert_eq!(decide(&g).outcome, Outcome::NotReducible);
    }

    #[test]
    fn hypercube_candidates_are_faces() {
        let c = merge_candidates(&gen(Family::Hypercube(4))).unwrap();
        assert_eq!(c.len(), 24);
        assert!(c.iter().all(|k| k.members().count() == 4 && matches!(k, StepKind::Biclique { .. })));
    }

    #[test]
    fn complete_graphs_reducible() {
        for n in 5..=7 {
            let g = gen(Family::Complete(n));
            let Outcome::Reducible(steps) = decide(&g).outcome else { panic!("K{n}") };
            let r = witness_result(&g, steps).unwrap();
            assert_eq!(from_reduction(&r).unwrap().realized_edges(), g.edge_set());
        }
    }

    #[test]
    fn complete_bipartite_reducible() {
        for (a, b) in [(3, 3), (3, 4), (4, 4)] {
            let g = gen(Family::CompleteBipartite(a, b));
            assert!(matches!(decide(&g).outcome, Outcome::Reducible(_)));
        }
    }

    #[test]
    fn petersen_and_subdivisions_not_reducible() {
        assert_eq!(decide(&gen(Family::Petersen)).outcome, Outcome::NotReducible);
        assert_eq!(decide(&subdivide(&gen(Family::CompleteBipartite(3, 3))).unwrap()).outcome, Outcome::NotReducible);
        assert_eq!(decide(&subdivide(&gen(Family::Complete(5))).unwrap()).outcome, Outcome::NotReducible);
    }

    #[test]
    fn augmented_k5() {
        let g = attach_edge_triangles(&gen(Family::Complete(5))).unwrap();
        let v = decide(&g);
        assert_eq!(v.outcome, Outcome::NotReducible, "{:?}", v.stats);
    }

    #[test]
    fn memo_preserves_verdicts() {
        for seed in 0..6 {
            let g = gen(Family::Random { n: 8, p: 0.6, seed });
            let on = decide(&g);
            let off = decide_confluence(&g, Budget { memo: false, ..Budget::default() }).unwrap();
            assert_eq!(on.label(), off.label());
        }
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            decide_confluence(&gen(Family::Path(17)), Budget::default()),
            Err(Error::TooLarge { n: 17, cap: 16 })
        ));
    }
}
