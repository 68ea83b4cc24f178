//! Clique and biclique replacement until the graph becomes planar.
//!
//! Each step replaces a dense substructure by one junction vertex joined to
//! every member. The log of steps can be replayed forward or undone with
//! [`expand`].

mod junctions;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::enumeration::{
    build_index, directed_bicliques, is_clique, list_max_bicliques, list_max_cliques, orient, Biclique, BicliqueIndex,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::planarity::is_planar;

pub use junctions::{JunctionKind, JunctionState, Junctions, Side};

/// Degeneracy up to which the incremental biclique index is used.
const INDEX_MAX_DEGENERACY: usize = 8;

/// What a step replaced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    Clique {
        members: Vec<VertexId>,
    },
    Biclique {
        sides: (Vec<VertexId>, Vec<VertexId>),
    },
    /// Arcs ran from the first side to the second.
    DirectedBiclique {
        sides: (Vec<VertexId>, Vec<VertexId>),
    },
}

impl StepKind {
    pub fn from_biclique(b: &Biclique) -> Self {
        StepKind::Biclique { sides: (b.side_a().iter().copied().collect(), b.side_b().iter().copied().collect()) }
    }

    pub fn members(&self) -> impl Iterator<Item = VertexId> + '_ {
        let (a, b): (&[VertexId], &[VertexId]) = match self {
            StepKind::Clique { members } => (members, &[]),
            StepKind::Biclique { sides } | StepKind::DirectedBiclique { sides } => (&sides.0, &sides.1),
        };
        a.iter().chain(b).copied()
    }

    /// Members that `x` was joined to by the replaced edges.
    pub fn partners(&self, x: VertexId) -> Vec<VertexId> {
        match self {
            StepKind::Clique { members } => members.iter().copied().filter(|&m| m != x).collect(),
            StepKind::Biclique { sides } | StepKind::DirectedBiclique { sides } => {
                if sides.0.contains(&x) {
                    sides.1.clone()
                } else if sides.1.contains(&x) {
                    sides.0.clone()
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// The edges a step of this kind removes, sorted.
    pub fn internal_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        match self {
            StepKind::Clique { members } => {
                for (i, &u) in members.iter().enumerate() {
                    for &v in &members[i + 1..] {
                        out.push((u.min(v), u.max(v)));
                    }
                }
            }
            StepKind::Biclique { sides: (a, b) } => {
                for &u in a {
                    for &v in b {
                        out.push((u.min(v), u.max(v)));
                    }
                }
            }
            StepKind::DirectedBiclique { sides: (a, b) } => {
                for &u in a {
                    for &v in b {
                        out.push((u, v));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn is_directed(&self) -> bool {
        matches!(self, StepKind::DirectedBiclique { .. })
    }

    fn check_shape(&self) -> std::result::Result<(), String> {
        let members: Vec<VertexId> = self.members().collect();
        let distinct: BTreeSet<VertexId> = members.iter().copied().collect();
        if distinct.len() != members.len() {
            return Err("repeated member".into());
        }
        match self {
            StepKind::Clique { members } if members.len() < 4 => Err("clique with fewer than 4 members".into()),
            StepKind::Biclique { sides } | StepKind::DirectedBiclique { sides }
                if sides.0.len() < 2 || sides.1.len() < 2 =>
            {
                Err("biclique side with fewer than 2 members".into())
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReductionStep {
    #[serde(flatten)]
    pub kind: StepKind,
    pub junction: VertexId,
    pub removed: Vec<(VertexId, VertexId)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Planar,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub original: Graph,
    pub steps: Vec<ReductionStep>,
    pub reduced: Graph,
    pub status: Status,
}

#[derive(Serialize, Deserialize)]
struct Log {
    original: String,
    steps: Vec<ReductionStep>,
    reduced: String,
    status: Status,
}

impl ReductionResult {
    /// Side tags of the junctions in `reduced`.
    pub fn junctions(&self) -> Junctions {
        let mut j = Junctions::new(self.original.n());
        for s in &self.steps {
            j.record(s);
        }
        j
    }

    pub fn to_json(&self) -> Result<String> {
        let log = Log {
            original: self.original.to_edge_list(),
            steps: self.steps.clone(),
            reduced: self.reduced.to_edge_list(),
            status: self.status,
        };
        Ok(serde_json::to_string_pretty(&log)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let log: Log = serde_json::from_str(text)?;
        Ok(ReductionResult {
            original: Graph::parse(&log.original)?,
            steps: log.steps,
            reduced: Graph::parse(&log.reduced)?,
            status: log.status,
        })
    }
}

fn bad(step: usize, message: impl Into<String>) -> Error {
    Error::InconsistentLog { step, message: message.into() }
}

/// Applies one logged step to `g` after checking it against the current state.
fn apply_step(g: &mut Graph, index: usize, step: &ReductionStep) -> Result<()> {
    step.kind.check_shape().map_err(|m| bad(index, m))?;
    if step.kind.is_directed() != g.is_directed() {
        return Err(bad(index, "step kind does not match graph direction"));
    }
    if step.junction != g.n() {
        return Err(bad(index, format!("junction should be {}, got {}", g.n(), step.junction)));
    }
    if step.kind.members().any(|v| v >= g.n()) {
        return Err(bad(index, "member is not a live vertex"));
    }
    let expected = step.kind.internal_edges();
    let mut removed = step.removed.clone();
    if !g.is_directed() {
        removed.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
    }
    removed.sort_unstable();
    if removed != expected {
        return Err(bad(index, "removed edges do not match the step's members"));
    }
    if let Some(&(u, v)) = expected.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(bad(index, format!("edge ({u}, {v}) is not present")));
    }
    for &(u, v) in &expected {
        g.remove_edge(u, v);
    }
    let j = g.add_vertex();
    match &step.kind {
        StepKind::DirectedBiclique { sides: (a, b) } => {
            for &u in a {
                g.add_edge(u, j)?;
            }
            for &v in b {
                g.add_edge(j, v)?;
            }
        }
        kind => {
            for u in kind.members() {
                g.add_edge(u, j)?;
            }
        }
    }
    Ok(())
}

/// Replays `steps` forward from `original`.
pub fn replay(original: &Graph, steps: &[ReductionStep]) -> Result<Graph> {
    let mut g = original.clone();
    for (i, s) in steps.iter().enumerate() {
        apply_step(&mut g, i, s)?;
    }
    Ok(g)
}

/// Undoes every step of `r`, returning the original graph.
///
/// Steps are undone last to first; the error names the step whose junction
/// or restored edges disagree with the graph at that point.
pub fn expand(r: &ReductionResult) -> Result<Graph> {
    let n0 = r.original.n();
    if r.reduced.n() != n0 + r.steps.len() {
        return Err(bad(r.steps.len(), "reduced graph has the wrong number of vertices"));
    }
    let mut g = r.reduced.clone();
    for (i, step) in r.steps.iter().enumerate().rev() {
        step.kind.check_shape().map_err(|m| bad(i, m))?;
        let j = g.n() - 1;
        if step.junction != j || j != n0 + i {
            return Err(bad(i, format!("junction should be {j}, got {}", step.junction)));
        }
        let (ins, outs): (BTreeSet<VertexId>, BTreeSet<VertexId>) = match &step.kind {
            StepKind::DirectedBiclique { sides: (a, b) } => (a.iter().copied().collect(), b.iter().copied().collect()),
            kind => (kind.members().collect(), kind.members().collect()),
        };
        let (have_in, have_out) = if g.is_directed() {
            (g.predecessors(j).clone(), g.neighbors(j).clone())
        } else {
            (g.neighbors(j).clone(), g.neighbors(j).clone())
        };
        if have_in != ins || have_out != outs {
            return Err(bad(i, "junction neighbors do not match the step's members"));
        }
        let expected = step.kind.internal_edges();
        let mut removed = step.removed.clone();
        if !g.is_directed() {
            removed.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
        }
        removed.sort_unstable();
        if removed != expected {
            return Err(bad(i, "removed edges do not match the step's members"));
        }
        g = g.without_vertex(j)?;
        for &(u, v) in &expected {
            if !g.add_edge(u, v)? {
                return Err(bad(i, format!("edge ({u}, {v}) was already present")));
            }
        }
    }
    if g.edge_set() != r.original.edge_set() || g.is_directed() != r.original.is_directed() {
        return Err(Error::Mismatch("expanded graph differs from the original".into()));
    }
    Ok(r.original.clone())
}

fn make_step(g: &Graph, kind: StepKind) -> ReductionStep {
    let removed = kind.internal_edges();
    ReductionStep { kind, junction: g.n(), removed }
}

fn step_cap(g: &Graph) -> usize {
    2 * g.m() + 16
}

/// Biclique candidates either from the incremental index or recomputed.
enum Source {
    Index(Box<BicliqueIndex>),
    Scratch,
}

impl Source {
    fn next(&self, g: &Graph, j: &Junctions) -> Result<Option<Biclique>> {
        match self {
            Source::Index(idx) => Ok(idx.by_size().find(|b| j.admits(&StepKind::from_biclique(b))).cloned()),
            Source::Scratch => {
                let mut all = list_max_bicliques(g)?;
                all.sort_by(|x, y| {
                    (y.vertex_count(), y.edge_count()).cmp(&(x.vertex_count(), x.edge_count())).then_with(|| x.cmp(y))
                });
                Ok(all.into_iter().find(|b| j.admits(&StepKind::from_biclique(b))))
            }
        }
    }

    fn apply(&mut self, step: &ReductionStep) -> Result<()> {
        if let Source::Index(idx) = self {
            let new_edges: Vec<_> = step.kind.members().map(|m| (m, step.junction)).collect();
            idx.apply_replacement(&step.removed, step.junction, &new_edges)?;
        }
        Ok(())
    }
}

/// Replaces cliques of four or more vertices, then maximal bicliques with
/// both sides of two or more, until the graph is planar or no candidate is left.
///
/// The maximal cliques of `g` are listed once, largest first, and each is
/// replaced if it is still a clique when its turn comes. Bicliques are then
/// taken largest first (vertex count, then edge count), ties lexicographic.
pub fn reduce_undirected(g: &Graph) -> Result<ReductionResult> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    let mut cur = g.clone();
    let mut steps = Vec::new();
    let mut junctions = Junctions::new(g.n());
    let mut source =
        if orient(g)?.d() <= INDEX_MAX_DEGENERACY { Source::Index(Box::new(build_index(g)?)) } else { Source::Scratch };
    let mut cliques = list_max_cliques(g, 4)?.into_iter();
    let cap = step_cap(g);
    let status = loop {
        if is_planar(&cur) {
            break Status::Planar;
        }
        if steps.len() >= cap {
            break Status::Failed;
        }
        let clique = cliques.by_ref().find(|c| is_clique(&cur, c)).map(|members| StepKind::Clique { members });
        let kind = match clique {
            Some(k) => k,
            None => match source.next(&cur, &junctions)? {
                Some(b) => StepKind::from_biclique(&b),
                None => break Status::Failed,
            },
        };
        let step = make_step(&cur, kind);
        apply_step(&mut cur, steps.len(), &step)?;
        source.apply(&step)?;
        junctions.record(&step);
        steps.push(step);
    };
    Ok(ReductionResult { original: g.clone(), steps, reduced: cur, status })
}

/// The directed variant: only one-way bicliques are replaced, and the
/// junction receives arcs from the sources and sends arcs to the targets.
pub fn reduce_directed(d: &Graph) -> Result<ReductionResult> {
    if !d.is_directed() {
        return Err(Error::UndirectedInput);
    }
    let mut cur = d.clone();
    let mut steps = Vec::new();
    let mut junctions = Junctions::new(d.n());
    let cap = step_cap(d);
    let status = loop {
        if is_planar(&cur) {
            break Status::Planar;
        }
        if steps.len() >= cap {
            break Status::Failed;
        }
        let mut found = directed_bicliques(&cur)?;
        found.sort_by(|x, y| {
            (y.vertex_count(), y.edge_count()).cmp(&(x.vertex_count(), x.edge_count())).then_with(|| x.cmp(y))
        });
        let kind = found
            .iter()
            .map(|b| StepKind::DirectedBiclique {
                sides: (b.side_a().iter().copied().collect(), b.side_b().iter().copied().collect()),
            })
            .find(|k| junctions.admits(k));
        let Some(kind) = kind else {
            break Status::Failed;
        };
        let step = make_step(&cur, kind);
        apply_step(&mut cur, steps.len(), &step)?;
        junctions.record(&step);
        steps.push(step);
    };
    Ok(ReductionResult { original: d.clone(), steps, reduced: cur, status })
}

/// Dispatches on the graph's direction.
pub fn reduce(g: &Graph) -> Result<ReductionResult> {
    if g.is_directed() {
        reduce_directed(g)
    } else {
        reduce_undirected(g)
    }
}
