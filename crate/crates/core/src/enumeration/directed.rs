use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::bicliques::list_max_bicliques;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Complete bipartite subgraph whose arcs all run from `side_a` to `side_b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DirectedBiclique {
    side_a: BTreeSet<VertexId>,
    side_b: BTreeSet<VertexId>,
}

impl DirectedBiclique {
    pub fn new(side_a: BTreeSet<VertexId>, side_b: BTreeSet<VertexId>) -> Self {
        DirectedBiclique { side_a, side_b }
    }

    pub fn from_slices(a: &[VertexId], b: &[VertexId]) -> Self {
        Self::new(a.iter().copied().collect(), b.iter().copied().collect())
    }

    /// Sources.
    pub fn side_a(&self) -> &BTreeSet<VertexId> {
        &self.side_a
    }

    /// Targets.
    pub fn side_b(&self) -> &BTreeSet<VertexId> {
        &self.side_b
    }

    pub fn vertex_count(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }

    pub fn edge_count(&self) -> usize {
        self.side_a.len() * self.side_b.len()
    }

    /// Every arc `a -> b` is present in `d`.
    pub fn is_one_way_complete(&self, d: &Graph) -> bool {
        self.side_a.is_disjoint(&self.side_b)
            && self.side_a.iter().all(|&a| self.side_b.iter().all(|&b| d.has_edge(a, b)))
    }
}

impl fmt::Display for DirectedBiclique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<VertexId>| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} -> {}", join(&self.side_a), join(&self.side_b))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Arc {
    Out,
    In,
    Both,
}

/// One-way bicliques of a digraph.
///
/// Each maximal biclique of the underlying graph is examined: the larger side
/// (on a tie, the side holding the smallest vertex id) is partitioned by each
/// vertex's exact vector of arc directions toward the smaller side. A group of
/// two or more vertices then points at the vertices it reaches by outgoing
/// arcs and is pointed at by those reaching it; either part of size two or
/// more yields a directed biclique.
pub fn directed_bicliques(d: &Graph) -> Result<Vec<DirectedBiclique>> {
    if !d.is_directed() {
        return Err(Error::UndirectedInput);
    }
    let mut out = BTreeSet::new();
    for b in list_max_bicliques(&d.underlying())? {
        let (larger, smaller) =
            if b.side_a().len() >= b.side_b().len() { (b.side_a(), b.side_b()) } else { (b.side_b(), b.side_a()) };
        let mut groups: BTreeMap<Vec<Arc>, BTreeSet<VertexId>> = BTreeMap::new();
        for &x in larger {
            let pattern: Vec<Arc> = smaller
                .iter()
                .map(|&s| match (d.has_edge(x, s), d.has_edge(s, x)) {
                    (true, true) => Arc::Both,
                    (true, false) => Arc::Out,
                    _ => Arc::In,
                })
                .collect();
            groups.entry(pattern).or_default().insert(x);
        }
        for (pattern, group) in groups {
            if group.len() < 2 {
                continue;
            }
            let targets: BTreeSet<VertexId> =
                smaller.iter().zip(&pattern).filter(|(_, a)| **a != Arc::In).map(|(&s, _)| s).collect();
            let sources: BTreeSet<VertexId> =
                smaller.iter().zip(&pattern).filter(|(_, a)| **a != Arc::Out).map(|(&s, _)| s).collect();
            if targets.len() >= 2 {
                out.insert(DirectedBiclique::new(group.clone(), targets));
            }
            if sources.len() >= 2 {
                out.insert(DirectedBiclique::new(sources, group));
            }
        }
    }
    Ok(out.into_iter().collect())
}
