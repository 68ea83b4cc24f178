use std::collections::{BTreeMap, BTreeSet};

use super::{ReductionStep, StepKind};
use crate::graph::VertexId;

/// Which side of a junction a neighbor sits on. Clique junctions put every
/// neighbor on side `A`; directed junctions use `A` for sources and `B` for targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JunctionKind {
    /// Traffic circle: any incident segment reaches any other.
    Clique,
    /// Two opposing fans: only A-to-B passage.
    Biclique,
    /// Directed merge: enter from an A segment, leave on a B segment.
    Directed,
}

/// Current side assignment of one junction's neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JunctionState {
    pub kind: JunctionKind,
    pub sides: BTreeMap<VertexId, Side>,
}

impl JunctionState {
    /// Whether a smooth path may pass between neighbors on these sides.
    pub fn passes(&self, from: Side, to: Side) -> bool {
        match self.kind {
            JunctionKind::Clique => true,
            JunctionKind::Biclique => from != to,
            JunctionKind::Directed => from == Side::A && to == Side::B,
        }
    }
}

/// Side tags of every junction created so far, kept in sync with the
/// working graph as replacements nest.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Junctions {
    first: VertexId,
    states: Vec<JunctionState>,
}

impl Junctions {
    /// Junction ids start at `first`, the vertex count of the original graph.
    pub fn new(first: VertexId) -> Self {
        Junctions { first, states: Vec::new() }
    }

    pub fn first(&self) -> VertexId {
        self.first
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Option<&JunctionState> {
        v.checked_sub(self.first).and_then(|i| self.states.get(i))
    }

    pub fn is_junction(&self, v: VertexId) -> bool {
        self.get(v).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &JunctionState)> {
        self.states.iter().enumerate().map(move |(i, s)| (self.first + i, s))
    }

    /// True if replacing `kind` keeps every path through its junction
    /// members intact: the segments a member junction loses must share one
    /// side and must not pass into each other.
    pub fn admits(&self, kind: &StepKind) -> bool {
        kind.members().all(|x| {
            let Some(state) = self.get(x) else {
                return true;
            };
            let partners = kind.partners(x);
            let mut sides = partners.iter().map(|p| state.sides.get(p).copied());
            let Some(Some(first)) = sides.next() else {
                return false;
            };
            if !sides.all(|s| s == Some(first)) {
                return false;
            }
            partners.len() == 1 || !state.passes(first, first)
        })
    }

    /// Records a step: creates its junction and re-points member junctions
    /// from their merged partners to the new junction.
    pub fn record(&mut self, step: &ReductionStep) {
        debug_assert_eq!(step.junction, self.first + self.states.len());
        let (kind, sides) = match &step.kind {
            StepKind::Clique { members } => (JunctionKind::Clique, members.iter().map(|&m| (m, Side::A)).collect()),
            StepKind::Biclique { sides: (a, b) } => (
                JunctionKind::Biclique,
                a.iter().map(|&m| (m, Side::A)).chain(b.iter().map(|&m| (m, Side::B))).collect(),
            ),
            StepKind::DirectedBiclique { sides: (a, b) } => (
                JunctionKind::Directed,
                a.iter().map(|&m| (m, Side::A)).chain(b.iter().map(|&m| (m, Side::B))).collect(),
            ),
        };
        let members: BTreeSet<VertexId> = step.kind.members().collect();
        for x in members {
            let partners = step.kind.partners(x);
            if let Some(state) = x.checked_sub(self.first).and_then(|i| self.states.get_mut(i)) {
                let side = partners.iter().find_map(|p| state.sides.get(p).copied());
                for p in &partners {
                    state.sides.remove(p);
                }
                if let Some(side) = side {
                    state.sides.insert(step.junction, side);
                }
            }
        }
        self.states.push(JunctionState { kind, sides });
    }
}
