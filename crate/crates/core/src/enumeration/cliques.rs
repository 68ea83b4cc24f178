use std::collections::BTreeSet;

use super::orient::orient;
use crate::error::Result;
use crate::graph::{Graph, VertexId};

/// All maximal cliques with at least `min_size` vertices, largest first,
/// ties in lexicographic order of their sorted vertex lists.
///
/// Bron–Kerbosch with Tomita pivoting, started once per vertex in degeneracy
/// order so that each outer call only sees later neighbors.
pub fn list_max_cliques(g: &Graph, min_size: usize) -> Result<Vec<Vec<VertexId>>> {
    let o = orient(g)?;
    let mut out = Vec::new();
    for &v in o.order() {
        let later: BTreeSet<VertexId> = o.out_neighbors(v).clone();
        let earlier: BTreeSet<VertexId> = o.in_neighbors(v).clone();
        let mut r = vec![v];
        expand(g, &mut r, later, earlier, min_size, &mut out);
    }
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn expand(
    g: &Graph,
    r: &mut Vec<VertexId>,
    mut p: BTreeSet<VertexId>,
    mut x: BTreeSet<VertexId>,
    min_size: usize,
    out: &mut Vec<Vec<VertexId>>,
) {
    if p.is_empty() {
        if x.is_empty() && r.len() >= min_size {
            out.push(r.clone());
        }
        return;
    }
    if r.len() + p.len() < min_size {
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| (g.neighbors(u).intersection(&p).count(), std::cmp::Reverse(u)))
        .unwrap();
    let candidates: Vec<VertexId> = p.difference(g.neighbors(pivot)).copied().collect();
    for v in candidates {
        let nv = g.neighbors(v);
        r.push(v);
        expand(g, r, p.intersection(nv).copied().collect(), x.intersection(nv).copied().collect(), min_size, out);
        r.pop();
        p.remove(&v);
        x.insert(v);
    }
}

/// True when every pair of `vs` is adjacent in `g`.
pub fn is_clique(g: &Graph, vs: &[VertexId]) -> bool {
    vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}
