//! Planarity testing and combinatorial embeddings.
//!
//! Each biconnected block is embedded by path addition: start from a cycle,
//! then repeatedly embed a path of some fragment into a face that contains
//! all of the fragment's attachment vertices, preferring fragments that have
//! only one admissible face. A fragment with no admissible face proves the
//! block non-planar. Block rotations are spliced at cut vertices.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// A rotation system together with the faces it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    rotation: Vec<Vec<VertexId>>,
    faces: Vec<Vec<(VertexId, VertexId)>>,
    outer_face: usize,
}

impl Embedding {
    /// Builds the face set from a rotation system. `rotation[v]` lists the
    /// neighbors of `v` in cyclic order; the dart following `(u, v)` on its
    /// face is `(v, w)` where `w` comes after `u` in `rotation[v]`.
    pub fn from_rotation(rotation: Vec<Vec<VertexId>>) -> Self {
        let mut position: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for (v, order) in rotation.iter().enumerate() {
            for (i, &u) in order.iter().enumerate() {
                position.insert((v, u), i);
            }
        }
        let mut seen: HashSet<(VertexId, VertexId)> = HashSet::new();
        let mut faces = Vec::new();
        for (u, order) in rotation.iter().enumerate() {
            for &v in order {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while seen.insert((a, b)) {
                    face.push((a, b));
                    let around = &rotation[b];
                    let i = position[&(b, a)];
                    let c = around[(i + 1) % around.len()];
                    a = b;
                    b = c;
                }
                faces.push(face);
            }
        }
        let outer_face = faces
            .iter()
            .enumerate()
            .max_by(|(i, f), (j, g)| f.len().cmp(&g.len()).then(j.cmp(i)))
            .map_or(0, |(i, _)| i);
        Embedding { rotation, faces, outer_face }
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn faces(&self) -> &[Vec<(VertexId, VertexId)>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    /// Vertices of a face in walk order (repeats possible for non-biconnected graphs).
    pub fn face_vertices(&self, f: usize) -> Vec<VertexId> {
        self.faces[f].iter().map(|&(u, _)| u).collect()
    }

    /// `V - E + F = 2` for every connected component, isolated vertices
    /// counting as one face.
    pub fn satisfies_euler(&self) -> bool {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.rotation[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        let mut v = vec![0i64; count];
        let mut e2 = vec![0i64; count];
        let mut f = vec![0i64; count];
        for x in 0..n {
            v[comp[x]] += 1;
            e2[comp[x]] += self.rotation[x].len() as i64;
            if self.rotation[x].is_empty() {
                f[comp[x]] += 1;
            }
        }
        for face in &self.faces {
            f[comp[face[0].0]] += 1;
        }
        (0..count).all(|c| v[c] - e2[c] / 2 + f[c] == 2)
    }

    /// Every dart lies on exactly one face.
    pub fn faces_partition_darts(&self) -> bool {
        let mut seen = HashSet::new();
        for face in &self.faces {
            for &d in face {
                if !seen.insert(d) {
                    return false;
                }
            }
        }
        let darts: usize = self.rotation.iter().map(Vec::len).sum();
        seen.len() == darts
    }

    /// True when this is a rotation system of `g`'s underlying graph.
    pub fn matches(&self, g: &Graph) -> bool {
        let u = g.underlying();
        self.n() == u.n()
            && u.vertices().all(|v| {
                let rot: BTreeSet<_> = self.rotation[v].iter().copied().collect();
                rot.len() == self.rotation[v].len() && &rot == u.neighbors(v)
            })
    }
}

/// True iff the underlying undirected graph of `g` is planar.
pub fn is_planar(g: &Graph) -> bool {
    let u = g.underlying();
    if u.n() >= 3 && u.m() > 3 * u.n() - 6 {
        return false;
    }
    blocks(&u).iter().all(|b| embed_block(b).is_some())
}

/// Combinatorial embedding of a planar graph.
pub fn embed(g: &Graph) -> Result<Embedding> {
    let u = g.underlying();
    let nonplanar = || Error::NonPlanar { witness: kuratowski_witness(&u).map(Box::new) };
    if u.n() >= 3 && u.m() > 3 * u.n() - 6 {
        return Err(nonplanar());
    }
    let mut rotation: Vec<Vec<VertexId>> = vec![Vec::new(); u.n()];
    for block in blocks(&u) {
        let local = embed_block(&block).ok_or_else(nonplanar)?;
        for (v, order) in local {
            rotation[v].extend(order);
        }
    }
    Ok(Embedding::from_rotation(rotation))
}

/// A minimal non-planar edge subset (a Kuratowski subdivision) obtained by
/// greedy edge deletion; `None` for planar or large inputs.
pub fn kuratowski_witness(g: &Graph) -> Option<Graph> {
    let mut h = g.underlying();
    if h.m() > 300 || is_planar(&h) {
        return None;
    }
    for (a, b) in g.underlying().edges() {
        h.remove_edge(a, b);
        if is_planar(&h) {
            h.add_edge(a, b).ok()?;
        }
    }
    Some(h)
}

/// Biconnected blocks as edge lists.
fn blocks(g: &Graph) -> Vec<Vec<(VertexId, VertexId)>> {
    struct State {
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(VertexId, VertexId)>,
        out: Vec<Vec<(VertexId, VertexId)>>,
    }
    fn visit(g: &Graph, u: VertexId, parent: Option<VertexId>, st: &mut State) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for &w in g.neighbors(u) {
            if Some(w) == parent {
                continue;
            }
            if st.disc[w] == 0 {
                st.stack.push((u, w));
                visit(g, w, Some(u), st);
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        block.push(e);
                        if e == (u, w) {
                            break;
                        }
                    }
                    st.out.push(block);
                }
            } else if st.disc[w] < st.disc[u] {
                st.stack.push((u, w));
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }
    let mut st = State { disc: vec![0; g.n()], low: vec![0; g.n()], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in g.vertices() {
        if st.disc[v] == 0 {
            visit(g, v, None, &mut st);
        }
    }
    st.out
}

/// Embeds one biconnected block, returning the cyclic neighbor order of each
/// of its vertices restricted to the block, or `None` if it is non-planar.
fn embed_block(block: &[(VertexId, VertexId)]) -> Option<Vec<(VertexId, Vec<VertexId>)>> {
    let verts: BTreeSet<VertexId> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    if block.len() == 1 {
        let (a, b) = block[0];
        return Some(vec![(a, vec![b]), (b, vec![a])]);
    }
    let index: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let globals: Vec<VertexId> = verts.iter().copied().collect();
    let k = globals.len();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in block {
        let (x, y) = (index[&a], index[&b]);
        adj[x].push(y);
        adj[y].push(x);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let m = block.len();
    if k >= 3 && m > 3 * k - 6 {
        return None;
    }

    let faces = path_addition(&adj, m)?;

    let mut sigma: Vec<HashMap<usize, usize>> = vec![HashMap::new(); k];
    for face in &faces {
        let len = face.len();
        for i in 0..len {
            let (u, v, w) = (face[i], face[(i + 1) % len], face[(i + 2) % len]);
            sigma[v].insert(u, w);
        }
    }
    let mut out = Vec::with_capacity(k);
    for v in 0..k {
        let start = adj[v][0];
        let mut order = vec![globals[start]];
        let mut cur = sigma[v][&start];
        while cur != start {
            order.push(globals[cur]);
            cur = sigma[v][&cur];
        }
        debug_assert_eq!(order.len(), adj[v].len());
        out.push((globals[v], order));
    }
    Some(out)
}

/// Face cycles of a planar embedding of a biconnected graph with at least
/// three vertices, or `None` if it is non-planar.
fn path_addition(adj: &[Vec<usize>], m: usize) -> Option<Vec<Vec<usize>>> {
    let k = adj.len();
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };

    let cycle = find_cycle(adj);
    let mut in_emb = vec![false; k];
    let mut emb_edges: HashSet<(usize, usize)> = HashSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        in_emb[v] = true;
        emb_edges.insert(key(v, cycle[(i + 1) % cycle.len()]));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    while emb_edges.len() < m {
        // fragments: (attachments, representative path)
        let mut fragments: Vec<(BTreeSet<usize>, Fragment)> = Vec::new();
        for u in 0..k {
            if !in_emb[u] {
                continue;
            }
            for &v in &adj[u] {
                if u < v && in_emb[v] && !emb_edges.contains(&(u, v)) {
                    fragments.push(([u, v].into_iter().collect(), Fragment::Chord(u, v)));
                }
            }
        }
        let mut comp_of = vec![usize::MAX; k];
        let mut ncomp = 0;
        for s in 0..k {
            if in_emb[s] || comp_of[s] != usize::MAX {
                continue;
            }
            let mut members = vec![s];
            comp_of[s] = ncomp;
            let mut attach = BTreeSet::new();
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &adj[u] {
                    if in_emb[w] {
                        attach.insert(w);
                    } else if comp_of[w] == usize::MAX {
                        comp_of[w] = ncomp;
                        members.push(w);
                    }
                }
            }
            fragments.push((attach, Fragment::Component(ncomp)));
            ncomp += 1;
        }

        let mut choice: Option<(usize, usize)> = None;
        for (fi, (attach, _)) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| attach.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment remains");

        let path = match fragments[fi].1 {
            Fragment::Chord(u, v) => vec![u, v],
            Fragment::Component(c) => {
                let attach = &fragments[fi].0;
                let a1 = *attach.iter().next().unwrap();
                let start = *adj[a1].iter().find(|&&w| comp_of[w] == c).unwrap();
                // BFS inside the component to a vertex touching another attachment
                let mut prev = HashMap::new();
                let mut queue = VecDeque::from([start]);
                prev.insert(start, usize::MAX);
                let mut end = None;
                while let Some(u) = queue.pop_front() {
                    if let Some(&a2) = adj[u].iter().find(|&&w| in_emb[w] && w != a1) {
                        end = Some((u, a2));
                        break;
                    }
                    for &w in &adj[u] {
                        if comp_of[w] == c && !prev.contains_key(&w) {
                            prev.insert(w, u);
                            queue.push_back(w);
                        }
                    }
                }
                let (last, a2) = end.expect("biconnected fragments have two attachments");
                let mut inner = vec![last];
                let mut cur = last;
                while prev[&cur] != usize::MAX {
                    cur = prev[&cur];
                    inner.push(cur);
                }
                inner.reverse();
                let mut path = vec![a1];
                path.extend(inner);
                path.push(a2);
                path
            }
        };

        for w in path.windows(2) {
            emb_edges.insert(key(w[0], w[1]));
        }
        for &v in &path {
            in_emb[v] = true;
        }

        let face = faces.swap_remove(face_idx);
        let (a1, a2) = (path[0], *path.last().unwrap());
        let len = face.len();
        let i = face.iter().position(|&v| v == a1).unwrap();
        let j = face.iter().position(|&v| v == a2).unwrap();
        let interior = &path[1..path.len() - 1];

        let mut f1 = Vec::new();
        let mut t = i;
        loop {
            f1.push(face[t]);
            if t == j {
                break;
            }
            t = (t + 1) % len;
        }
        f1.extend(interior.iter().rev());

        let mut f2 = Vec::new();
        let mut t = j;
        loop {
            f2.push(face[t]);
            if t == i {
                break;
            }
            t = (t + 1) % len;
        }
        f2.extend(interior.iter());

        faces.push(f1);
        faces.push(f2);
    }
    Some(faces)
}

enum Fragment {
    Chord(usize, usize),
    Component(usize),
}

/// Some cycle of a biconnected graph, via DFS back edge.
fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let k = adj.len();
    let mut parent = vec![usize::MAX; k];
    let mut depth = vec![usize::MAX; k];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some((u, idx)) = stack.pop() {
        if idx < adj[u].len() {
            stack.push((u, idx + 1));
            let w = adj[u][idx];
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                stack.push((w, 0));
            } else if w != parent[u] && depth[w] < depth[u] {
                let mut cycle = vec![u];
                let mut cur = u;
                while cur != w {
                    cur = parent[cur];
                    cycle.push(cur);
                }
                return cycle;
            }
        }
    }
    unreachable!("biconnected block with at least three vertices has a cycle")
}
