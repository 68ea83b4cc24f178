//! Canonical certificates for vertex- and edge-labelled graphs by colour
//! refinement and individualization.

/// Adjacency with a small label on each directed half-edge.
/// Current colour, sorted (edge label, neighbour colour) pairs, vertex.
type Signature = (u32, Vec<(u32, u32)>, usize);

pub(crate) struct Labelled {
    pub colour: Vec<u32>,
    /// `adj[v]` lists `(w, label seen from v)`.
    pub adj: Vec<Vec<(usize, u32)>>,
}

impl Labelled {
    fn refine(&self, mut colour: Vec<u32>) -> Vec<u32> {
        let n = colour.len();
        let mut classes = count_classes(&colour);
        loop {
            let mut sigs: Vec<Signature> = (0..n)
                .map(|v| {
                    let mut s: Vec<(u32, u32)> = self.adj[v].iter().map(|&(w, l)| (l, colour[w])).collect();
                    s.sort_unstable();
                    (colour[v], s, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut next = vec![0u32; n];
            let mut c = 0u32;
            for i in 0..n {
                if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                    c += 1;
                }
                next[sigs[i].2] = c;
            }
            let k = c as usize + 1;
            colour = next;
            if k == classes {
                return colour;
            }
            classes = k;
        }
    }

    fn certificate(&self, colour: &[u32]) -> Vec<u32> {
        // colour is a bijection onto 0..n here
        let n = colour.len();
        let mut by_label = vec![0usize; n];
        for (v, &c) in colour.iter().enumerate() {
            by_label[c as usize] = v;
        }
        let mut out = Vec::with_capacity(n + 4 * self.adj.iter().map(Vec::len).sum::<usize>());
        out.push(n as u32);
        out.extend(by_label.iter().map(|&v| self.colour[v]));
        for &v in &by_label {
            let mut row: Vec<(u32, u32)> = self.adj[v].iter().map(|&(w, l)| (colour[w], l)).collect();
            row.sort_unstable();
            out.push(row.len() as u32);
            for (w, l) in row {
                out.push(w);
                out.push(l);
            }
        }
        out
    }

    /// The lexicographically least certificate over all leaves of the
    /// individualization tree: equal for isomorphic inputs.
    pub fn canonical(&self) -> Vec<u32> {
        let start = self.refine(self.colour.clone());
        let mut best: Option<Vec<u32>> = None;
        self.search(start, &mut best);
        best.unwrap_or_else(|| vec![0])
    }

    fn search(&self, colour: Vec<u32>, best: &mut Option<Vec<u32>>) {
        let n = colour.len();
        let mut sizes = vec![0usize; n];
        for &c in &colour {
            sizes[c as usize] += 1;
        }
        let target = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
        let Some(target) = target else {
            let cert = self.certificate(&colour);
            if best.as_ref().is_none_or(|b| cert < *b) {
                *best = Some(cert);
            }
            return;
        };
        for v in (0..n).filter(|&v| colour[v] as usize == target) {
            // split v off ahead of its cell
            let mut c: Vec<u32> = colour.iter().map(|&x| 2 * x + 1).collect();
            c[v] -= 1;
            self.search(self.refine(c), best);
        }
    }
}

fn count_classes(colour: &[u32]) -> usize {
    let mut c: Vec<u32> = colour.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}
