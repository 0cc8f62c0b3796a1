//! Canonical labelling for small digraphs.
//!
//! [`canonical_form`] produces an order-invariant byte encoding: two
//! digraphs of the same order yield equal bytes exactly when they are
//! isomorphic. The labelling is found by iterated partition refinement on
//! degree/adjacency invariants, with backtracking over the remaining
//! vertex orderings; the lexicographically least relabelled adjacency
//! encoding wins. No automorphism pruning is attempted — at the orders
//! this crate targets the backtrack tree is tiny.

use crate::digraph::Digraph;

/// Order-invariant byte encoding of a digraph.
///
/// Layout: one byte for the order `n`, then `n` rows of `ceil(n/8)` bytes;
/// bit `v & 7` of byte `v / 8` in row `u` is set when the canonically
/// relabelled digraph has the arc `u -> v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Decodes the form back into the canonically labelled digraph.
    pub fn to_digraph(&self) -> Digraph {
        let n = self.bytes[0] as usize;
        let row_len = n.div_ceil(8);
        let mut lists = vec![Vec::new(); n];
        for u in 0..n {
            let row = &self.bytes[1 + u * row_len..1 + (u + 1) * row_len];
            for v in 0..n {
                if row[v / 8] & (1 << (v % 8)) != 0 {
                    lists[u].push(v);
                }
            }
        }
        Digraph::from_out_lists(lists).expect("canonical bytes encode a valid digraph")
    }
}

/// Canonical form of `g`. See the module docs for the encoding.
pub fn canonical_form(g: &Digraph) -> CanonicalForm {
    canonicalize(g).1
}

/// Canonically relabelled copy of `g` together with its form.
pub fn canonicalize(g: &Digraph) -> (Digraph, CanonicalForm) {
    let n = g.n();
    assert!(n <= u8::MAX as usize, "canonical encoding supports order <= 255");
    let mut search = CanonSearch::new(g);
    let mut partition = initial_partition(g);
    refine(g, &mut partition);
    search.descend(&partition);
    let (best_bytes, best_perm) = search.best.expect("at least one labelling is explored");
    let canonical = g.relabel(&best_perm);
    (canonical, CanonicalForm { bytes: best_bytes })
}

/// Ordered partition of the vertex set; each cell is sorted.
type Partition = Vec<Vec<usize>>;

fn initial_partition(g: &Digraph) -> Partition {
    let (out_deg, in_deg) = g.degrees();
    let mut keyed: Vec<(usize, usize, usize)> =
        (0..g.n()).map(|u| (out_deg[u], in_deg[u], u)).collect();
    keyed.sort_unstable();
    let mut partition: Partition = Vec::new();
    for (od, id, u) in keyed {
        match partition.last_mut() {
            Some(cell) if {
                let first = cell[0];
                out_deg[first] == od && in_deg[first] == id
            } =>
            {
                cell.push(u)
            }
            _ => partition.push(vec![u]),
        }
    }
    partition
}

/// Splits cells by the per-cell out/in arc counts of their members until
/// the partition is equitable. Cell order is invariant under relabelling:
/// new sub-cells are ordered by their (sorted) signatures.
fn refine(g: &Digraph, partition: &mut Partition) {
    loop {
        let mut changed = false;
        let mut cell_of = vec![0usize; g.n()];
        for (idx, cell) in partition.iter().enumerate() {
            for &u in cell {
                cell_of[u] = idx;
            }
        }
        let cells = partition.len();
        let signature = |u: usize| -> Vec<(usize, usize)> {
            let mut sig = vec![(0usize, 0usize); cells];
            for &v in g.out_neighbors(u) {
                sig[cell_of[v]].0 += 1;
            }
            for w in 0..g.n() {
                if g.has_arc(w, u) {
                    sig[cell_of[w]].1 += 1;
                }
            }
            sig
        };
        let mut next: Partition = Vec::new();
        for cell in partition.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, usize)>, usize)> =
                cell.iter().map(|&u| (signature(u), u)).collect();
            keyed.sort();
            let mut groups: Partition = Vec::new();
            let mut last_sig: Option<&Vec<(usize, usize)>> = None;
            for (sig, u) in &keyed {
                if last_sig == Some(sig) {
                    groups.last_mut().unwrap().push(*u);
                } else {
                    groups.push(vec![*u]);
                }
                last_sig = Some(sig);
            }
            if groups.len() > 1 {
                changed = true;
            }
            next.extend(groups);
        }
        *partition = next;
        if !changed {
            return;
        }
    }
}

struct CanonSearch<'g> {
    g: &'g Digraph,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl<'g> CanonSearch<'g> {
    fn new(g: &'g Digraph) -> Self {
        CanonSearch { g, best: None }
    }

    fn descend(&mut self, partition: &Partition) {
        match partition.iter().position(|cell| cell.len() > 1) {
            None => {
                let mut perm = vec![0usize; self.g.n()];
                for (pos, cell) in partition.iter().enumerate() {
                    perm[cell[0]] = pos;
                }
                let bytes = encode(self.g, &perm);
                if self.best.as_ref().is_none_or(|(b, _)| bytes < *b) {
                    self.best = Some((bytes, perm));
                }
            }
            Some(idx) => {
                for &v in &partition[idx] {
                    let mut branched: Partition = Vec::with_capacity(partition.len() + 1);
                    branched.extend_from_slice(&partition[..idx]);
                    branched.push(vec![v]);
                    branched.push(partition[idx].iter().copied().filter(|&u| u != v).collect());
                    branched.extend_from_slice(&partition[idx + 1..]);
                    refine(self.g, &mut branched);
                    self.descend(&branched);
                }
            }
        }
    }
}

fn encode(g: &Digraph, perm: &[usize]) -> Vec<u8> {
    let n = g.n();
    let row_len = n.div_ceil(8);
    let mut bytes = vec![0u8; 1 + n * row_len];
    bytes[0] = n as u8;
    for (u, v) in g.arcs() {
        let (nu, nv) = (perm[u], perm[v]);
        bytes[1 + nu * row_len + nv / 8] |= 1 << (nv % 8);
    }
    bytes
}
