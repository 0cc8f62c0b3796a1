//! Small dense digraphs with exact reachability, degree and geodecity
//! primitives.
//!
//! A [`Digraph`] is a simple digraph (no loops, no parallel arcs) on the
//! fixed vertex set `0..n`, stored as one sorted out-neighbour list per
//! vertex. Values are immutable after construction, so they can be shared
//! freely across threads.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use thiserror::Error;

/// Construction-time violations of the digraph invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("digraph must have at least one vertex")]
    Empty,
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate arc {from} -> {to}")]
    DuplicateArc { from: usize, to: usize },
    #[error("vertex id {id} out of range for order {n}")]
    VertexOutOfRange { id: usize, n: usize },
}

/// Arithmetic overflow while evaluating a Moore bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("Moore bound M({d},{k}) overflows u64")]
pub struct MooreBoundOverflow {
    pub d: u64,
    pub k: i64,
}

/// Directed Moore bound: `1 + d + d^2 + ... + d^k`, and 0 for negative `k`.
///
/// Overflow of the host width is reported instead of wrapping.
pub fn moore_bound(d: u64, k: i64) -> Result<u64, MooreBoundOverflow> {
    if k < 0 {
        return Ok(0);
    }
    let overflow = MooreBoundOverflow { d, k };
    let mut total: u64 = 0;
    let mut power: u64 = 1;
    for i in 0..=k {
        total = total.checked_add(power).ok_or(overflow)?;
        if i < k {
            power = power.checked_mul(d).ok_or(overflow)?;
        }
    }
    Ok(total)
}

/// Certificate that a digraph is not k-geodetic: two distinct walks of
/// length at most k between one ordered vertex pair.
///
/// Walks are stored as full vertex sequences including both endpoints; the
/// empty walk at `u` is the one-element sequence `[u]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodecityWitness {
    pub source: usize,
    pub target: usize,
    pub walk_a: Vec<usize>,
    pub walk_b: Vec<usize>,
}

impl GeodecityWitness {
    /// Re-checks the certificate against `g`: both walks must run from
    /// `source` to `target` along arcs of `g`, have length at most `k`,
    /// and differ.
    pub fn verify(&self, g: &Digraph, k: usize) -> bool {
        let ok = |walk: &[usize]| {
            !walk.is_empty()
                && walk.len() - 1 <= k
                && walk[0] == self.source
                && *walk.last().unwrap() == self.target
                && walk.windows(2).all(|w| g.has_arc(w[0], w[1]))
        };
        ok(&self.walk_a) && ok(&self.walk_b) && self.walk_a != self.walk_b
    }
}

/// Degree-regularity summary with respect to a reference degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularity {
    /// Every vertex has out-degree exactly `d`.
    pub out_regular: bool,
    /// Every vertex has in-degree and out-degree exactly `d`.
    pub diregular: bool,
    /// In-degrees in non-decreasing order.
    pub in_degree_sequence: Vec<usize>,
}

/// Simple digraph on vertices `0..n` with sorted out-neighbour lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph from one out-neighbour list per vertex.
    ///
    /// Lists may be unsorted; loops, duplicate neighbours and ids outside
    /// `0..n` are rejected.
    pub fn from_out_lists(lists: Vec<Vec<usize>>) -> Result<Self, DigraphError> {
        if lists.is_empty() {
            return Err(DigraphError::Empty);
        }
        let n = lists.len();
        let mut out = Vec::with_capacity(n);
        for (u, mut nbrs) in lists.into_iter().enumerate() {
            nbrs.sort_unstable();
            for pair in nbrs.windows(2) {
                if pair[0] == pair[1] {
                    return Err(DigraphError::DuplicateArc { from: u, to: pair[0] });
                }
            }
            for &v in &nbrs {
                if v >= n {
                    return Err(DigraphError::VertexOutOfRange { id: v, n });
                }
                if v == u {
                    return Err(DigraphError::SelfLoop { vertex: u });
                }
            }
            out.push(nbrs);
        }
        Ok(Digraph { out })
    }

    /// Builds a digraph on `n` vertices from an arc list.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::Empty);
        }
        let mut lists = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u >= n {
                return Err(DigraphError::VertexOutOfRange { id: u, n });
            }
            lists[u].push(v);
        }
        Self::from_out_lists(lists)
    }

    /// Digraph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Result<Self, DigraphError> {
        Self::from_out_lists(vec![Vec::new(); n])
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| self.has_arc(u, v)).collect()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().map(move |&v| (u, v)))
    }

    /// Positional out- and in-degree vectors.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let out_deg: Vec<usize> = self.out.iter().map(Vec::len).collect();
        let mut in_deg = vec![0usize; self.n()];
        for (_, v) in self.arcs() {
            in_deg[v] += 1;
        }
        (out_deg, in_deg)
    }

    fn check_vertex(&self, u: usize) -> Result<(), DigraphError> {
        if u >= self.n() {
            Err(DigraphError::VertexOutOfRange { id: u, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// Endpoints of length-`l` walks from `u` for `l >= 0`; for `l < 0`,
    /// start points of length-`|l|` walks into `u`. `l = 0` gives `{u}`.
    pub fn n_step(&self, u: usize, l: i64) -> Result<BTreeSet<usize>, DigraphError> {
        self.check_vertex(u)?;
        let mut current = BTreeSet::from([u]);
        for _ in 0..l.unsigned_abs() {
            let mut next = BTreeSet::new();
            if l >= 0 {
                for &v in &current {
                    next.extend(self.out[v].iter().copied());
                }
            } else {
                for w in 0..self.n() {
                    if self.out[w].iter().any(|t| current.contains(t)) {
                        next.insert(w);
                    }
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// Union of [`Self::n_step`] over `0..=l` (or `l..=0` for negative `l`).
    pub fn t_set(&self, u: usize, l: i64) -> Result<BTreeSet<usize>, DigraphError> {
        self.check_vertex(u)?;
        let mut acc = BTreeSet::from([u]);
        let mut current = BTreeSet::from([u]);
        for _ in 0..l.unsigned_abs() {
            let mut next = BTreeSet::new();
            if l >= 0 {
                for &v in &current {
                    next.extend(self.out[v].iter().copied());
                }
            } else {
                for w in 0..self.n() {
                    if self.out[w].iter().any(|t| current.contains(t)) {
                        next.insert(w);
                    }
                }
            }
            acc.extend(next.iter().copied());
            current = next;
        }
        Ok(acc)
    }

    /// BFS distance from `u` to `v`; `None` when unreachable.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<usize>, DigraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut dist = vec![usize::MAX; self.n()];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return Ok(Some(dist[v]));
            }
            for &y in &self.out[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        Ok(None)
    }

    /// Decides k-geodecity: at most one walk of length at most `k` between
    /// every ordered vertex pair, the pair `(u, u)` included (the empty
    /// walk counts, so any closed walk of length at most `k` violates).
    ///
    /// Equivalent to every entry of `sum_{i=0..k} A^i` being at most 1,
    /// with walk counts saturated at 2 so no `k` can overflow.
    pub fn is_k_geodetic(&self, k: usize) -> Result<(), GeodecityWitness> {
        assert!(k >= 1, "geodecity is defined for k >= 1");
        let n = self.n();
        for source in 0..n {
            // current[v] = number of walks of the current exact length,
            // total[v] = number of walks of any length so far; both capped at 2.
            let mut current = vec![0u8; n];
            let mut total = vec![0u8; n];
            current[source] = 1;
            total[source] = 1;
            for _ in 0..k {
                let mut next = vec![0u8; n];
                for v in 0..n {
                    if current[v] > 0 {
                        for &w in &self.out[v] {
                            next[w] = (next[w] + current[v]).min(2);
                        }
                    }
                }
                for v in 0..n {
                    total[v] = (total[v] + next[v]).min(2);
                }
                current = next;
            }
            if let Some(target) = (0..n).find(|&v| total[v] >= 2) {
                let walks = self.collect_walks(source, target, k, 2);
                debug_assert_eq!(walks.len(), 2);
                return Err(GeodecityWitness {
                    source,
                    target,
                    walk_a: walks[0].clone(),
                    walk_b: walks[1].clone(),
                });
            }
        }
        Ok(())
    }

    /// First `limit` walks from `source` to `target` of length at most `k`,
    /// in DFS order with ascending neighbours (so prefixes come first).
    fn collect_walks(
        &self,
        source: usize,
        target: usize,
        k: usize,
        limit: usize,
    ) -> Vec<Vec<usize>> {
        let mut found = Vec::new();
        let mut walk = vec![source];
        self.walk_dfs(target, k, limit, &mut walk, &mut found);
        found
    }

    fn walk_dfs(
        &self,
        target: usize,
        k: usize,
        limit: usize,
        walk: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if found.len() == limit {
            return;
        }
        let here = *walk.last().unwrap();
        if here == target {
            found.push(walk.clone());
            if found.len() == limit {
                return;
            }
        }
        if walk.len() - 1 == k {
            return;
        }
        for &next in &self.out[here] {
            walk.push(next);
            self.walk_dfs(target, k, limit, walk, found);
            walk.pop();
        }
    }

    /// Order minus the Moore bound `M(d,k)`; negative when the digraph is
    /// smaller than the bound. Saturates for astronomically large bounds.
    pub fn excess(&self, d: u64, k: i64) -> i64 {
        match moore_bound(d, k) {
            Ok(m) if m <= i64::MAX as u64 => self.n() as i64 - m as i64,
            _ => i64::MIN,
        }
    }

    /// Regularity report with respect to degree `d`.
    pub fn regularity(&self, d: usize) -> Regularity {
        let (out_deg, in_deg) = self.degrees();
        let out_regular = out_deg.iter().all(|&x| x == d);
        let diregular = out_regular && in_deg.iter().all(|&x| x == d);
        let mut in_degree_sequence = in_deg;
        in_degree_sequence.sort_unstable();
        Regularity { out_regular, diregular, in_degree_sequence }
    }

    /// Applies the permutation `perm` (`perm[old] = new`) to vertex ids.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n(), "permutation length must equal order");
        let mut lists = vec![Vec::new(); self.n()];
        for (u, v) in self.arcs() {
            lists[perm[u]].push(perm[v]);
        }
        Digraph::from_out_lists(lists).expect("relabelling preserves invariants")
    }
}
