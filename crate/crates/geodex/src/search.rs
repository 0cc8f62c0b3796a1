//! Isomorph-free exhaustive enumeration of k-geodetic digraphs with
//! prescribed degree, excess and in-degree constraints.
//!
//! The engine assigns out-neighbourhoods vertex by vertex in discovery
//! order: vertex ids are minted consecutively, so any target above the
//! highest minted id must take the next unused ids (orderly generation).
//! A vertex never reached by earlier out-sets becomes a fresh root when
//! its turn comes, which keeps the enumeration complete for digraphs with
//! unreachable outlier vertices. Every digraph on the searched order has
//! at least one labelling consistent with this discovery order, and a
//! final canonical-form dedup collapses the survivors to one
//! representative per isomorphism class, so the symmetry rule only has to
//! prune, never to decide.
//!
//! Branches die as soon as the partial digraph carries two walks of
//! length at most `k` between any ordered pair (walk counts capped at 2),
//! or once the in-degree profile can no longer majorise into the target
//! sequence. Both tests are monotone in the arc set, so no partial
//! assignment that extends to a valid digraph is ever rejected.
//!
//! Subtrees below a sequentially expanded frontier run as independent
//! rayon tasks; results meet in ordered maps keyed by canonical form, so
//! the output stream is byte-identical for every worker count.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonicalize, CanonicalForm};
use crate::digraph::{moore_bound, Digraph};

/// Searches are refused above this order unless a caller raises the guard.
pub const DEFAULT_ORDER_GUARD: usize = 24;

/// Hard representation limit of the bitmask engine.
const ORDER_LIMIT: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiregularFilter {
    #[default]
    All,
    OnlyDiregular,
    OnlyNonDiregular,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("degree d must be at least 1")]
    DegreeTooSmall,
    #[error("geodecity parameter k must be at least 1")]
    KTooSmall,
    #[error("Moore bound M({d},{k}) overflows the search order")]
    MooreOverflow { d: usize, k: usize },
    #[error("search order {order} exceeds the order guard {guard}")]
    OrderGuardExceeded { order: usize, guard: usize },
    #[error("search order {order} exceeds the engine limit {limit}")]
    RepresentationLimit { order: usize, limit: usize },
    #[error("in-degree sequence has length {got}, expected the order {expected}")]
    SequenceWrongLength { expected: usize, got: usize },
    #[error("in-degree sequence sums to {got}, expected d * order = {expected}")]
    SequenceWrongSum { expected: usize, got: usize },
}

/// What to enumerate: k-geodetic digraphs of order `M(d,k) + epsilon`
/// with minimum out-degree at least `d`, one representative per
/// isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub d: usize,
    pub k: usize,
    pub epsilon: usize,
    /// Restrict to out-degree exactly `d`. [`SearchSpec::new`] derives the
    /// default from the out-regularity threshold: below excess
    /// `M(d,k-1)` every admissible digraph is out-regular, so nothing is
    /// lost; at or above it the engine explores larger out-degrees too.
    pub out_regular_exactly_d: bool,
    /// Exact in-degree sequence (sorted non-decreasingly) the results
    /// must realise.
    pub in_degree_sequence: Option<Vec<usize>>,
    pub diregular_filter: DiregularFilter,
    /// Callers that only need the class count may skip materialising
    /// digraphs; the engine itself always carries them (they are small).
    pub count_only: bool,
    pub max_results: Option<usize>,
}

impl SearchSpec {
    pub fn new(d: usize, k: usize, epsilon: usize) -> Result<Self, SearchError> {
        if d < 1 {
            return Err(SearchError::DegreeTooSmall);
        }
        if k < 1 {
            return Err(SearchError::KTooSmall);
        }
        let threshold = moore_bound(d as u64, k as i64 - 1)
            .map_err(|_| SearchError::MooreOverflow { d, k })?;
        Ok(SearchSpec {
            d,
            k,
            epsilon,
            out_regular_exactly_d: (epsilon as u64) < threshold,
            in_degree_sequence: None,
            diregular_filter: DiregularFilter::All,
            count_only: false,
            max_results: None,
        })
    }

    /// Order of the digraphs searched: `M(d,k) + epsilon`.
    pub fn order(&self) -> Result<usize, SearchError> {
        let m = moore_bound(self.d as u64, self.k as i64)
            .map_err(|_| SearchError::MooreOverflow { d: self.d, k: self.k })?;
        usize::try_from(m)
            .ok()
            .and_then(|m| m.checked_add(self.epsilon))
            .ok_or(SearchError::MooreOverflow { d: self.d, k: self.k })
    }
}

/// One isomorphism class: the canonically labelled digraph and its form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub form: CanonicalForm,
    pub digraph: Digraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSummary {
    pub count: usize,
    /// True when every emitted class is diregular (vacuously true for an
    /// empty result set).
    pub all_diregular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Classes in canonical-form byte order.
    pub hits: Vec<SearchHit>,
    pub summary: SearchSummary,
}

/// Runs the search under the default order guard.
pub fn enumerate(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    enumerate_with_guard(spec, DEFAULT_ORDER_GUARD)
}

/// Runs the search with an explicit order guard.
pub fn enumerate_with_guard(
    spec: &SearchSpec,
    order_guard: usize,
) -> Result<SearchOutcome, SearchError> {
    if spec.d < 1 {
        return Err(SearchError::DegreeTooSmall);
    }
    if spec.k < 1 {
        return Err(SearchError::KTooSmall);
    }
    let n = spec.order()?;
    if n > order_guard {
        return Err(SearchError::OrderGuardExceeded { order: n, guard: order_guard });
    }
    if n > ORDER_LIMIT {
        return Err(SearchError::RepresentationLimit { order: n, limit: ORDER_LIMIT });
    }
    let target_seq = match &spec.in_degree_sequence {
        Some(seq) => {
            if seq.len() != n {
                return Err(SearchError::SequenceWrongLength { expected: n, got: seq.len() });
            }
            let sum: usize = seq.iter().sum();
            if sum != spec.d * n {
                return Err(SearchError::SequenceWrongSum { expected: spec.d * n, got: sum });
            }
            let mut sorted = seq.clone();
            sorted.sort_unstable();
            Some(sorted)
        }
        None => None,
    };

    let max_out_degree = if spec.out_regular_exactly_d {
        spec.d
    } else {
        // a vertex of out-degree D forces 1 + D * M(d,k-1) distinct
        // vertices, which bounds D by the order
        let mk1 = moore_bound(spec.d as u64, spec.k as i64 - 1)
            .map_err(|_| SearchError::MooreOverflow { d: spec.d, k: spec.k })? as usize;
        ((n - 1) / mk1).min(n - 1)
    };

    let engine = Engine {
        n,
        k: spec.k,
        d: spec.d,
        max_out_degree,
        target_seq,
        only_diregular: matches!(spec.diregular_filter, DiregularFilter::OnlyDiregular),
        filter: spec.diregular_filter,
    };

    let classes = engine.run();
    let mut hits: Vec<SearchHit> = classes.into_values().collect();
    if let Some(cap) = spec.max_results {
        hits.truncate(cap);
    }
    let all_diregular = hits.iter().all(|hit| hit.digraph.regularity(spec.d).diregular);
    let summary = SearchSummary { count: hits.len(), all_diregular };
    Ok(SearchOutcome { hits, summary })
}

struct Engine {
    n: usize,
    k: usize,
    d: usize,
    max_out_degree: usize,
    /// Sorted target in-degree sequence, when constrained.
    target_seq: Option<Vec<usize>>,
    only_diregular: bool,
    filter: DiregularFilter,
}

/// Partial assignment: out-rows for vertices below `level`, bitmask per row.
#[derive(Clone)]
struct State {
    rows: Vec<u32>,
    in_deg: Vec<u8>,
    level: usize,
    minted: usize,
}

impl State {
    fn fresh(n: usize) -> Self {
        State { rows: vec![0; n], in_deg: vec![0; n], level: 0, minted: 0 }
    }
}

type ClassMap = BTreeMap<Vec<u8>, SearchHit>;

impl Engine {
    fn run(&self) -> ClassMap {
        let mut results = ClassMap::new();
        let task_target = rayon::current_num_threads().saturating_mul(32).max(64);
        let mut frontier = vec![State::fresh(self.n)];
        while !frontier.is_empty()
            && frontier.len() < task_target
            && frontier[0].level < self.n
        {
            let mut next = Vec::new();
            for mut state in frontier {
                self.for_each_child(&mut state, &mut |_, child| {
                    if child.level == self.n {
                        self.finalize(child, &mut results);
                    } else {
                        next.push(child.clone());
                    }
                });
            }
            frontier = next;
        }

        let task_maps: Vec<ClassMap> = frontier
            .into_par_iter()
            .map(|mut state| {
                let mut local = ClassMap::new();
                self.dfs(&mut state, &mut local);
                local
            })
            .collect();
        for map in task_maps {
            results.extend(map);
        }
        results
    }

    fn dfs(&self, state: &mut State, out: &mut ClassMap) {
        if state.level == self.n {
            self.finalize(state, out);
            return;
        }
        self.for_each_child(state, &mut |engine, child| {
            if child.level == engine.n {
                engine.finalize(child, out);
            } else {
                engine.dfs(child, out);
            }
        });
    }

    /// Enumerates the admissible out-sets of `state.level`, invoking the
    /// callback with the state advanced one level, then restores it.
    fn for_each_child(&self, state: &mut State, visit: &mut dyn FnMut(&Engine, &mut State)) {
        let level = state.level;
        let saved_minted = state.minted;
        if state.minted <= level {
            // never mentioned before: the vertex roots a new search tree
            state.minted = level + 1;
        }
        let minted = state.minted;
        let old_ids: Vec<usize> = (0..minted).filter(|&v| v != level).collect();
        let max_fresh = self.n - minted;
        let mut chosen = Vec::with_capacity(self.max_out_degree);
        for degree in self.d..=self.max_out_degree {
            for fresh in 0..=degree.min(max_fresh) {
                let old_count = degree - fresh;
                if old_count > old_ids.len() {
                    continue;
                }
                for_each_combination(&old_ids, old_count, &mut chosen, &mut |subset| {
                    let mut mask: u32 = 0;
                    for &v in subset {
                        mask |= 1 << v;
                    }
                    for t in 0..fresh {
                        mask |= 1 << (minted + t);
                    }
                    state.rows[level] = mask;
                    state.minted = minted + fresh;
                    state.level = level + 1;
                    let mut bits = mask;
                    while bits != 0 {
                        let v = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        state.in_deg[v] += 1;
                    }
                    if self.admissible(state) {
                        visit(self, state);
                    }
                    let mut bits = mask;
                    while bits != 0 {
                        let v = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        state.in_deg[v] -= 1;
                    }
                    state.rows[level] = 0;
                    state.minted = minted;
                    state.level = level;
                });
            }
        }
        state.minted = saved_minted;
    }

    /// Monotone pruning predicates; a partial digraph failing any of them
    /// cannot extend to a valid result.
    fn admissible(&self, state: &State) -> bool {
        if self.only_diregular && state.in_deg.iter().any(|&c| c as usize > self.d) {
            return false;
        }
        if let Some(seq) = &self.target_seq {
            if !majorises(&state.in_deg, seq) {
                return false;
            }
        }
        partial_geodetic_ok(&state.rows, state.minted, self.k)
    }

    fn finalize(&self, state: &State, out: &mut ClassMap) {
        debug_assert_eq!(state.minted, self.n);
        let lists: Vec<Vec<usize>> = state
            .rows
            .iter()
            .map(|&row| (0..self.n).filter(|&v| row & (1 << v) != 0).collect())
            .collect();
        let g = Digraph::from_out_lists(lists).expect("engine emits simple digraphs");
        // re-verify through the public oracle before accepting
        if g.is_k_geodetic(self.k).is_err() {
            debug_assert!(false, "pruned search emitted a non-geodetic digraph");
            return;
        }
        let (out_deg, in_deg) = g.degrees();
        debug_assert!(out_deg.iter().all(|&x| x >= self.d));
        if let Some(seq) = &self.target_seq {
            let mut sorted = in_deg.clone();
            sorted.sort_unstable();
            if &sorted != seq {
                return;
            }
        }
        let diregular =
            out_deg.iter().all(|&x| x == self.d) && in_deg.iter().all(|&x| x == self.d);
        match self.filter {
            DiregularFilter::OnlyDiregular if !diregular => return,
            DiregularFilter::OnlyNonDiregular if diregular => return,
            _ => {}
        }
        let (canonical, form) = canonicalize(&g);
        out.entry(form.bytes().to_vec())
            .or_insert(SearchHit { form, digraph: canonical });
    }
}

/// Can the in-degree profile still grow into the sorted target sequence?
/// Sound and exact as a matching condition: sorted descending, every
/// current count must fit under the corresponding target.
fn majorises(current: &[u8], target_sorted_asc: &[usize]) -> bool {
    let mut cur: Vec<u8> = current.to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    cur.iter()
        .zip(target_sorted_asc.iter().rev())
        .all(|(&c, &t)| c as usize <= t)
}

/// Walk counts (capped at 2) of the partial digraph: true when every
/// ordered pair, the diagonal included, carries at most one walk of
/// length at most `k`. Rows above `active` are necessarily empty.
fn partial_geodetic_ok(rows: &[u32], active: usize, k: usize) -> bool {
    for source in 0..active {
        let start = 1u32 << source;
        let mut total_once = start;
        let mut total_twice = 0u32;
        let mut cur_once = start;
        let mut cur_twice = 0u32;
        for _ in 0..k {
            let mut next_once = 0u32;
            let mut next_twice = 0u32;
            let mut rest = cur_once;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next_twice |= next_once & rows[v];
                next_once |= rows[v];
            }
            let mut rest = cur_twice;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next_twice |= rows[v];
            }
            total_twice |= next_twice | (total_once & next_once);
            total_once |= next_once;
            if total_twice != 0 {
                return false;
            }
            cur_once = next_once;
            cur_twice = next_twice;
        }
    }
    true
}

fn for_each_combination(
    items: &[usize],
    want: usize,
    chosen: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if want == 0 {
        f(chosen);
        return;
    }
    if items.len() < want {
        return;
    }
    for idx in 0..=items.len() - want {
        chosen.push(items[idx]);
        for_each_combination(&items[idx + 1..], want - 1, chosen, f);
        chosen.pop();
    }
}
