//! Canonical digraph families and the two excess-shifting transformations:
//! amalgamation of twin vertices (order n-1) and vertex splitting
//! (order n+1).

use thiserror::Error;

use crate::digraph::{Digraph, DigraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("order {m} too small; need at least 2 vertices")]
    OrderTooSmall { m: usize },
    #[error("vertex id {id} out of range for order {n}")]
    InvalidVertex { id: usize, n: usize },
    #[error("amalgamation needs two distinct vertices")]
    SameVertex { vertex: usize },
    #[error("vertices {u1} and {u2} are adjacent; amalgamation would create a loop")]
    AdjacentPair { u1: usize, u2: usize },
    #[error(
        "out-neighbourhoods differ: only {u1} has {only_u1:?}, only {u2} has {only_u2:?}"
    )]
    OutSetMismatch {
        u1: usize,
        u2: usize,
        only_u1: Vec<usize>,
        only_u2: Vec<usize>,
    },
    #[error("vertex {vertex} has in-degree {in_degree}, need at least {required} to split")]
    InDegreeTooSmall {
        vertex: usize,
        in_degree: usize,
        required: usize,
    },
    #[error("r = {r} exceeds the minimum out-degree {d}")]
    RetainTooLarge { r: usize, d: usize },
    #[error("redirect set must contain exactly {expected} sources, got {got}")]
    RedirectWrongCount { expected: usize, got: usize },
    #[error("redirect source {from} is not an in-neighbour of vertex {vertex}")]
    RedirectNotInArc { from: usize, vertex: usize },
    #[error("redirect source {from} listed twice")]
    RedirectDuplicate { from: usize },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

/// Complete digraph on `m >= 2` vertices: every ordered pair of distinct
/// vertices is an arc. The Moore digraph for `d = m-1`, `k = 1`.
pub fn complete_digraph(m: usize) -> Result<Digraph, ConstructError> {
    if m < 2 {
        return Err(ConstructError::OrderTooSmall { m });
    }
    let lists = (0..m)
        .map(|u| (0..m).filter(|&v| v != u).collect())
        .collect();
    Ok(Digraph::from_out_lists(lists)?)
}

/// Directed cycle on `m >= 2` vertices: arcs `i -> (i+1) mod m`. The Moore
/// digraph for `d = 1`, `k = m-1`.
pub fn directed_cycle(m: usize) -> Result<Digraph, ConstructError> {
    if m < 2 {
        return Err(ConstructError::OrderTooSmall { m });
    }
    let lists = (0..m).map(|u| vec![(u + 1) % m]).collect();
    Ok(Digraph::from_out_lists(lists)?)
}

/// Result of merging two twin vertices: the digraph of order n-1 plus the
/// id translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amalgamation {
    pub digraph: Digraph,
    /// `vertex_map[old] = new`; both merged vertices map to [`Self::merged`].
    pub vertex_map: Vec<usize>,
    /// New id of the merged vertex.
    pub merged: usize,
}

/// Merges `u1` and `u2` into a single vertex inheriting their common
/// out-neighbourhood and the union of their in-arcs.
///
/// Requires `N+(u1) = N+(u2)`, `u1 != u2`, and no arc between the pair
/// (merging adjacent vertices would create a loop). Ids above the removed
/// vertex are compacted down by one.
pub fn amalgamate(g: &Digraph, u1: usize, u2: usize) -> Result<Amalgamation, ConstructError> {
    let n = g.n();
    for &u in &[u1, u2] {
        if u >= n {
            return Err(ConstructError::InvalidVertex { id: u, n });
        }
    }
    if u1 == u2 {
        return Err(ConstructError::SameVertex { vertex: u1 });
    }
    if g.has_arc(u1, u2) || g.has_arc(u2, u1) {
        return Err(ConstructError::AdjacentPair { u1, u2 });
    }
    if g.out_neighbors(u1) != g.out_neighbors(u2) {
        let a: Vec<usize> = g
            .out_neighbors(u1)
            .iter()
            .copied()
            .filter(|v| !g.has_arc(u2, *v))
            .collect();
        let b: Vec<usize> = g
            .out_neighbors(u2)
            .iter()
            .copied()
            .filter(|v| !g.has_arc(u1, *v))
            .collect();
        return Err(ConstructError::OutSetMismatch { u1, u2, only_u1: a, only_u2: b });
    }

    // keep u1 as the merged vertex, drop u2, compact ids above u2
    let keep = u1;
    let drop = u2;
    let mut vertex_map = vec![0usize; n];
    for old in 0..n {
        vertex_map[old] = if old == drop {
            keep - usize::from(keep > drop)
        } else {
            old - usize::from(old > drop)
        };
    }
    let mut arc_set = std::collections::BTreeSet::new();
    for (x, y) in g.arcs() {
        if x == drop && y == drop {
            continue;
        }
        arc_set.insert((vertex_map[x], vertex_map[y]));
    }
    let digraph = Digraph::from_arcs(n - 1, arc_set)?;
    let merged = vertex_map[keep];
    Ok(Amalgamation { digraph, vertex_map, merged })
}

/// Splits vertex `u`: a new vertex `w` (id `n` in the result) copies the
/// out-neighbourhood of `u`, and `d - r` of the in-arcs of `u` are
/// redirected to `w`, where `d` is the minimum out-degree of `g`.
///
/// `redirect` lists the source vertices of the in-arcs to move; when
/// `None`, the lowest-id in-neighbours are taken. Requires
/// `d-(u) >= d` and `0 <= r <= d`. Applied to a k-geodetic digraph the
/// result is again k-geodetic with excess one larger, and non-diregular
/// whenever the input is diregular.
pub fn vertex_split(
    g: &Digraph,
    u: usize,
    r: usize,
    redirect: Option<&[usize]>,
) -> Result<Digraph, ConstructError> {
    let n = g.n();
    if u >= n {
        return Err(ConstructError::InvalidVertex { id: u, n });
    }
    let d = g.degrees().0.into_iter().min().unwrap_or(0);
    if r > d {
        return Err(ConstructError::RetainTooLarge { r, d });
    }
    let in_nbrs = g.in_neighbors(u);
    if in_nbrs.len() < d {
        return Err(ConstructError::InDegreeTooSmall {
            vertex: u,
            in_degree: in_nbrs.len(),
            required: d,
        });
    }
    let moved: Vec<usize> = match redirect {
        Some(sources) => {
            if sources.len() != d - r {
                return Err(ConstructError::RedirectWrongCount {
                    expected: d - r,
                    got: sources.len(),
                });
            }
            let mut seen = std::collections::BTreeSet::new();
            for &s in sources {
                if !seen.insert(s) {
                    return Err(ConstructError::RedirectDuplicate { from: s });
                }
                if !g.has_arc(s, u) {
                    return Err(ConstructError::RedirectNotInArc { from: s, vertex: u });
                }
            }
            sources.to_vec()
        }
        None => in_nbrs.iter().copied().take(d - r).collect(),
    };

    let w = n;
    let mut lists: Vec<Vec<usize>> = (0..n).map(|v| g.out_neighbors(v).to_vec()).collect();
    lists.push(g.out_neighbors(u).to_vec());
    for &s in &moved {
        lists[s].retain(|&t| t != u);
        lists[s].push(w);
    }
    Ok(Digraph::from_out_lists(lists)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    #[test]
    fn complete_digraph_is_moore_for_k1() {
        let g = complete_digraph(3).unwrap();
        assert_eq!(g.excess(2, 1), 0);
        assert!(g.is_k_geodetic(1).is_ok());
        let g4 = complete_digraph(4).unwrap();
        let (out_deg, in_deg) = g4.degrees();
        assert!(out_deg.iter().all(|&x| x == 3));
        assert!(in_deg.iter().all(|&x| x == 3));
        assert!(matches!(complete_digraph(1), Err(ConstructError::OrderTooSmall { m: 1 })));
    }

    #[test]
    fn directed_cycle_is_moore_for_d1() {
        let c3 = directed_cycle(3).unwrap();
        assert!(c3.is_k_geodetic(2).is_ok());
        assert_eq!(c3.excess(1, 2), 0);
        assert!(c3.is_k_geodetic(3).is_err());

        let c4 = directed_cycle(4).unwrap();
        assert!(c4.is_k_geodetic(2).is_ok());
        assert_eq!(c4.excess(1, 2), 1);
        for u in 0..4 {
            let unreached: Vec<usize> =
                (0..4).filter(|v| !c4.t_set(u, 2).unwrap().contains(v)).collect();
            assert_eq!(unreached, vec![(u + 3) % 4]);
        }
        assert!(matches!(directed_cycle(0), Err(ConstructError::OrderTooSmall { m: 0 })));
    }

    #[test]
    fn amalgamate_merges_twins() {
        // 0 and 1 are non-adjacent twins with out-set {2, 3}
        let g = Digraph::from_arcs(
            5,
            [(0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 0), (4, 1)],
        )
        .unwrap();
        let merged = amalgamate(&g, 0, 1).unwrap();
        assert_eq!(merged.digraph.n(), 4);
        // arc count drops by exactly the common out-degree
        assert_eq!(merged.digraph.arc_count(), g.arc_count() - 2);
        // in-arcs of both twins now enter the merged vertex
        let m = merged.merged;
        assert!(merged.digraph.has_arc(merged.vertex_map[3], m));
        assert!(merged.digraph.has_arc(merged.vertex_map[4], m));
        assert_eq!(merged.vertex_map[0], merged.vertex_map[1]);
    }

    #[test]
    fn amalgamate_rejects_bad_pairs() {
        let g = Digraph::from_arcs(4, [(0, 2), (0, 3), (1, 2), (2, 1), (3, 1)]).unwrap();
        match amalgamate(&g, 0, 1) {
            Err(ConstructError::OutSetMismatch { only_u1, only_u2, .. }) => {
                assert_eq!(only_u1, vec![3]);
                assert_eq!(only_u2, vec![]);
            }
            other => panic!("expected out-set mismatch, got {other:?}"),
        }
        assert!(matches!(amalgamate(&g, 1, 1), Err(ConstructError::SameVertex { .. })));
    }

    #[test]
    fn split_then_amalgamate_roundtrip() {
        for (g, d) in [
            (directed_cycle(4).unwrap(), 1),
            (complete_digraph(3).unwrap(), 2),
        ] {
            let k = if d == 1 { 3 } else { 1 };
            for r in 0..=d {
                let split = vertex_split(&g, 0, r, None).unwrap();
                assert_eq!(split.n(), g.n() + 1);
                assert!(split.is_k_geodetic(k).is_ok());
                assert_eq!(split.excess(d as u64, k as i64), g.excess(d as u64, k as i64) + 1);
                let merged = amalgamate(&split, 0, g.n()).unwrap();
                assert_eq!(canonical_form(&merged.digraph), canonical_form(&g));
            }
        }
    }

    #[test]
    fn split_rejects_invalid_requests() {
        // min out-degree 2, but vertex 0 has in-degree 0
        let g = Digraph::from_arcs(
            4,
            [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2)],
        )
        .unwrap();
        assert!(matches!(
            vertex_split(&g, 0, 0, None),
            Err(ConstructError::InDegreeTooSmall { vertex: 0, in_degree: 0, required: 2 })
        ));
        let c4 = directed_cycle(4).unwrap();
        assert!(matches!(
            vertex_split(&c4, 0, 2, None),
            Err(ConstructError::RetainTooLarge { r: 2, d: 1 })
        ));
        assert!(matches!(
            vertex_split(&c4, 0, 0, Some(&[1])),
            Err(ConstructError::RedirectNotInArc { from: 1, vertex: 0 })
        ));
        assert!(matches!(
            vertex_split(&c4, 0, 0, Some(&[3, 3])),
            Err(ConstructError::RedirectWrongCount { .. })
        ));
    }

    #[test]
    fn split_with_full_retention_isolates_new_vertex() {
        let c4 = directed_cycle(4).unwrap();
        let split = vertex_split(&c4, 0, 1, None).unwrap();
        let (_, in_deg) = split.degrees();
        assert_eq!(in_deg[4], 0);
        assert!(split.is_k_geodetic(3).is_ok());
        assert!(!split.regularity(1).diregular);
    }
}
