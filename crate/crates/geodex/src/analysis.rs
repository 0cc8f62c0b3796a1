//! Outlier structure of k-geodetic digraphs and the structural lemmas for
//! digraphs of small excess, each evaluated as a checkable predicate with
//! a replayable witness.
//!
//! For a digraph with minimum out-degree `d` and order `M(d,k) + eps`, the
//! outlier set `O(u)` collects the vertices with no walk of length at most
//! `k` from `u`. `S` and `S'` are the vertices of in-degree below and
//! above `d`. The checks below are theorems when their hypotheses hold;
//! every verdict records whether they did, so inputs violating a
//! hypothesis are evaluated rather than silently trusted.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::digraph::{moore_bound, Digraph, GeodecityWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("input is not {k}-geodetic: two walks from {} to {}",
        witness.source, witness.target)]
    NotGeodetic { k: usize, witness: GeodecityWitness },
    #[error("order {order} does not equal M({d},{k}) + {epsilon}")]
    ExcessMismatch { order: usize, d: usize, k: usize, epsilon: i64 },
    #[error("geodecity parameter k must be at least 1")]
    InvalidK,
    #[error("Moore bound M({d},{k}) overflows")]
    MooreOverflow { d: usize, k: usize },
}

/// Per-vertex outlier structure of a k-geodetic digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutlierReport {
    pub d: usize,
    pub k: usize,
    /// Order minus `M(d,k)`.
    pub epsilon: i64,
    /// `outliers[u]` = vertices with no walk of length <= k from `u`.
    pub outliers: Vec<BTreeSet<usize>>,
    /// `inverse_outliers[v]` = vertices that have `v` as an outlier.
    pub inverse_outliers: Vec<BTreeSet<usize>>,
    /// Vertices of in-degree below `d`.
    pub s_set: BTreeSet<usize>,
    /// Vertices of in-degree above `d`.
    pub s_prime_set: BTreeSet<usize>,
    /// Multiplicity of each distinct outlier set, keyed by sorted vertex
    /// tuple; multiplicities sum to the order.
    pub omega_census: BTreeMap<Vec<usize>, usize>,
}

/// Computes the outlier report. Rejects digraphs that are not k-geodetic,
/// returning the violating walk pair.
pub fn outlier_report(g: &Digraph, d: usize, k: usize) -> Result<OutlierReport, AnalysisError> {
    if k < 1 {
        return Err(AnalysisError::InvalidK);
    }
    if let Err(witness) = g.is_k_geodetic(k) {
        return Err(AnalysisError::NotGeodetic { k, witness });
    }
    Ok(outlier_report_unchecked(g, d, k))
}

/// Outlier structure without the geodecity gate; outlier sets are still
/// well defined (complements of forward reach sets) on any digraph.
fn outlier_report_unchecked(g: &Digraph, d: usize, k: usize) -> OutlierReport {
    let n = g.n();
    let mut outliers = Vec::with_capacity(n);
    for u in 0..n {
        let reach = g.t_set(u, k as i64).expect("vertex in range");
        outliers.push((0..n).filter(|v| !reach.contains(v)).collect::<BTreeSet<_>>());
    }
    let mut inverse_outliers = vec![BTreeSet::new(); n];
    for (u, outs) in outliers.iter().enumerate() {
        for &v in outs {
            inverse_outliers[v].insert(u);
        }
    }
    let (_, in_deg) = g.degrees();
    let s_set = (0..n).filter(|&v| in_deg[v] < d).collect();
    let s_prime_set = (0..n).filter(|&v| in_deg[v] > d).collect();
    let mut omega_census: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for outs in &outliers {
        *omega_census.entry(outs.iter().copied().collect()).or_default() += 1;
    }
    OutlierReport {
        d,
        k,
        epsilon: g.excess(d as u64, k as i64),
        outliers,
        inverse_outliers,
        s_set,
        s_prime_set,
        omega_census,
    }
}

/// The structural results the report can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LemmaId {
    /// Excess below `M(d,k-1)` forces out-regularity with degree `d`.
    OutRegularityThreshold,
    /// Every low-in-degree vertex is an outlier of some out-neighbour of
    /// every vertex.
    SOutlierContainment,
    /// Every high-in-degree vertex is an out-neighbour of some outlier of
    /// every vertex.
    SPrimeNeighborContainment,
    /// `|S|` and `|S'|` are at most `eps * d`.
    SizeBounds,
    /// High in-degrees lie in `[d+1, d+eps]`.
    InDegreeRange,
    /// In-degree deficits below `d` balance the surpluses above `d`.
    DegreeBalance,
    /// A vertex of in-degree `d+eps` has every outlier set inside its
    /// in-neighbourhood.
    MaxInDegreeOutlierContainment,
    /// No two vertices with identical out-neighbourhoods are jointly hit
    /// by every outlier set.
    Amalgamation,
}

impl std::fmt::Display for LemmaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            LemmaId::OutRegularityThreshold => "out-regularity-threshold",
            LemmaId::SOutlierContainment => "S-outlier-containment",
            LemmaId::SPrimeNeighborContainment => "S'-neighbor-containment",
            LemmaId::SizeBounds => "size-bounds",
            LemmaId::InDegreeRange => "in-degree-range",
            LemmaId::DegreeBalance => "degree-balance",
            LemmaId::MaxInDegreeOutlierContainment => "max-in-degree-outlier-containment",
            LemmaId::Amalgamation => "amalgamation",
        };
        f.write_str(name)
    }
}

/// Structured counterexample attached to a failing verdict; replaying it
/// against the digraph reproduces the violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaWitness {
    IrregularOutDegree { vertex: usize, out_degree: usize },
    /// `vertex` lies in S but is not an outlier of any out-neighbour of `via`.
    OutlierGap { vertex: usize, via: usize },
    /// `vertex` lies in S' but is not an out-neighbour of any outlier of `via`.
    NeighborGap { vertex: usize, via: usize },
    SetTooLarge { s_prime: bool, size: usize, bound: i64 },
    InDegreeOutOfRange { vertex: usize, in_degree: usize, low: usize, high: i64 },
    UnbalancedDegrees { deficit: usize, surplus: usize },
    /// Outlier set `omega` of some vertex is not inside the
    /// in-neighbourhood of the maximum-in-degree vertex `v_prime`.
    OutlierOutsideInNeighborhood { v_prime: usize, omega: Vec<usize>, outlier: usize },
    /// Twin out-neighbourhoods where every outlier set meets the pair.
    TwinPair { u1: usize, u2: usize },
}

impl std::fmt::Display for LemmaWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LemmaWitness::IrregularOutDegree { vertex, out_degree } => {
                write!(f, "vertex {vertex} has out-degree {out_degree}")
            }
            LemmaWitness::OutlierGap { vertex, via } => {
                write!(f, "vertex {vertex} is not an outlier of any out-neighbour of {via}")
            }
            LemmaWitness::NeighborGap { vertex, via } => {
                write!(f, "vertex {vertex} is not an out-neighbour of any outlier of {via}")
            }
            LemmaWitness::SetTooLarge { s_prime, size, bound } => {
                let name = if *s_prime { "S'" } else { "S" };
                write!(f, "{name} has {size} vertices, above the bound {bound}")
            }
            LemmaWitness::InDegreeOutOfRange { vertex, in_degree, low, high } => {
                write!(f, "vertex {vertex} has in-degree {in_degree} outside [{low}, {high}]")
            }
            LemmaWitness::UnbalancedDegrees { deficit, surplus } => {
                write!(f, "in-degree deficit {deficit} does not match surplus {surplus}")
            }
            LemmaWitness::OutlierOutsideInNeighborhood { v_prime, omega, outlier } => {
                write!(
                    f,
                    "outlier set {omega:?} contains {outlier}, not an in-neighbour of {v_prime}"
                )
            }
            LemmaWitness::TwinPair { u1, u2 } => {
                write!(
                    f,
                    "vertices {u1} and {u2} share an out-neighbourhood and meet every outlier set"
                )
            }
        }
    }
}

/// Outcome of one lemma check. `hypothesis_met` records whether the
/// lemma's standing assumptions held for this input; the conclusion is
/// evaluated either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaVerdict {
    pub lemma: LemmaId,
    pub hypothesis_met: bool,
    pub holds: bool,
    pub witness: Option<LemmaWitness>,
}

impl LemmaVerdict {
    fn pass(lemma: LemmaId, hypothesis_met: bool) -> Self {
        LemmaVerdict { lemma, hypothesis_met, holds: true, witness: None }
    }

    fn fail(lemma: LemmaId, hypothesis_met: bool, witness: LemmaWitness) -> Self {
        LemmaVerdict { lemma, hypothesis_met, holds: false, witness: Some(witness) }
    }
}

fn expected_order(g: &Digraph, d: usize, k: usize, epsilon: i64) -> Result<(), AnalysisError> {
    let m = moore_bound(d as u64, k as i64)
        .map_err(|_| AnalysisError::MooreOverflow { d, k })?;
    if m as i128 + epsilon as i128 != g.n() as i128 {
        return Err(AnalysisError::ExcessMismatch { order: g.n(), d, k, epsilon });
    }
    Ok(())
}

fn is_out_regular(g: &Digraph, d: usize) -> bool {
    (0..g.n()).all(|u| g.out_neighbors(u).len() == d)
}

fn min_out_degree(g: &Digraph) -> usize {
    (0..g.n()).map(|u| g.out_neighbors(u).len()).min().unwrap_or(0)
}

/// If `epsilon < M(d,k-1)` the digraph must be out-regular with degree
/// `d`; above the threshold the conclusion is vacuous.
pub fn check_out_regularity_threshold(
    g: &Digraph,
    d: usize,
    k: usize,
    epsilon: i64,
) -> Result<LemmaVerdict, AnalysisError> {
    if k < 1 {
        return Err(AnalysisError::InvalidK);
    }
    expected_order(g, d, k, epsilon)?;
    let lemma = LemmaId::OutRegularityThreshold;
    let hypothesis_met = min_out_degree(g) >= d && g.is_k_geodetic(k).is_ok();
    let threshold = moore_bound(d as u64, k as i64 - 1)
        .map_err(|_| AnalysisError::MooreOverflow { d, k })? as i64;
    if epsilon >= threshold || is_out_regular(g, d) {
        return Ok(LemmaVerdict::pass(lemma, hypothesis_met));
    }
    let vertex = (0..g.n())
        .find(|&u| g.out_neighbors(u).len() != d)
        .expect("some vertex breaks out-regularity");
    Ok(LemmaVerdict::fail(
        lemma,
        hypothesis_met,
        LemmaWitness::IrregularOutDegree { vertex, out_degree: g.out_neighbors(vertex).len() },
    ))
}

/// Every `v` in S must lie in the union of the outlier sets of the
/// out-neighbours of every vertex `u`.
pub fn check_s_outlier_containment(
    g: &Digraph,
    d: usize,
    k: usize,
) -> Result<LemmaVerdict, AnalysisError> {
    let report = outlier_report(g, d, k)?;
    let lemma = LemmaId::SOutlierContainment;
    let hypothesis_met = is_out_regular(g, d);
    for &v in &report.s_set {
        for u in 0..g.n() {
            let covered = g
                .out_neighbors(u)
                .iter()
                .any(|&w| report.outliers[w].contains(&v));
            if !covered {
                return Ok(LemmaVerdict::fail(
                    lemma,
                    hypothesis_met,
                    LemmaWitness::OutlierGap { vertex: v, via: u },
                ));
            }
        }
    }
    Ok(LemmaVerdict::pass(lemma, hypothesis_met))
}

/// Every `v'` in S' must be an out-neighbour of some outlier of every
/// vertex `u`.
pub fn check_s_prime_neighbor_containment(
    g: &Digraph,
    d: usize,
    k: usize,
) -> Result<LemmaVerdict, AnalysisError> {
    let report = outlier_report(g, d, k)?;
    let lemma = LemmaId::SPrimeNeighborContainment;
    let hypothesis_met = is_out_regular(g, d);
    for &v in &report.s_prime_set {
        for u in 0..g.n() {
            let covered = report.outliers[u].iter().any(|&o| g.has_arc(o, v));
            if !covered {
                return Ok(LemmaVerdict::fail(
                    lemma,
                    hypothesis_met,
                    LemmaWitness::NeighborGap { vertex: v, via: u },
                ));
            }
        }
    }
    Ok(LemmaVerdict::pass(lemma, hypothesis_met))
}

/// `|S|, |S'| <= eps * d`.
pub fn check_size_bounds(
    g: &Digraph,
    d: usize,
    k: usize,
    epsilon: i64,
) -> Result<LemmaVerdict, AnalysisError> {
    if k < 1 {
        return Err(AnalysisError::InvalidK);
    }
    expected_order(g, d, k, epsilon)?;
    let lemma = LemmaId::SizeBounds;
    let hypothesis_met =
        min_out_degree(g) >= d && g.is_k_geodetic(k).is_ok() && is_out_regular(g, d);
    let report = outlier_report_unchecked(g, d, k);
    let bound = epsilon * d as i64;
    for (s_prime, size) in [(false, report.s_set.len()), (true, report.s_prime_set.len())] {
        if size as i64 > bound {
            return Ok(LemmaVerdict::fail(
                lemma,
                hypothesis_met,
                LemmaWitness::SetTooLarge { s_prime, size, bound },
            ));
        }
    }
    Ok(LemmaVerdict::pass(lemma, hypothesis_met))
}

/// Every `v'` in S' has in-degree in `[d+1, d+eps]`.
pub fn check_in_degree_range(
    g: &Digraph,
    d: usize,
    k: usize,
    epsilon: i64,
) -> Result<LemmaVerdict, AnalysisError> {
    if k < 1 {
        return Err(AnalysisError::InvalidK);
    }
    expected_order(g, d, k, epsilon)?;
    let lemma = LemmaId::InDegreeRange;
    let hypothesis_met =
        min_out_degree(g) >= d && g.is_k_geodetic(k).is_ok() && is_out_regular(g, d);
    let (_, in_deg) = g.degrees();
    let low = d + 1;
    let high = d as i64 + epsilon;
    for v in 0..g.n() {
        if in_deg[v] > d && (in_deg[v] < low || in_deg[v] as i64 > high) {
            return Ok(LemmaVerdict::fail(
                lemma,
                hypothesis_met,
                LemmaWitness::InDegreeOutOfRange { vertex: v, in_degree: in_deg[v], low, high },
            ));
        }
    }
    Ok(LemmaVerdict::pass(lemma, hypothesis_met))
}

/// In-degree deficits below `d` equal the surpluses above `d`; for an
/// out-regular digraph of degree `d` this is the handshake identity.
pub fn check_degree_balance(g: &Digraph, d: usize) -> LemmaVerdict {
    let lemma = LemmaId::DegreeBalance;
    let hypothesis_met = is_out_regular(g, d);
    let (_, in_deg) = g.degrees();
    let deficit: usize = in_deg.iter().filter(|&&x| x < d).map(|&x| d - x).sum();
    let surplus: usize = in_deg.iter().filter(|&&x| x > d).map(|&x| x - d).sum();
    if deficit == surplus {
        LemmaVerdict::pass(lemma, hypothesis_met)
    } else {
        LemmaVerdict::fail(
            lemma,
            hypothesis_met,
            LemmaWitness::UnbalancedDegrees { deficit, surplus },
        )
    }
}

/// When some `v'` reaches in-degree `d+eps`, every distinct outlier set
/// must lie inside `N-(v')`.
pub fn check_max_in_degree_outlier_containment(
    g: &Digraph,
    d: usize,
    k: usize,
    epsilon: i64,
) -> Result<LemmaVerdict, AnalysisError> {
    if k < 1 {
        return Err(AnalysisError::InvalidK);
    }
    expected_order(g, d, k, epsilon)?;
    let lemma = LemmaId::MaxInDegreeOutlierContainment;
    let hypothesis_met =
        min_out_degree(g) >= d && g.is_k_geodetic(k).is_ok() && is_out_regular(g, d);
    let report = outlier_report_unchecked(g, d, k);
    let (_, in_deg) = g.degrees();
    for v_prime in 0..g.n() {
        if in_deg[v_prime] as i64 != d as i64 + epsilon || in_deg[v_prime] <= d {
            continue;
        }
        let in_nbrs: BTreeSet<usize> = g.in_neighbors(v_prime).into_iter().collect();
        for omega in report.omega_census.keys() {
            if let Some(&outlier) = omega.iter().find(|o| !in_nbrs.contains(o)) {
                return Ok(LemmaVerdict::fail(
                    lemma,
                    hypothesis_met,
                    LemmaWitness::OutlierOutsideInNeighborhood {
                        v_prime,
                        omega: omega.clone(),
                        outlier,
                    },
                ));
            }
        }
    }
    Ok(LemmaVerdict::pass(lemma, hypothesis_met))
}

/// No pair of vertices with identical out-neighbourhoods may be hit by
/// every outlier set; rejecting non-geodetic input, since the statement
/// is about genuine outlier sets.
///
/// Stated for `(2,k,+2)`-digraphs; other `d`/excess combinations are
/// evaluated with `hypothesis_met = false`.
pub fn check_amalgamation_lemma(
    g: &Digraph,
    d: usize,
    k: usize,
) -> Result<LemmaVerdict, AnalysisError> {
    let report = outlier_report(g, d, k)?;
    let lemma = LemmaId::Amalgamation;
    let hypothesis_met = d == 2 && report.epsilon == 2 && min_out_degree(g) >= d;
    for u1 in 0..g.n() {
        for u2 in u1 + 1..g.n() {
            if g.out_neighbors(u1) != g.out_neighbors(u2) {
                continue;
            }
            let every_omega_hits = report
                .omega_census
                .keys()
                .all(|omega| omega.binary_search(&u1).is_ok() || omega.binary_search(&u2).is_ok());
            if every_omega_hits {
                return Ok(LemmaVerdict::fail(
                    lemma,
                    hypothesis_met,
                    LemmaWitness::TwinPair { u1, u2 },
                ));
            }
        }
    }
    Ok(LemmaVerdict::pass(lemma, hypothesis_met))
}

/// Runs all eight checks with `epsilon` derived from the order. Fails up
/// front when the digraph is not k-geodetic.
pub fn lemma_suite(g: &Digraph, d: usize, k: usize) -> Result<Vec<LemmaVerdict>, AnalysisError> {
    if k < 1 {
        return Err(AnalysisError::InvalidK);
    }
    if let Err(witness) = g.is_k_geodetic(k) {
        return Err(AnalysisError::NotGeodetic { k, witness });
    }
    let epsilon = g.excess(d as u64, k as i64);
    Ok(vec![
        check_out_regularity_threshold(g, d, k, epsilon)?,
        check_s_outlier_containment(g, d, k)?,
        check_s_prime_neighbor_containment(g, d, k)?,
        check_size_bounds(g, d, k, epsilon)?,
        check_in_degree_range(g, d, k, epsilon)?,
        check_degree_balance(g, d),
        check_max_in_degree_outlier_containment(g, d, k, epsilon)?,
        check_amalgamation_lemma(g, d, k)?,
    ])
}
