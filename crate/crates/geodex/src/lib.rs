//! Analysis, construction and exhaustive search of k-geodetic digraphs
//! near the directed Moore bound.
//!
//! A digraph is k-geodetic when every ordered vertex pair is joined by at
//! most one walk of length at most `k` (closed walks at a single vertex
//! included). Such a digraph with minimum out-degree `d` has at least
//! `M(d,k) = 1 + d + ... + d^k` vertices; the difference between its
//! order and `M(d,k)` is its excess. This crate provides:
//!
//! - [`digraph`]: the [`Digraph`] type with reachability, degree and
//!   geodecity primitives, including walk-pair witnesses for failures;
//! - [`analysis`]: outlier sets, in-degree classes and the structural
//!   lemma suite for digraphs of small excess, every check replayable;
//! - [`construct`]: canonical families plus the amalgamation and
//!   vertex-splitting transformations that shift excess by one;
//! - [`canon`]: canonical forms for "up to isomorphism" bookkeeping;
//! - [`search`]: isomorph-free exhaustive enumeration with prescribed
//!   degree, excess and in-degree constraints;
//! - [`format`] / [`cli`]: a plain-text digraph file format and the
//!   `geodex` command-line driver.
//!
//! The `examples/` directory exercises each capability end to end; start
//! with `cargo run --release --example find_cages`.

pub mod analysis;
pub mod canon;
pub mod cli;
pub mod construct;
pub mod digraph;
pub mod format;
pub mod search;

pub use analysis::{
    lemma_suite, outlier_report, AnalysisError, LemmaId, LemmaVerdict, LemmaWitness,
    OutlierReport,
};
pub use canon::{canonical_form, canonicalize, CanonicalForm};
pub use construct::{
    amalgamate, complete_digraph, directed_cycle, vertex_split, Amalgamation, ConstructError,
};
pub use digraph::{moore_bound, Digraph, DigraphError, GeodecityWitness, Regularity};
pub use format::{parse, render, ParseError};
pub use search::{
    enumerate, enumerate_with_guard, DiregularFilter, SearchError, SearchHit, SearchOutcome,
    SearchSpec, SearchSummary, DEFAULT_ORDER_GUARD,
};
