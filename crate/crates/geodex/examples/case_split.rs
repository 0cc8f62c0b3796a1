//! Constrained searches over candidate in-degree sequences.
//!
//! A non-diregular (2,2,+2)-digraph would have to realise one of a short
//! list of in-degree sequences on 9 vertices. Each constrained search
//! comes back empty, and the unconstrained search finds only diregular
//! classes, so no non-diregular (2,2,+2)-digraph exists.
//!
//! ```text
//! cargo run --release --example case_split
//! ```

use std::time::Instant;

use geodex::{enumerate, DiregularFilter, SearchSpec};

fn main() {
    let sequences: [&[usize]; 6] = [
        &[1, 2, 2, 2, 2, 2, 2, 2, 3],
        &[1, 1, 2, 2, 2, 2, 2, 3, 3],
        &[1, 1, 1, 2, 2, 2, 3, 3, 3],
        &[1, 1, 1, 1, 2, 3, 3, 3, 3],
        &[1, 1, 1, 1, 2, 2, 2, 4, 4],
        &[1, 1, 1, 1, 2, 2, 3, 3, 4],
    ];
    for seq in sequences {
        let mut spec = SearchSpec::new(2, 2, 2).unwrap();
        spec.in_degree_sequence = Some(seq.to_vec());
        let start = Instant::now();
        let outcome = enumerate(&spec).unwrap();
        println!(
            "in-degree sequence {seq:?}: {} class(es) in {:?}",
            outcome.summary.count,
            start.elapsed()
        );
    }

    let mut spec = SearchSpec::new(2, 2, 2).unwrap();
    spec.diregular_filter = DiregularFilter::OnlyNonDiregular;
    let non_diregular = enumerate(&spec).unwrap();
    println!();
    println!(
        "non-diregular (2,2,+2)-digraphs overall: {}",
        non_diregular.summary.count
    );
}
