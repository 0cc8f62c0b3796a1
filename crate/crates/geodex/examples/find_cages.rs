//! Exhaustive search for the smallest 2-geodetic digraphs with minimum
//! out-degree 2.
//!
//! Excess 0 would be a Moore digraph (none exist for d = k = 2), and
//! excess 1 turns out to be impossible as well, so the geodetic cages for
//! d = k = 2 live at excess 2: exactly two classes, both diregular.
//!
//! ```text
//! cargo run --release --example find_cages
//! ```

use std::time::Instant;

use geodex::{enumerate, render, SearchSpec};

fn main() {
    for excess in 0..=2 {
        let spec = SearchSpec::new(2, 2, excess).unwrap();
        let start = Instant::now();
        let outcome = enumerate(&spec).unwrap();
        println!(
            "d=2, k=2, excess {excess} (order {}): {} class(es) in {:?}",
            spec.order().unwrap(),
            outcome.summary.count,
            start.elapsed()
        );
        for hit in &outcome.hits {
            let regularity = hit.digraph.regularity(2);
            println!(
                "  class {} ({})",
                hit.form.hex(),
                if regularity.diregular { "diregular" } else { "non-diregular" }
            );
            for line in render(&hit.digraph).lines() {
                println!("    {line}");
            }
        }
    }
}
