//! Probe searches at k = 3: the smallest excess of a 3-geodetic digraph
//! with minimum out-degree 2.
//!
//! Whether (2,k,+3)-digraphs exist for k >= 3 is an open question; this
//! probe reports what exhaustive search finds at k = 3 (orders 16 to 18)
//! and asserts nothing. For every excess below M(2,2) = 7 the searched
//! digraphs are necessarily out-regular, so the out-degree-2 restriction
//! loses nothing.
//!
//! ```text
//! cargo run --release --example open_probe
//! ```

use std::time::Instant;

use geodex::search::{enumerate_with_guard, SearchSpec};

fn main() {
    println!("3-geodetic digraphs with minimum out-degree 2, by excess:");
    for excess in 1..=3 {
        let spec = SearchSpec::new(2, 3, excess).unwrap();
        let order = spec.order().unwrap();
        let start = Instant::now();
        let outcome = enumerate_with_guard(&spec, order).unwrap();
        println!(
            "  excess {excess} (order {order}): {} class(es) in {:?}{}",
            outcome.summary.count,
            start.elapsed(),
            if outcome.summary.count > 0 && outcome.summary.all_diregular {
                ", all diregular"
            } else {
                ""
            }
        );
        for hit in &outcome.hits {
            println!("    {}", hit.form.hex());
        }
    }
    println!();
    println!("(findings only; nothing here is asserted by the test suite)");
}
