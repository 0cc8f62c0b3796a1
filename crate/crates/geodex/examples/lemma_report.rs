//! Outlier structure and the lemma suite, evaluated on a cage found by
//! the search.
//!
//! ```text
//! cargo run --release --example lemma_report
//! ```

use geodex::{enumerate, lemma_suite, outlier_report, SearchSpec};

fn main() {
    let outcome = enumerate(&SearchSpec::new(2, 2, 2).unwrap()).unwrap();
    let cage = &outcome.hits[0].digraph;

    let report = outlier_report(cage, 2, 2).unwrap();
    println!("order {}, excess {}", cage.n(), report.epsilon);
    println!("S = {:?}, S' = {:?}", report.s_set, report.s_prime_set);
    for (u, outliers) in report.outliers.iter().enumerate() {
        println!("O({u}) = {outliers:?}");
    }
    println!("omega census:");
    for (omega, count) in &report.omega_census {
        println!("  {omega:?} x {count}");
    }
    println!();

    // every check is a theorem under its hypotheses, so a failing verdict
    // on a verified-geodetic, out-regular input would be a bug
    for verdict in lemma_suite(cage, 2, 2).unwrap() {
        println!(
            "{:<36} {}{}",
            verdict.lemma.to_string(),
            if verdict.holds { "holds" } else { "FAILS" },
            if verdict.hypothesis_met { "" } else { " (hypothesis not met)" },
        );
    }
}
