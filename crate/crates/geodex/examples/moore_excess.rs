//! Moore bounds and the excess of the classical families.
//!
//! ```text
//! cargo run --release --example moore_excess
//! ```

use geodex::{complete_digraph, directed_cycle, moore_bound};

fn main() {
    println!("Moore bound M(d,k) = 1 + d + d^2 + ... + d^k");
    println!();
    print!("{:>4}", "d\\k");
    for k in 1..=6 {
        print!("{k:>10}");
    }
    println!();
    for d in 1..=5u64 {
        print!("{d:>4}");
        for k in 1..=6i64 {
            print!("{:>10}", moore_bound(d, k).unwrap());
        }
        println!();
    }
    println!();

    // the only Moore digraphs: complete digraphs (k = 1) and cycles (d = 1)
    for m in 2..=6 {
        let g = complete_digraph(m).unwrap();
        println!(
            "complete digraph K_{m}: order {}, excess(d={}, k=1) = {}",
            g.n(),
            m - 1,
            g.excess((m - 1) as u64, 1)
        );
    }
    println!();
    for m in 3..=8 {
        let g = directed_cycle(m).unwrap();
        println!(
            "directed {m}-cycle: order {}, excess(d=1, k={}) = {}",
            g.n(),
            m - 1,
            g.excess(1, (m - 1) as i64)
        );
    }
}
