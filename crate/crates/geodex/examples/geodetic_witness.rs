//! Geodecity checking with violation witnesses.
//!
//! ```text
//! cargo run --release --example geodetic_witness
//! ```

use geodex::{complete_digraph, directed_cycle, Digraph};

fn show(name: &str, g: &Digraph, k: usize) {
    match g.is_k_geodetic(k) {
        Ok(()) => println!("{name} is {k}-geodetic"),
        Err(witness) => {
            let fmt = |walk: &[usize]| {
                walk.iter().map(usize::to_string).collect::<Vec<_>>().join(" -> ")
            };
            println!(
                "{name} is NOT {k}-geodetic: walks [{}] and [{}] both join {} to {}",
                fmt(&witness.walk_a),
                fmt(&witness.walk_b),
                witness.source,
                witness.target
            );
        }
    }
}

fn main() {
    let k3 = complete_digraph(3).unwrap();
    show("K_3", &k3, 1);
    // the 2-cycle 0 -> 1 -> 0 collides with the empty walk at 0
    show("K_3", &k3, 2);
    println!();

    let c3 = directed_cycle(3).unwrap();
    show("C_3", &c3, 2);
    show("C_3", &c3, 3);
    println!();

    // two distinct 2-walks between the same pair
    let diamond = Digraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 0)]).unwrap();
    show("diamond", &diamond, 2);
}
