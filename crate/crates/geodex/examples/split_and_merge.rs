//! Vertex splitting and amalgamation: trading one unit of excess for
//! non-diregularity, and merging back.
//!
//! Splitting a vertex of a (d,k,+e)-digraph yields a non-diregular
//! (d,k,+(e+1))-digraph; applied to a cage this produces the smallest
//! possible non-diregular 2-geodetic digraphs with minimum out-degree 2,
//! which therefore have order ten. Amalgamating the twin pair undoes the
//! split up to isomorphism.
//!
//! ```text
//! cargo run --release --example split_and_merge
//! ```

use geodex::{amalgamate, canonical_form, enumerate, vertex_split, SearchSpec};

fn main() {
    let outcome = enumerate(&SearchSpec::new(2, 2, 2).unwrap()).unwrap();
    for (index, hit) in outcome.hits.iter().enumerate() {
        let cage = &hit.digraph;
        println!("cage {index}: order {}, excess {}", cage.n(), cage.excess(2, 2));
        for r in 0..=2usize {
            let split = vertex_split(cage, 0, r, None).unwrap();
            let regularity = split.regularity(2);
            println!(
                "  split vertex 0, retain {r} in-arc(s): order {}, excess {}, \
                 2-geodetic: {}, diregular: {}, in-degree sequence {:?}",
                split.n(),
                split.excess(2, 2),
                split.is_k_geodetic(2).is_ok(),
                regularity.diregular,
                regularity.in_degree_sequence,
            );
            let merged = amalgamate(&split, 0, cage.n()).unwrap();
            let restored = canonical_form(&merged.digraph) == canonical_form(cage);
            println!("    amalgamate(0, {}) restores the cage: {restored}", cage.n());
        }
    }
}
