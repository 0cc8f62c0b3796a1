//! Engine-level properties: completeness against brute force at toy
//! scale, soundness of every emitted class, admissibility of the search
//! pruning, and the structural invariants that search output must carry.

mod common;

use std::collections::BTreeSet;

use geodex::analysis::{lemma_suite, LemmaId};
use geodex::canon::canonical_form;
use geodex::digraph::{moore_bound, Digraph};
use geodex::search::{enumerate, DiregularFilter, SearchSpec};

use rand::SeedableRng;

/// Independent class count: enumerate every labelled digraph whose
/// out-degrees satisfy the spec's policy, filter by the spec predicates,
/// and bucket by canonical form.
fn brute_force_class_count(spec: &SearchSpec) -> usize {
    let n = spec.order().expect("toy order");
    let mut forms = BTreeSet::new();
    let out_degree_range: Vec<usize> = if spec.out_regular_exactly_d {
        vec![spec.d]
    } else {
        (spec.d..n).collect()
    };
    let mut lists: Vec<Vec<usize>> = Vec::new();
    enumerate_out_sets(n, 0, &out_degree_range, &mut lists, &mut |lists| {
        let g = Digraph::from_out_lists(lists.to_vec()).expect("simple digraph");
        if g.is_k_geodetic(spec.k).is_err() {
            return;
        }
        let (out_deg, in_deg) = g.degrees();
        if let Some(seq) = &spec.in_degree_sequence {
            let mut sorted = in_deg.clone();
            sorted.sort_unstable();
            if &sorted != seq {
                return;
            }
        }
        let diregular =
            out_deg.iter().all(|&x| x == spec.d) && in_deg.iter().all(|&x| x == spec.d);
        match spec.diregular_filter {
            DiregularFilter::OnlyDiregular if !diregular => return,
            DiregularFilter::OnlyNonDiregular if diregular => return,
            _ => {}
        }
        forms.insert(canonical_form(&g));
    });
    forms.len()
}

fn enumerate_out_sets(
    n: usize,
    vertex: usize,
    degrees: &[usize],
    lists: &mut Vec<Vec<usize>>,
    visit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if vertex == n {
        visit(lists);
        return;
    }
    let candidates: Vec<usize> = (0..n).filter(|&v| v != vertex).collect();
    for &degree in degrees {
        let mut chosen = Vec::with_capacity(degree);
        subsets(&candidates, degree, &mut chosen, &mut |set| {
            lists.push(set.to_vec());
            enumerate_out_sets(n, vertex + 1, degrees, lists, visit);
            lists.pop();
        });
    }
}

fn subsets(
    items: &[usize],
    want: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if want == 0 {
        visit(chosen);
        return;
    }
    if items.len() < want {
        return;
    }
    for idx in 0..=items.len() - want {
        chosen.push(items[idx]);
        subsets(&items[idx + 1..], want - 1, chosen, visit);
        chosen.pop();
    }
}

#[test]
fn completeness_matches_brute_force_at_toy_scale() {
    // (d, k, epsilon) with order M(d,k) + epsilon at most 5
    let cases = [(1, 1, 1), (1, 2, 1), (1, 3, 0), (2, 1, 0), (2, 1, 1), (2, 1, 2), (1, 2, 2)];
    for (d, k, epsilon) in cases {
        let spec = SearchSpec::new(d, k, epsilon).expect("valid spec");
        let engine_count = enumerate(&spec).expect("within guard").summary.count;
        let brute_count = brute_force_class_count(&spec);
        assert_eq!(
            engine_count, brute_count,
            "class count mismatch for d={d}, k={k}, epsilon={epsilon}"
        );
    }
}

#[test]
fn completeness_holds_under_filters() {
    for filter in [DiregularFilter::OnlyDiregular, DiregularFilter::OnlyNonDiregular] {
        let mut spec = SearchSpec::new(1, 2, 1).expect("valid spec");
        spec.diregular_filter = filter;
        assert_eq!(
            enumerate(&spec).unwrap().summary.count,
            brute_force_class_count(&spec)
        );
    }
    let mut spec = SearchSpec::new(2, 1, 1).expect("valid spec");
    spec.in_degree_sequence = Some(vec![1, 2, 2, 3]);
    assert_eq!(
        enumerate(&spec).unwrap().summary.count,
        brute_force_class_count(&spec)
    );
}

#[test]
fn emitted_classes_are_sound_and_isomorph_free() {
    for (d, k, epsilon) in [(2usize, 2usize, 2usize), (1, 2, 1), (2, 1, 2)] {
        let spec = SearchSpec::new(d, k, epsilon).unwrap();
        let outcome = enumerate(&spec).unwrap();
        let expected_order =
            moore_bound(d as u64, k as i64).unwrap() as usize + epsilon;
        let mut seen = BTreeSet::new();
        for hit in &outcome.hits {
            assert_eq!(hit.digraph.n(), expected_order);
            assert!(hit.digraph.is_k_geodetic(k).is_ok(), "emitted class re-passes the oracle");
            let (out_deg, _) = hit.digraph.degrees();
            assert!(out_deg.iter().all(|&x| x >= d));
            assert_eq!(canonical_form(&hit.digraph), hit.form, "hit is canonically labelled");
            assert!(seen.insert(hit.form.clone()), "duplicate isomorphism class emitted");
        }
        let mut sorted: Vec<_> = outcome.hits.iter().map(|h| h.form.clone()).collect();
        sorted.sort();
        assert_eq!(
            sorted,
            outcome.hits.iter().map(|h| h.form.clone()).collect::<Vec<_>>(),
            "stream is sorted by canonical form"
        );
    }
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let spec = SearchSpec::new(2, 2, 2).unwrap();
    let mut outcomes = Vec::new();
    for threads in [1usize, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        outcomes.push(pool.install(|| enumerate(&spec).unwrap()));
    }
    assert_eq!(outcomes[0], outcomes[1]);
    assert_eq!(outcomes[1], outcomes[2]);
}

/// Truncations of a valid digraph must survive the search pruning: the
/// prune only fires on duplicated walks, which are monotone in the arc
/// set. The partial states of the engine are exactly digraphs with a
/// suffix of empty out-sets, so geodecity of every prefix is the
/// admissibility statement.
#[test]
fn pruning_admits_every_prefix_of_valid_results() {
    let spec = SearchSpec::new(2, 2, 2).unwrap();
    let cages = enumerate(&spec).unwrap();
    assert_eq!(cages.hits.len(), 2);
    for hit in &cages.hits {
        let full = &hit.digraph;
        let target_seq = full.regularity(2).in_degree_sequence;
        for prefix_len in 0..=full.n() {
            let lists: Vec<Vec<usize>> = (0..full.n())
                .map(|u| {
                    if u < prefix_len {
                        full.out_neighbors(u).to_vec()
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            let partial = Digraph::from_out_lists(lists).unwrap();
            assert!(
                partial.is_k_geodetic(2).is_ok(),
                "prefix of length {prefix_len} was rejected by the geodecity prune"
            );
            // in-degree profile of the prefix still majorises the target
            let (_, partial_in) = partial.degrees();
            let mut desc = partial_in.clone();
            desc.sort_unstable_by(|a, b| b.cmp(a));
            for (c, t) in desc.iter().zip(target_seq.iter().rev()) {
                assert!(c <= t, "prefix in-degrees cannot complete the cage sequence");
            }
        }
    }
}

#[test]
fn out_regular_geodetic_outputs_reach_the_moore_count() {
    // for an out-regular k-geodetic digraph every vertex reaches exactly
    // M(d,k) vertices within k steps
    let cases = [(2usize, 2usize, 2usize), (2, 1, 0), (1, 2, 1), (1, 5, 0)];
    for (d, k, epsilon) in cases {
        let outcome = enumerate(&SearchSpec::new(d, k, epsilon).unwrap()).unwrap();
        let m = moore_bound(d as u64, k as i64).unwrap() as usize;
        for hit in &outcome.hits {
            if !hit.digraph.regularity(d).out_regular {
                continue;
            }
            for u in 0..hit.digraph.n() {
                assert_eq!(
                    hit.digraph.t_set(u, k as i64).unwrap().len(),
                    m,
                    "reach set of vertex {u} misses the Moore count"
                );
            }
        }
    }
}

#[test]
fn lemma_suite_holds_on_every_out_regular_search_output() {
    let structural = [
        LemmaId::OutRegularityThreshold,
        LemmaId::SOutlierContainment,
        LemmaId::SPrimeNeighborContainment,
        LemmaId::SizeBounds,
        LemmaId::InDegreeRange,
        LemmaId::DegreeBalance,
        LemmaId::MaxInDegreeOutlierContainment,
    ];
    for (d, k, epsilon) in [(2usize, 2usize, 2usize), (2, 1, 1), (1, 2, 1), (1, 3, 1)] {
        let outcome = enumerate(&SearchSpec::new(d, k, epsilon).unwrap()).unwrap();
        for hit in &outcome.hits {
            if !hit.digraph.regularity(d).out_regular {
                continue;
            }
            for verdict in lemma_suite(&hit.digraph, d, k).unwrap() {
                if structural.contains(&verdict.lemma) {
                    assert!(
                        verdict.holds,
                        "{} failed on an out-regular search output (d={d}, k={k}, eps={epsilon}): {:?}",
                        verdict.lemma,
                        verdict.witness
                    );
                }
            }
        }
    }
}

/// Twin pairs eligible for amalgamation: identical out-neighbourhoods,
/// non-adjacent, and jointly hit by every outlier set (equivalently, no
/// vertex reaches both twins within k).
fn eligible_twin_pairs(g: &Digraph, k: usize) -> Vec<(usize, usize)> {
    let reach: Vec<BTreeSet<usize>> =
        (0..g.n()).map(|u| g.t_set(u, k as i64).unwrap()).collect();
    let mut pairs = Vec::new();
    for u1 in 0..g.n() {
        for u2 in u1 + 1..g.n() {
            if g.out_neighbors(u1) != g.out_neighbors(u2)
                || g.has_arc(u1, u2)
                || g.has_arc(u2, u1)
            {
                continue;
            }
            if reach.iter().all(|r| !(r.contains(&u1) && r.contains(&u2))) {
                pairs.push((u1, u2));
            }
        }
    }
    pairs
}

/// Merging an eligible twin pair of a k-geodetic digraph stays
/// k-geodetic.
#[test]
fn amalgamation_preserves_geodecity_on_eligible_pairs() {
    let mut corpus: Vec<(Digraph, usize)> = Vec::new();
    // split derivatives always carry the eligible pair (u, n)
    for (d, k, epsilon) in [(2usize, 2usize, 2usize), (1, 2, 1), (1, 4, 0)] {
        for hit in enumerate(&SearchSpec::new(d, k, epsilon).unwrap()).unwrap().hits {
            for u in 0..hit.digraph.n() {
                if hit.digraph.in_neighbors(u).len() >= d {
                    for r in 0..=d {
                        let split = geodex::vertex_split(&hit.digraph, u, r, None).unwrap();
                        corpus.push((split, k));
                    }
                }
            }
            corpus.push((hit.digraph, k));
        }
    }
    // random 1-geodetic digraphs contribute twin pairs as well
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7717);
    for _ in 0..200 {
        let g = common::random_digraph(&mut rng, 6, 0.3);
        if g.is_k_geodetic(1).is_ok() {
            corpus.push((g, 1));
        }
    }

    let mut merged_count = 0usize;
    for (g, k) in &corpus {
        for (u1, u2) in eligible_twin_pairs(g, *k) {
            let merged = geodex::amalgamate(g, u1, u2).unwrap();
            assert_eq!(merged.digraph.n(), g.n() - 1);
            assert!(
                merged.digraph.is_k_geodetic(*k).is_ok(),
                "merging eligible twins {u1},{u2} broke {k}-geodecity"
            );
            merged_count += 1;
        }
    }
    assert!(merged_count >= 50, "corpus produced only {merged_count} eligible pairs");
}

#[test]
fn outlier_symmetry_and_census_on_random_geodetic_digraphs() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0dd5eed);
    let mut analysed = 0usize;
    while analysed < 120 {
        let n = 4 + (analysed % 5);
        let g = common::random_digraph(&mut rng, n, 0.25);
        let k = 1 + analysed % 3;
        if g.is_k_geodetic(k).is_err() {
            // replayable witness on every failure
            let witness = g.is_k_geodetic(k).unwrap_err();
            assert!(witness.verify(&g, k));
            analysed += 1;
            continue;
        }
        let report = geodex::analysis::outlier_report(&g, 2, k).unwrap();
        for u in 0..n {
            for &v in &report.outliers[u] {
                assert!(report.inverse_outliers[v].contains(&u));
            }
            for &v in &report.inverse_outliers[u] {
                assert!(report.outliers[v].contains(&u));
            }
        }
        assert_eq!(report.omega_census.values().sum::<usize>(), n);
        analysed += 1;
    }
}

#[test]
fn geodecity_is_monotone_in_k() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xcafe);
    for round in 0..400 {
        let n = 3 + round % 6;
        let g = common::random_digraph(&mut rng, n, 0.3);
        let mut highest_pass = None;
        for k in (1..=4).rev() {
            if g.is_k_geodetic(k).is_ok() {
                highest_pass = Some(k);
                break;
            }
        }
        if let Some(k) = highest_pass {
            for j in 1..=k {
                assert!(
                    g.is_k_geodetic(j).is_ok(),
                    "pass at k={k} must imply pass at j={j}"
                );
            }
            // no closed walk of length <= k: the girth exceeds k
            let counts = common::walk_counts(&g, k);
            for u in 0..n {
                assert_eq!(counts[u][u], 1, "vertex {u} lies on a closed walk of length <= {k}");
            }
        }
    }
}
