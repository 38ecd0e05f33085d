//! Enumeration properties: the representative lists are complete,
//! duplicate-free, and self-consistent.

mod common;

use std::collections::BTreeSet;

use common::isomorphic;

use outerplanar_curvature::enumerate::{canonical_code, enumerate_triangulations, raw_count};
use outerplanar_curvature::graph::Graph;
use outerplanar_curvature::triangulation::{is_maximal_outerplanar, PolygonTriangulation};

const CLASS_COUNTS: [(usize, usize); 9] = [
    (3, 1),
    (4, 1),
    (5, 1),
    (6, 3),
    (7, 4),
    (8, 12),
    (9, 27),
    (10, 82),
    (11, 228),
];

#[test]
fn class_counts_match_known_sequence() {
    for (n, want) in CLASS_COUNTS {
        assert_eq!(
            enumerate_triangulations(n).unwrap().len(),
            want,
            "n = {}",
            n
        );
    }
}

#[test]
fn raw_counts_are_catalan() {
    let catalan = [1u64, 2, 5, 14, 42, 132, 429, 1430, 4862];
    for (i, &c) in catalan.iter().enumerate() {
        assert_eq!(raw_count(i + 3).unwrap(), c, "n = {}", i + 3);
    }
}

/// No two listed representatives are isomorphic (checked by brute-force
/// bijection search, feasible through n = 8).
#[test]
fn representatives_pairwise_nonisomorphic() {
    for n in 4..=8 {
        let graphs: Vec<Graph> = enumerate_triangulations(n)
            .unwrap()
            .iter()
            .map(PolygonTriangulation::to_graph)
            .collect();
        for i in 0..graphs.len() {
            for j in i + 1..graphs.len() {
                assert!(
                    !isomorphic(&graphs[i], &graphs[j]),
                    "representatives {} and {} at n = {} are isomorphic",
                    i,
                    j,
                    n
                );
            }
        }
    }
}

/// Every representative is itself maximal outerplanar, is a fixed point of
/// canonicalization, and round-trips through its string code.
#[test]
fn representatives_are_canonical_fixed_points() {
    for n in 3..=9 {
        for t in enumerate_triangulations(n).unwrap() {
            let g = t.to_graph();
            assert!(is_maximal_outerplanar(&g).is_some());
            assert_eq!(canonical_code(&t).0, t.code());
            assert_eq!(PolygonTriangulation::parse(&t.code()).unwrap(), t);
        }
    }
}

/// Completeness against an independent generator: every labeled graph on n
/// vertices with 2n-3 edges that passes the recognizer canonicalizes into
/// the enumerated list, and together they cover the whole list.
#[test]
fn enumeration_is_complete_small_n() {
    for n in 4..=6 {
        let listed: BTreeSet<String> = enumerate_triangulations(n)
            .unwrap()
            .iter()
            .map(|t| t.code())
            .collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let m = 2 * n - 3;
        let mut seen = BTreeSet::new();
        // All m-subsets of the possible edges, by bitmask.
        for mask in 0u32..1 << pairs.len() {
            if mask.count_ones() as usize != m {
                continue;
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if let Some(w) = is_maximal_outerplanar(&g) {
                let code = canonical_code(&w.triangulation).0;
                assert!(
                    listed.contains(&code),
                    "missing class {} at n = {}",
                    code,
                    n
                );
                seen.insert(code);
            }
        }
        assert_eq!(seen, listed, "n = {}", n);
    }
}

/// BFS distances over the corpus satisfy the triangle inequality and the
/// usual edge characterization.
#[test]
fn corpus_distances_are_metric() {
    for t in enumerate_triangulations(8).unwrap() {
        let g = t.to_graph();
        let n = g.n();
        for u in 0..n {
            assert_eq!(g.dist(u, u), Some(0));
            for v in 0..n {
                let duv = g.dist(u, v).unwrap();
                assert_eq!(duv == 1, g.has_edge(u, v));
                for w in 0..n {
                    assert!(g.dist(u, w).unwrap() <= duv + g.dist(v, w).unwrap());
                }
            }
        }
    }
}
