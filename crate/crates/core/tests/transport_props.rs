//! Transport-layer properties: solver vs brute-force oracle, metric
//! axioms, and duality on random instances.

mod common;

use common::{brute_force_wasserstein, weighted_measure};
use proptest::prelude::*;

use outerplanar_curvature::graph::Graph;
use outerplanar_curvature::rat;
use outerplanar_curvature::transport::{lazy_walk_measure, verify_duality, wasserstein};

fn test_graphs() -> Vec<Graph> {
    vec![
        Graph::from_edges(2, &[(0, 1)]).unwrap(),
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(),
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap(),
        Graph::fan(6).unwrap(),
        Graph::fan(7).unwrap(),
        // 3x2 grid
        Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]).unwrap(),
    ]
}

/// Integer weights on up to three vertices with total exactly 6, so both
/// measures share the denominator 6 and the scaled oracle instance stays
/// tiny.
fn measure_strategy() -> impl Strategy<Value = Vec<(usize, u32)>> {
    (any::<[usize; 3]>(), 0u32..=5, 0u32..=5).prop_map(|(verts, a, b)| {
        let (a, b) = (a.min(6), b.min(6 - a.min(6)));
        let parts = [a, b, 6 - a - b];
        verts
            .iter()
            .zip(parts)
            .filter(|&(_, w)| w > 0)
            .map(|(&v, w)| (v, w))
            .collect()
    })
}

fn resolve(g: &Graph, ws: &[(usize, u32)]) -> Vec<(usize, u32)> {
    // Collapse duplicate vertices after clamping into range.
    let mut out: Vec<(usize, u32)> = Vec::new();
    for &(v, w) in ws {
        let v = v % g.n();
        match out.iter_mut().find(|(u, _)| *u == v) {
            Some((_, acc)) => *acc += w,
            None => out.push((v, w)),
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_matches_brute_force(
        gi in 0usize..7,
        w1 in measure_strategy(),
        w2 in measure_strategy(),
    ) {
        let graphs = test_graphs();
        let g = &graphs[gi];
        let m1 = weighted_measure(&resolve(g, &w1));
        let m2 = weighted_measure(&resolve(g, &w2));
        let c = wasserstein(g, &m1, &m2).unwrap();
        prop_assert_eq!(&c.cost, &brute_force_wasserstein(g, &m1, &m2));
        prop_assert!(verify_duality(g, &c, &m1, &m2));
        prop_assert!(c.has_marginals(&m1, &m2));
        prop_assert!(c.is_tight(g));
    }

    #[test]
    fn metric_axioms(
        gi in 0usize..7,
        w1 in measure_strategy(),
        w2 in measure_strategy(),
        w3 in measure_strategy(),
    ) {
        let graphs = test_graphs();
        let g = &graphs[gi];
        let m1 = weighted_measure(&resolve(g, &w1));
        let m2 = weighted_measure(&resolve(g, &w2));
        let m3 = weighted_measure(&resolve(g, &w3));

        let w12 = wasserstein(g, &m1, &m2).unwrap().cost;
        let w21 = wasserstein(g, &m2, &m1).unwrap().cost;
        prop_assert_eq!(&w12, &w21);

        prop_assert_eq!(wasserstein(g, &m1, &m1).unwrap().cost, rat(0, 1));

        let w13 = wasserstein(g, &m1, &m3).unwrap().cost;
        let w23 = wasserstein(g, &m2, &m3).unwrap().cost;
        prop_assert!(w13 <= w12 + w23);
    }
}

/// Lazy-walk instances against the oracle on graphs small enough that the
/// combined support stays within brute-force reach.
#[test]
fn lazy_walk_instances_match_oracle() {
    let small = vec![
        Graph::from_edges(2, &[(0, 1)]).unwrap(),
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(),
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap(),
    ];
    for g in small {
        for x in 0..g.n() {
            for y in 0..g.n() {
                for alpha in [rat(0, 1), rat(1, 3), rat(1, 2)] {
                    let m1 = lazy_walk_measure(&g, x, &alpha).unwrap();
                    let m2 = lazy_walk_measure(&g, y, &alpha).unwrap();
                    if m1.support_vertices().len() + m2.support_vertices().len() > 6 {
                        continue;
                    }
                    let c = wasserstein(&g, &m1, &m2).unwrap();
                    assert_eq!(c.cost, brute_force_wasserstein(&g, &m1, &m2));
                    assert!(verify_duality(&g, &c, &m1, &m2));
                    assert!(c.has_marginals(&m1, &m2));
                    assert!(c.is_tight(&g));
                }
            }
        }
    }
}
