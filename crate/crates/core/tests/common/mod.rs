//! Shared test oracles, independent of the library's solver paths.

// Each integration test binary compiles this module separately and not
// every binary uses every oracle.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use outerplanar_curvature::graph::Graph;
use outerplanar_curvature::transport::ProbabilityMeasure;
use outerplanar_curvature::Rat;

/// Brute-force Wasserstein-1 oracle: scale both measures to integer
/// marginals and enumerate every nonnegative integer transport matrix with
/// those marginals. Integral marginals always admit an integral optimum,
/// so the minimum over this finite set is exact.
pub fn brute_force_wasserstein(g: &Graph, m1: &ProbabilityMeasure, m2: &ProbabilityMeasure) -> Rat {
    let sources = m1.support_vertices();
    let sinks = m2.support_vertices();

    let mut scale = BigInt::one();
    for (_, m) in m1.support().chain(m2.support()) {
        scale = scale.lcm(m.denom());
    }
    let scaled = |m: &Rat| -> i64 {
        let v: BigInt = m.numer() * (&scale / m.denom());
        i64::try_from(&v).expect("oracle instances stay small")
    };
    let supply: Vec<i64> = m1.support().map(|(_, m)| scaled(m)).collect();
    let demand: Vec<i64> = m2.support().map(|(_, m)| scaled(m)).collect();

    let cost: Vec<Vec<i64>> = sources
        .iter()
        .map(|&u| {
            sinks
                .iter()
                .map(|&v| g.dist(u, v).expect("oracle supports must be connected") as i64)
                .collect()
        })
        .collect();

    fn search(
        cell: usize,
        cols: usize,
        row_left: &mut Vec<i64>,
        col_left: &mut Vec<i64>,
        cost: &[Vec<i64>],
        acc: i64,
        best: &mut Option<i64>,
    ) {
        let rows = row_left.len();
        if cell == rows * cols {
            if row_left.iter().all(|&r| r == 0)
                && col_left.iter().all(|&c| c == 0)
                && best.is_none_or(|b| acc < b)
            {
                *best = Some(acc);
            }
            return;
        }
        let (i, j) = (cell / cols, cell % cols);
        // Last column of a row must absorb the remaining row mass.
        let max_f = row_left[i].min(col_left[j]);
        let forced = if j == cols - 1 { row_left[i] } else { 0 };
        if forced > max_f {
            return;
        }
        let range = if j == cols - 1 {
            forced..=forced
        } else {
            0..=max_f
        };
        for f in range {
            row_left[i] -= f;
            col_left[j] -= f;
            search(
                cell + 1,
                cols,
                row_left,
                col_left,
                cost,
                acc + f * cost[i][j],
                best,
            );
            row_left[i] += f;
            col_left[j] += f;
        }
    }

    let mut best = None;
    let mut row_left = supply;
    let mut col_left = demand;
    let cols = sinks.len();
    search(0, cols, &mut row_left, &mut col_left, &cost, 0, &mut best);
    Rat::new(
        BigInt::from(best.expect("balanced instance always has a feasible matrix")),
        scale,
    )
}

/// Brute-force graph isomorphism by trying every degree-respecting vertex
/// bijection. Exponential; intended for n <= 8.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }

    fn extend(a: &Graph, b: &Graph, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>) -> bool {
        let v = map.iter().position(Option::is_none);
        let Some(v) = v else { return true };
        for t in 0..b.n() {
            if used[t] || a.degree(v) != b.degree(t) {
                continue;
            }
            let consistent = (0..v).all(|u| {
                let Some(mu) = map[u] else { return true };
                a.has_edge(u, v) == b.has_edge(mu, t)
            });
            if consistent {
                map[v] = Some(t);
                used[t] = true;
                if extend(a, b, map, used) {
                    return true;
                }
                map[v] = None;
                used[t] = false;
            }
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n];
    extend(a, b, &mut map, &mut used)
}

/// Probability measure from integer weights on the given vertices.
pub fn weighted_measure(weights: &[(usize, u32)]) -> ProbabilityMeasure {
    let total: u32 = weights.iter().map(|&(_, w)| w).sum();
    assert!(total > 0);
    ProbabilityMeasure::new(
        weights
            .iter()
            .map(|&(v, w)| (v, Rat::new(BigInt::from(w), BigInt::from(total)))),
    )
    .expect("positive integer weights normalize to a measure")
}
