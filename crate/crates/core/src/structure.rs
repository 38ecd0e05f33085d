//! Structural predicates on neighborhoods used by the corpus verifier.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graph::Graph;
use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("S must be a subset of N(x) \\ {{y}}")]
    BadSubset,
    #[error("degrees must satisfy d_x <= d_y")]
    UnorderedDegrees,
}

/// Neighborhood expansion inequality: with `s = |S|`, `k = |S ∩ N(y)|`,
/// evaluates
/// `|N(S) ∩ N(y)| > (s/d_x)·d_y - (k + 1 + |N(x,y)|) + |N(S) ∩ N(x,y)|`.
/// Holds on every edge of a positively curved outerplanar graph.
pub fn lemma1_check(
    g: &Graph,
    x: usize,
    y: usize,
    subset: &[usize],
) -> Result<bool, StructureError> {
    if !g.has_edge(x, y) {
        return Err(StructureError::NotAnEdge(x, y));
    }
    if g.degree(x) > g.degree(y) {
        return Err(StructureError::UnorderedDegrees);
    }
    let s_set: BTreeSet<usize> = subset.iter().copied().collect();
    for &v in &s_set {
        if v == y || !g.has_edge(x, v) {
            return Err(StructureError::BadSubset);
        }
    }

    let n_of_s: BTreeSet<usize> = s_set
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .collect();
    let n_y: BTreeSet<usize> = g.neighbors(y).iter().copied().collect();
    let common_xy: BTreeSet<usize> = g.common_neighbors(x, y).into_iter().collect();

    let s = s_set.len() as i64;
    let k = s_set.intersection(&n_y).count() as i64;
    let lhs = n_of_s.intersection(&n_y).count() as i64;
    let ns_cap_common = n_of_s.intersection(&common_xy).count() as i64;

    let rhs = Rat::new(
        BigInt::from(s * g.degree(y) as i64),
        BigInt::from(g.degree(x)),
    ) + Rat::from(BigInt::from(
        -(k + 1 + common_xy.len() as i64) + ns_cap_common,
    ));
    Ok(Rat::from(BigInt::from(lhs)) > rhs)
}

/// Whether the subgraph induced by `N(x)` is a single path on `d_x`
/// vertices (the neighborhood shape forced in maximal outerplanar graphs).
pub fn neighborhood_is_path(g: &Graph, x: usize) -> bool {
    let nbrs: Vec<usize> = g.neighbors(x).to_vec();
    let d = nbrs.len();
    if d == 0 {
        return false;
    }
    let inner_deg: Vec<usize> = nbrs
        .iter()
        .map(|&u| nbrs.iter().filter(|&&v| v != u && g.has_edge(u, v)).count())
        .collect();
    let edge_count: usize = inner_deg.iter().sum::<usize>() / 2;
    if edge_count != d - 1 || inner_deg.iter().any(|&deg| deg > 2) {
        return false;
    }
    // d-1 edges, max degree 2, connected <=> a single path.
    let mut seen = vec![false; d];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..d {
            if !seen[j] && g.has_edge(nbrs[i], nbrs[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&b| b)
}
