//! Lin–Lu–Yau curvature of graph edges: integer 1-Lipschitz potential
//! search, the lazy-walk transport route, and combinatorial curvature.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::Graph;
use crate::transport::{lazy_walk_measure, verify_duality, wasserstein, TransportError};
use crate::triangulation::PolygonTriangulation;
use crate::{rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurvatureError {
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),
    #[error("labeling undefined on vertex {0}")]
    MissingLabel(usize),
    #[error("vertex {0} has no neighbors")]
    IsolatedVertex(usize),
    #[error("alpha-limit ratio did not stabilize below the scale cap")]
    NonStabilized,
    #[error(transparent)]
    Transport(#[from] TransportError),
}

/// Integer vertex labeling on `N[x] ∪ N[y]`, normalized to `f(x) = 0`,
/// `f(y) = 1`; 1-Lipschitz under full-graph distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialFunction {
    pub values: BTreeMap<usize, i64>,
}

impl PotentialFunction {
    /// Check all three invariants for the designated edge.
    pub fn is_valid(&self, g: &Graph, x: usize, y: usize) -> bool {
        if self.values.get(&x) != Some(&0) || self.values.get(&y) != Some(&1) {
            return false;
        }
        let dx_row = g.distances_from(x);
        let dy_row = g.distances_from(y);
        for (&v, &fv) in &self.values {
            let (Some(dvx), Some(dvy)) = (dx_row[v], dy_row[v]) else {
                return false;
            };
            let (dvx, dvy) = (dvx as i64, dvy as i64);
            if fv < (-dvx).max(1 - dvy) || fv > dvx.min(1 + dvy) {
                return false;
            }
        }
        for (&u, &fu) in &self.values {
            let row = g.distances_from(u);
            for (&v, &fv) in &self.values {
                match row[v] {
                    Some(d) => {
                        if (fu - fv).abs() > d as i64 {
                            return false;
                        }
                    }
                    None => return false,
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    IntegerSearch,
    AlphaLimit,
    ClosedForm,
}

#[derive(Debug, Clone)]
pub struct CurvatureResult {
    pub kappa: Rat,
    pub witness: PotentialFunction,
    pub method: Method,
}

/// Graph Laplacian at `v`: the average of `f` over `N(v)` minus `f(v)`.
pub fn laplacian(g: &Graph, f: &BTreeMap<usize, Rat>, v: usize) -> Result<Rat, CurvatureError> {
    let d = g.degree(v);
    if d == 0 {
        return Err(CurvatureError::IsolatedVertex(v));
    }
    let fv = f.get(&v).ok_or(CurvatureError::MissingLabel(v))?;
    let mut sum = Rat::zero();
    for &u in g.neighbors(v) {
        sum += f.get(&u).ok_or(CurvatureError::MissingLabel(u))? - fv;
    }
    Ok(sum / Rat::from(BigInt::from(d)))
}

fn laplacian_int(g: &Graph, f: &BTreeMap<usize, i64>, v: usize) -> Rat {
    let fv = f[&v];
    let sum: i64 = g.neighbors(v).iter().map(|u| f[u] - fv).sum();
    Rat::new(BigInt::from(sum), BigInt::from(g.degree(v)))
}

/// The curvature objective `Δf(x) - Δf(y)` for an edge `xy` (gradient with
/// `d(x,y) = 1`).
pub fn edge_objective(
    g: &Graph,
    f: &PotentialFunction,
    x: usize,
    y: usize,
) -> Result<Rat, CurvatureError> {
    if !g.has_edge(x, y) {
        return Err(CurvatureError::NotAnEdge(x, y));
    }
    for v in g.neighbors(x).iter().chain(g.neighbors(y)).chain([&x, &y]) {
        if !f.values.contains_key(v) {
            return Err(CurvatureError::MissingLabel(*v));
        }
    }
    Ok(laplacian_int(g, &f.values, x) - laplacian_int(g, &f.values, y))
}

/// Exact LLY curvature of the edge `xy` by exhaustive backtracking over
/// integer assignments on `N[x] ∪ N[y]`.
///
/// The objective depends only on `f` restricted to `N[x] ∪ N[y]`, and any
/// partial 1-Lipschitz function extends to all of G (McShane extension),
/// so searching the restricted domain is lossless. Integer values suffice
/// for the infimum. Vertices are ordered by (distance to x, id) and ties
/// in the optimum resolve to the lexicographically smallest assignment.
pub fn lly_edge(g: &Graph, x: usize, y: usize) -> Result<CurvatureResult, CurvatureError> {
    lly_edge_with_window(g, x, y, None)
}

/// Same search with the per-vertex window bounds replaced by a fixed range;
/// used to guard against over-tight windows.
pub fn lly_edge_with_window(
    g: &Graph,
    x: usize,
    y: usize,
    window_override: Option<(i64, i64)>,
) -> Result<CurvatureResult, CurvatureError> {
    if !g.has_edge(x, y) {
        return Err(CurvatureError::NotAnEdge(x, y));
    }

    let mut domain: Vec<usize> = g
        .neighbors(x)
        .iter()
        .chain(g.neighbors(y))
        .chain([&x, &y])
        .copied()
        .collect();
    domain.sort_unstable();
    domain.dedup();

    let dx_row = g.distances_from(x);
    let dy_row = g.distances_from(y);
    let mut free: Vec<usize> = domain
        .iter()
        .copied()
        .filter(|&v| v != x && v != y)
        .collect();
    free.sort_by_key(|&v| (dx_row[v], v));

    // Per-vertex admissible windows from the x/y normalization.
    let bounds: Vec<(i64, i64)> = free
        .iter()
        .map(|&v| match window_override {
            Some(w) => w,
            None => {
                let dvx = dx_row[v].expect("domain vertex reachable from x") as i64;
                let dvy = dy_row[v].expect("domain vertex reachable from y") as i64;
                ((-dvx).max(1 - dvy), dvx.min(1 + dvy))
            }
        })
        .collect();

    // Pairwise distances inside the search order (including x, y first).
    let order: Vec<usize> = [x, y].into_iter().chain(free.iter().copied()).collect();
    let k = order.len();
    let mut pair_dist = vec![vec![0i64; k]; k];
    for (i, &u) in order.iter().enumerate() {
        let row = g.distances_from(u);
        for (j, &v) in order.iter().enumerate() {
            pair_dist[i][j] = row[v].expect("edge component is connected") as i64;
        }
    }

    let mut assignment = vec![0i64; k];
    assignment[1] = 1;
    let mut best: Option<(Rat, Vec<i64>)> = None;

    #[allow(clippy::too_many_arguments)]
    fn search(
        g: &Graph,
        order: &[usize],
        bounds: &[(i64, i64)],
        pair_dist: &[Vec<i64>],
        assignment: &mut Vec<i64>,
        depth: usize,
        x: usize,
        y: usize,
        best: &mut Option<(Rat, Vec<i64>)>,
    ) {
        if depth == order.len() {
            let f: BTreeMap<usize, i64> = order
                .iter()
                .zip(assignment.iter())
                .map(|(&v, &fv)| (v, fv))
                .collect();
            let value = laplacian_int(g, &f, x) - laplacian_int(g, &f, y);
            let better = match best {
                None => true,
                Some((cur, _)) => value < *cur,
            };
            if better {
                *best = Some((value, assignment.clone()));
            }
            return;
        }
        let (lo, hi) = bounds[depth - 2];
        'candidates: for c in lo..=hi {
            for prev in 0..depth {
                if (c - assignment[prev]).abs() > pair_dist[depth][prev] {
                    continue 'candidates;
                }
            }
            assignment[depth] = c;
            search(
                g,
                order,
                bounds,
                pair_dist,
                assignment,
                depth + 1,
                x,
                y,
                best,
            );
        }
    }

    search(
        g,
        &order,
        &bounds,
        &pair_dist,
        &mut assignment,
        2,
        x,
        y,
        &mut best,
    );

    let (kappa, values) = best.expect("window always contains an admissible assignment");
    let witness = PotentialFunction {
        values: order
            .iter()
            .zip(values.iter())
            .map(|(&v, &f)| (v, f))
            .collect(),
    };
    Ok(CurvatureResult {
        kappa,
        witness,
        method: Method::IntegerSearch,
    })
}

/// The alpha-Ricci curvature `1 - W(m_x^a, m_y^a) / d(x,y)`.
pub fn alpha_curvature(g: &Graph, x: usize, y: usize, alpha: &Rat) -> Result<Rat, CurvatureError> {
    let d = g.dist(x, y).ok_or(CurvatureError::Disconnected(x, y))?;
    let m1 = lazy_walk_measure(g, x, alpha)?;
    let m2 = lazy_walk_measure(g, y, alpha)?;
    let coupling = wasserstein(g, &m1, &m2)?;
    debug_assert!(verify_duality(g, &coupling, &m1, &m2));
    Ok(Rat::one() - coupling.cost / Rat::from(BigInt::from(d)))
}

/// LLY curvature as the stabilized limit of `κ_α / (1-α)`: evaluated at
/// `α = 1 - 1/(c·D)` for `D = max(d_x, d_y) + 1` and doubling `c`, returned
/// once two consecutive evaluations agree exactly. Independent oracle for
/// [`lly_edge`].
pub fn lly_via_alpha(g: &Graph, x: usize, y: usize) -> Result<Rat, CurvatureError> {
    if !g.has_edge(x, y) {
        return Err(CurvatureError::NotAnEdge(x, y));
    }
    let scale = (g.degree(x).max(g.degree(y)) + 1) as i64;
    let mut previous: Option<Rat> = None;
    let mut c = 2i64;
    while c <= 1024 {
        let alpha = Rat::one() - rat(1, c * scale);
        let ratio = alpha_curvature(g, x, y, &alpha)? * rat(c * scale, 1);
        if previous.as_ref() == Some(&ratio) {
            return Ok(ratio);
        }
        previous = Some(ratio);
        c *= 2;
    }
    Err(CurvatureError::NonStabilized)
}

/// Combinatorial curvature of a vertex in the polygon embedding: the vertex
/// touches `d_v - 1` interior triangles and the outer `n`-face, giving
/// `1 - d_v/2 + (d_v - 1)/3 + 1/n`.
pub fn combinatorial_curvature(t: &PolygonTriangulation, v: usize) -> Rat {
    let g = t.to_graph();
    let d = g.degree(v) as i64;
    let n = t.n() as i64;
    rat(1, 1) - rat(d, 2) + rat(d - 1, 3) + rat(1, n)
}
