//! Exact-rational probability measures and Wasserstein-1 distance via
//! integer min-cost flow, with dual optimality certificates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::Graph;
use crate::{rat_str, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransportError {
    #[error("masses must be nonnegative and sum to 1")]
    InvalidMeasure,
    #[error("alpha must lie in [0, 1]")]
    InvalidAlpha,
    #[error("vertex {0} is isolated; lazy walk undefined for alpha < 1")]
    IsolatedVertex(usize),
    #[error("measure supports lie in different components")]
    DisconnectedSupports,
    #[error("dual potential extraction failed (solver bug)")]
    DualExtraction,
}

/// Finitely supported probability measure with exact rational masses.
/// Zero-mass entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityMeasure {
    mass: BTreeMap<usize, Rat>,
}

impl ProbabilityMeasure {
    pub fn new(entries: impl IntoIterator<Item = (usize, Rat)>) -> Result<Self, TransportError> {
        let mut mass: BTreeMap<usize, Rat> = BTreeMap::new();
        for (v, m) in entries {
            if m.is_negative() {
                return Err(TransportError::InvalidMeasure);
            }
            if !m.is_zero() {
                *mass.entry(v).or_insert_with(Rat::zero) += m;
            }
        }
        let total: Rat = mass.values().fold(Rat::zero(), |a, b| a + b);
        if !total.is_one() {
            return Err(TransportError::InvalidMeasure);
        }
        Ok(ProbabilityMeasure { mass })
    }

    pub fn dirac(v: usize) -> Self {
        ProbabilityMeasure {
            mass: BTreeMap::from([(v, Rat::one())]),
        }
    }

    pub fn mass(&self, v: usize) -> Rat {
        self.mass.get(&v).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.mass.iter().map(|(&v, m)| (v, m))
    }

    pub fn support_vertices(&self) -> Vec<usize> {
        self.mass.keys().copied().collect()
    }

    /// Debug-dump form: `{"v": "p/q", ...}`.
    pub fn to_json(&self) -> String {
        let body: Vec<String> = self
            .mass
            .iter()
            .map(|(v, m)| format!("\"{v}\":\"{}\"", rat_str(m)))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

/// The alpha-lazy random walk step distribution from `v`: mass `alpha` at
/// `v` and `(1-alpha)/d_v` on each neighbor.
pub fn lazy_walk_measure(
    g: &Graph,
    v: usize,
    alpha: &Rat,
) -> Result<ProbabilityMeasure, TransportError> {
    if alpha.is_negative() || alpha > &Rat::one() {
        return Err(TransportError::InvalidAlpha);
    }
    if alpha.is_one() {
        return Ok(ProbabilityMeasure::dirac(v));
    }
    let d = g.degree(v);
    if d == 0 {
        return Err(TransportError::IsolatedVertex(v));
    }
    let spread = (Rat::one() - alpha) / Rat::from(BigInt::from(d));
    let mut entries = vec![(v, alpha.clone())];
    entries.extend(g.neighbors(v).iter().map(|&u| (u, spread.clone())));
    ProbabilityMeasure::new(entries)
}

/// Optimal coupling between two measures: primal flows, exact cost, and a
/// 1-Lipschitz dual potential certifying optimality.
#[derive(Debug, Clone)]
pub struct Coupling {
    /// Positive transported masses, keyed by (from, to).
    pub flows: BTreeMap<(usize, usize), Rat>,
    pub cost: Rat,
    /// Integer-valued dual potential on the support vertices. On every
    /// positive flow arc (u, v): potential(u) - potential(v) = d(u, v).
    pub potentials: BTreeMap<usize, Rat>,
}

/// Wasserstein-1 distance between `m1` and `m2` under BFS distances.
///
/// Masses are scaled by the LCM of their denominators to an integer
/// transportation problem, solved by successive shortest paths on the
/// bipartite support-to-support instance, then rescaled. The dual potential
/// is recovered from a difference-constraint shortest-path system and makes
/// the coupling self-certifying (see [`verify_duality`]).
pub fn wasserstein(
    g: &Graph,
    m1: &ProbabilityMeasure,
    m2: &ProbabilityMeasure,
) -> Result<Coupling, TransportError> {
    let sources = m1.support_vertices();
    let sinks = m2.support_vertices();
    debug_assert!(!sources.is_empty() && !sinks.is_empty());

    // Pairwise distances; any unreachable pair means split supports.
    let mut cost = vec![vec![0i64; sinks.len()]; sources.len()];
    for (i, &u) in sources.iter().enumerate() {
        let row = g.distances_from(u);
        for (j, &v) in sinks.iter().enumerate() {
            cost[i][j] = row[v].ok_or(TransportError::DisconnectedSupports)? as i64;
        }
    }

    // Scale to integer supplies/demands.
    let mut scale = BigInt::one();
    for (_, m) in m1.support().chain(m2.support()) {
        scale = scale.lcm(m.denom());
    }
    let scaled = |m: &Rat| -> BigInt { m.numer() * (&scale / m.denom()) };
    let mut supply: Vec<BigInt> = m1.support().map(|(_, m)| scaled(m)).collect();
    let mut demand: Vec<BigInt> = m2.support().map(|(_, m)| scaled(m)).collect();

    let flow = min_cost_transport(&cost, &mut supply, &mut demand);

    let mut flows = BTreeMap::new();
    let mut total = BigInt::zero();
    for (i, row) in flow.iter().enumerate() {
        for (j, f) in row.iter().enumerate() {
            if f.is_positive() {
                total += f * cost[i][j];
                flows.insert((sources[i], sinks[j]), Rat::new(f.clone(), scale.clone()));
            }
        }
    }
    let total_cost = Rat::new(total, scale);

    let potentials = extract_potentials(g, &flows)?;
    Ok(Coupling {
        flows,
        cost: total_cost,
        potentials,
    })
}

/// Successive shortest paths on the uncapacitated bipartite instance.
/// Consumes `supply`/`demand`; returns the integer flow matrix.
fn min_cost_transport(
    cost: &[Vec<i64>],
    supply: &mut [BigInt],
    demand: &mut [BigInt],
) -> Vec<Vec<BigInt>> {
    let (p, q) = (supply.len(), demand.len());
    let mut flow = vec![vec![BigInt::zero(); q]; p];

    loop {
        if supply.iter().all(|s| s.is_zero()) {
            return flow;
        }
        // Bellman-Ford over the residual graph. Node ids: sources 0..p,
        // sinks p..p+q. Backward arcs carry negative cost, so plain
        // label-correcting relaxation in a fixed order keeps this exact
        // and deterministic.
        const INF: i64 = i64::MAX / 4;
        let mut dist = vec![INF; p + q];
        let mut parent = vec![usize::MAX; p + q];
        for i in 0..p {
            if supply[i].is_positive() {
                dist[i] = 0;
            }
        }
        for _ in 0..p + q {
            let mut changed = false;
            for i in 0..p {
                if dist[i] >= INF {
                    continue;
                }
                for j in 0..q {
                    if dist[i] + cost[i][j] < dist[p + j] {
                        dist[p + j] = dist[i] + cost[i][j];
                        parent[p + j] = i;
                        changed = true;
                    }
                }
            }
            for j in 0..q {
                if dist[p + j] >= INF {
                    continue;
                }
                for i in 0..p {
                    if flow[i][j].is_positive() && dist[p + j] - cost[i][j] < dist[i] {
                        dist[i] = dist[p + j] - cost[i][j];
                        parent[i] = p + j;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        let target = (0..q)
            .filter(|&j| demand[j].is_positive() && dist[p + j] < INF)
            .min_by_key(|&j| (dist[p + j], j))
            .expect("balanced instance always admits an augmenting path");

        // Walk back to a source with remaining supply; collect bottleneck.
        let mut path = vec![p + target];
        let mut node = p + target;
        while parent[node] != usize::MAX {
            node = parent[node];
            path.push(node);
        }
        let start = *path.last().unwrap();
        debug_assert!(start < p && supply[start].is_positive());

        let mut bottleneck = supply[start].clone().min(demand[target].clone());
        for pair in path.windows(2) {
            // path is sink..source order; backward arcs appear as
            // (source_node, sink_node) = (pair[0] < p, pair[1] >= p).
            if pair[0] < p && pair[1] >= p {
                bottleneck = bottleneck.min(flow[pair[0]][pair[1] - p].clone());
            }
        }
        debug_assert!(bottleneck.is_positive());

        for pair in path.windows(2) {
            match (pair[0] < p, pair[1] < p) {
                (false, true) => flow[pair[1]][pair[0] - p] += &bottleneck,
                (true, false) => flow[pair[0]][pair[1] - p] -= &bottleneck,
                _ => unreachable!("residual path alternates sides"),
            }
        }
        supply[start] -= &bottleneck;
        demand[target] -= &bottleneck;
    }
}

/// Recover an integer 1-Lipschitz potential f with f(u) - f(v) = d(u,v) on
/// every positive flow arc, via shortest paths on the difference-constraint
/// system { f(u) - f(v) <= d(u,v) for all support pairs; f(v) - f(u) <=
/// -d(u,v) for flow arcs }. Feasible exactly when the flow is optimal.
fn extract_potentials(
    g: &Graph,
    flows: &BTreeMap<(usize, usize), Rat>,
) -> Result<BTreeMap<usize, Rat>, TransportError> {
    let mut verts: Vec<usize> = flows.keys().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let index = |v: usize| verts.binary_search(&v).unwrap();

    let k = verts.len();
    let mut dist_uv = vec![vec![0i64; k]; k];
    for (i, &u) in verts.iter().enumerate() {
        let row = g.distances_from(u);
        for (j, &v) in verts.iter().enumerate() {
            dist_uv[i][j] = row[v].ok_or(TransportError::DisconnectedSupports)? as i64;
        }
    }

    // Edge (b -> a) with weight w encodes f(a) <= f(b) + w.
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    for (a, row) in dist_uv.iter().enumerate() {
        for (b, &w) in row.iter().enumerate() {
            if a != b {
                edges.push((b, a, w));
            }
        }
    }
    for &(u, v) in flows.keys() {
        edges.push((index(u), index(v), -dist_uv[index(u)][index(v)]));
    }

    let mut f = vec![0i64; k];
    for round in 0..=k {
        let mut changed = false;
        for &(b, a, w) in &edges {
            if f[b] + w < f[a] {
                f[a] = f[b] + w;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if round == k {
            return Err(TransportError::DualExtraction);
        }
    }
    Ok(verts
        .iter()
        .zip(&f)
        .map(|(&v, &x)| (v, Rat::from(BigInt::from(x))))
        .collect())
}

/// Standalone optimality recheck, independent of the flow solver: the dual
/// objective sum_x f(x)(m1(x) - m2(x)) must equal the primal cost exactly,
/// and f must be 1-Lipschitz on all support-pair distances.
pub fn verify_duality(
    g: &Graph,
    c: &Coupling,
    m1: &ProbabilityMeasure,
    m2: &ProbabilityMeasure,
) -> bool {
    let mut verts: Vec<usize> = m1
        .support_vertices()
        .into_iter()
        .chain(m2.support_vertices())
        .collect();
    verts.sort_unstable();
    verts.dedup();

    let zero = Rat::zero();
    let mut dual = Rat::zero();
    for &v in &verts {
        let f = c.potentials.get(&v).unwrap_or(&zero);
        dual += f * (m1.mass(v) - m2.mass(v));
    }
    if dual != c.cost {
        return false;
    }

    for &u in &verts {
        let row = g.distances_from(u);
        for &v in &verts {
            let Some(d) = row[v] else { return false };
            let fu = c.potentials.get(&u).unwrap_or(&zero);
            let fv = c.potentials.get(&v).unwrap_or(&zero);
            if fu - fv > Rat::from(BigInt::from(d)) {
                return false;
            }
        }
    }
    true
}

impl Coupling {
    /// Exact marginal check against the prescribed measures.
    pub fn has_marginals(&self, m1: &ProbabilityMeasure, m2: &ProbabilityMeasure) -> bool {
        let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
        let mut col: BTreeMap<usize, Rat> = BTreeMap::new();
        for ((u, v), f) in &self.flows {
            if f.is_negative() {
                return false;
            }
            *row.entry(*u).or_insert_with(Rat::zero) += f;
            *col.entry(*v).or_insert_with(Rat::zero) += f;
        }
        row.iter().all(|(&u, m)| *m == m1.mass(u))
            && col.iter().all(|(&v, m)| *m == m2.mass(v))
            && m1.support().all(|(u, m)| row.get(&u) == Some(m))
            && m2.support().all(|(v, m)| col.get(&v) == Some(m))
    }

    /// Complementary slackness: potential(u) - potential(v) = d(u,v) on
    /// every positive flow arc.
    pub fn is_tight(&self, g: &Graph) -> bool {
        let zero = Rat::zero();
        self.flows.keys().all(|&(u, v)| {
            let fu = self.potentials.get(&u).unwrap_or(&zero);
            let fv = self.potentials.get(&v).unwrap_or(&zero);
            match g.dist(u, v) {
                Some(d) => fu - fv == Rat::from(BigInt::from(d)),
                None => false,
            }
        })
    }
}
