//! Polygon triangulations, maximal-outerplanar recognition, edge classification.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("expected {expected} diagonals, got {got}")]
    WrongDiagonalCount { expected: usize, got: usize },
    #[error("vertex {0} out of range for {1}-gon")]
    OutOfRange(usize, usize),
    #[error("{0}-{1} is a boundary edge, not a diagonal")]
    BoundaryEdge(usize, usize),
    #[error("degenerate diagonal at vertex {0}")]
    Degenerate(usize),
    #[error("duplicate diagonal {0}-{1}")]
    Duplicate(usize, usize),
    #[error("diagonals {0}-{1} and {2}-{3} cross")]
    Crossing(usize, usize, usize, usize),
    #[error("malformed triangulation code: {0}")]
    BadCode(String),
}

/// A triangulated convex `n`-gon: boundary cycle `0-1-...-(n-1)-0` plus
/// `n-3` pairwise noncrossing diagonals. The combinatorial model of a
/// maximal outerplanar graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PolygonTriangulation {
    n: usize,
    diagonals: Vec<(usize, usize)>,
}

fn is_boundary(n: usize, a: usize, b: usize) -> bool {
    debug_assert!(a < b);
    b - a == 1 || (a == 0 && b == n - 1)
}

fn crosses(p: (usize, usize), q: (usize, usize)) -> bool {
    let ((a, b), (c, d)) = (p, q);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl PolygonTriangulation {
    pub fn new(
        n: usize,
        diagonals: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, TriangulationError> {
        if n < 3 {
            return Err(TriangulationError::TooFewVertices(n));
        }
        let mut diags: Vec<(usize, usize)> = Vec::new();
        for (u, v) in diagonals {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if a == b {
                return Err(TriangulationError::Degenerate(a));
            }
            if b >= n {
                return Err(TriangulationError::OutOfRange(b, n));
            }
            if is_boundary(n, a, b) {
                return Err(TriangulationError::BoundaryEdge(a, b));
            }
            diags.push((a, b));
        }
        diags.sort_unstable();
        for w in diags.windows(2) {
            if w[0] == w[1] {
                return Err(TriangulationError::Duplicate(w[0].0, w[0].1));
            }
        }
        if diags.len() != n - 3 {
            return Err(TriangulationError::WrongDiagonalCount {
                expected: n - 3,
                got: diags.len(),
            });
        }
        for i in 0..diags.len() {
            for j in i + 1..diags.len() {
                if crosses(diags[i], diags[j]) {
                    let ((a, b), (c, d)) = (diags[i], diags[j]);
                    return Err(TriangulationError::Crossing(a, b, c, d));
                }
            }
        }
        Ok(PolygonTriangulation {
            n,
            diagonals: diags,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    pub fn has_diagonal(&self, u: usize, v: usize) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.diagonals.binary_search(&key).is_ok()
    }

    /// The boundary cycle plus all diagonals; maximal outerplanar by
    /// construction with exactly `2n-3` edges.
    pub fn to_graph(&self) -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..self.n).map(|i| (i, (i + 1) % self.n)).collect();
        edges.extend_from_slice(&self.diagonals);
        match Graph::from_edges(self.n, &edges) {
            Ok(g) => g,
            Err(e) => unreachable!("validated triangulation produced bad graph: {e}"),
        }
    }

    /// Text code `"<n>:<a1>-<b1>,<a2>-<b2>,..."` with `a<b` per diagonal,
    /// sorted lexicographically; `"3:"` denotes K3.
    pub fn code(&self) -> String {
        let body: Vec<String> = self
            .diagonals
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        format!("{}:{}", self.n, body.join(","))
    }

    pub fn parse(code: &str) -> Result<Self, TriangulationError> {
        let bad = || TriangulationError::BadCode(code.to_string());
        let (head, body) = code.trim().split_once(':').ok_or_else(bad)?;
        let n: usize = head.parse().map_err(|_| bad())?;
        let mut diags = Vec::new();
        if !body.is_empty() {
            for part in body.split(',') {
                let (a, b) = part.split_once('-').ok_or_else(bad)?;
                diags.push((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
            }
        }
        PolygonTriangulation::new(n, diags)
    }
}

/// Exterior edges lie on the outer (Hamiltonian) cycle; interior edges are
/// polygon diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Exterior,
    Interior,
}

/// Certificate that a graph is maximal outerplanar: the recovered outer
/// cycle and the triangulation it induces.
#[derive(Debug, Clone)]
pub struct MopWitness {
    /// `cycle[i]` is the graph vertex sitting at polygon position `i`.
    pub cycle: Vec<usize>,
    /// Inverse of `cycle`: polygon position of each graph vertex.
    pub position: Vec<usize>,
    pub triangulation: PolygonTriangulation,
}

impl MopWitness {
    /// Classify an edge of the witnessed graph.
    pub fn edge_kind(&self, g: &Graph, x: usize, y: usize) -> Result<EdgeKind, GraphError> {
        if !g.has_edge(x, y) {
            return Err(GraphError::NotAnEdge(x, y));
        }
        let n = self.cycle.len();
        let (px, py) = (self.position[x], self.position[y]);
        let (a, b) = if px < py { (px, py) } else { (py, px) };
        if is_boundary(n, a, b) {
            Ok(EdgeKind::Exterior)
        } else {
            debug_assert!(self.triangulation.has_diagonal(a, b));
            Ok(EdgeKind::Interior)
        }
    }
}

/// Maximal-outerplanar recognition by ear reduction: repeatedly strip a
/// degree-2 vertex whose neighbors are adjacent; accept iff a triangle
/// remains and the ears re-insert consistently into the outer cycle.
/// Returns the recovered witness on success.
pub fn is_maximal_outerplanar(g: &Graph) -> Option<MopWitness> {
    let n = g.n();
    if n < 3 || g.edge_count() != 2 * n - 3 || !g.is_connected() {
        return None;
    }

    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut alive_count = n;
    let mut ears: Vec<(usize, usize, usize)> = Vec::new();

    while alive_count > 3 {
        let ear = (0..n).find(|&v| {
            if !alive[v] || adj[v].len() != 2 {
                return false;
            }
            let mut it = adj[v].iter();
            let (&u, &w) = (it.next().unwrap(), it.next().unwrap());
            adj[u].contains(&w)
        })?;
        let mut it = adj[ear].iter();
        let (&u, &w) = (it.next().unwrap(), it.next().unwrap());
        ears.push((ear, u, w));
        adj[u].remove(&ear);
        adj[w].remove(&ear);
        adj[ear].clear();
        alive[ear] = false;
        alive_count -= 1;
    }

    // Remaining three vertices must form a triangle.
    let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let [a, b, c] = rest[..] else { return None };
    if !(adj[a].contains(&b) && adj[a].contains(&c) && adj[b].contains(&c)) {
        return None;
    }

    // Rebuild the outer cycle by reversing the ear removals.
    let mut cycle = vec![a, b, c];
    for &(v, u, w) in ears.iter().rev() {
        let iu = cycle.iter().position(|&x| x == u)?;
        let iw = cycle.iter().position(|&x| x == w)?;
        let len = cycle.len();
        if (iu + 1) % len == iw {
            cycle.insert(iw, v);
        } else if (iw + 1) % len == iu {
            cycle.insert(iu, v);
        } else {
            return None;
        }
    }

    let mut position = vec![0; n];
    for (i, &v) in cycle.iter().enumerate() {
        position[v] = i;
    }
    let diagonals: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(x, y)| {
            let (px, py) = (position[x], position[y]);
            if px < py {
                (px, py)
            } else {
                (py, px)
            }
        })
        .filter(|&(p, q)| !is_boundary(n, p, q))
        .collect();
    let triangulation = PolygonTriangulation::new(n, diagonals).ok()?;
    Some(MopWitness {
        cycle,
        position,
        triangulation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangulation_to_graph() {
        let t = PolygonTriangulation::new(3, []).unwrap();
        assert_eq!(t.to_graph(), k3());

        let t = PolygonTriangulation::new(4, [(0, 2)]).unwrap();
        let g = t.to_graph();
        assert_eq!(g.edge_count(), 5);
        assert!(!g.has_edge(1, 3));

        let t = PolygonTriangulation::new(5, [(0, 2), (0, 3)]).unwrap();
        let g = t.to_graph();
        assert_eq!(g.edge_count(), 7);
        assert!(is_maximal_outerplanar(&g).is_some());
    }

    #[test]
    fn triangulation_rejects() {
        assert!(matches!(
            PolygonTriangulation::new(5, [(0, 2), (1, 3)]),
            Err(TriangulationError::Crossing(..))
        ));
        assert!(matches!(
            PolygonTriangulation::new(4, [(0, 1)]),
            Err(TriangulationError::BoundaryEdge(0, 1))
        ));
        assert!(matches!(
            PolygonTriangulation::new(4, [(0, 3)]),
            Err(TriangulationError::BoundaryEdge(0, 3))
        ));
        assert!(matches!(
            PolygonTriangulation::new(5, [(0, 2)]),
            Err(TriangulationError::WrongDiagonalCount { .. })
        ));
    }

    #[test]
    fn code_round_trip() {
        let t = PolygonTriangulation::new(5, [(0, 3), (0, 2)]).unwrap();
        assert_eq!(t.code(), "5:0-2,0-3");
        assert_eq!(PolygonTriangulation::parse("5:0-2,0-3").unwrap(), t);
        assert_eq!(PolygonTriangulation::parse("3:").unwrap().code(), "3:");
        assert!(PolygonTriangulation::parse("5:0-2,").is_err());
    }

    #[test]
    fn recognition() {
        assert!(is_maximal_outerplanar(&k3()).is_some());

        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(is_maximal_outerplanar(&c4).is_none());

        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_maximal_outerplanar(&k4).is_none());

        let fan10 = Graph::fan(10).unwrap();
        let w = is_maximal_outerplanar(&fan10).unwrap();
        assert_eq!(w.triangulation.diagonals().len(), 7);
    }

    #[test]
    fn edge_kinds() {
        let g = k3();
        let w = is_maximal_outerplanar(&g).unwrap();
        assert_eq!(w.edge_kind(&g, 0, 1).unwrap(), EdgeKind::Exterior);

        let fan = Graph::fan(10).unwrap();
        let w = is_maximal_outerplanar(&fan).unwrap();
        assert_eq!(w.edge_kind(&fan, 0, 5).unwrap(), EdgeKind::Interior);
        assert_eq!(w.edge_kind(&fan, 4, 5).unwrap(), EdgeKind::Exterior);
        assert_eq!(w.edge_kind(&fan, 0, 1).unwrap(), EdgeKind::Exterior);
        assert!(w.edge_kind(&fan, 1, 3).is_err());
    }

    #[test]
    fn common_neighbor_rule_matches_kind() {
        for n in [4usize, 5, 6, 10] {
            let fan = Graph::fan(n).unwrap();
            let w = is_maximal_outerplanar(&fan).unwrap();
            for (x, y) in fan.edges() {
                let cn = fan.common_neighbors(x, y).len();
                match w.edge_kind(&fan, x, y).unwrap() {
                    EdgeKind::Exterior => assert_eq!(cn, 1),
                    EdgeKind::Interior => assert_eq!(cn, 2),
                }
            }
        }
    }
}
