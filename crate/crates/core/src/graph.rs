//! Simple undirected graphs with cached BFS distances.

use std::collections::VecDeque;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} out of range for graph on {1} vertices")]
    OutOfRange(usize, usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("malformed graph JSON: {0}")]
    BadJson(String),
}

/// Simple undirected graph on vertices `0..n`. Immutable after construction;
/// the per-source distance rows are filled once and then shared.
#[derive(Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    dist: Vec<OnceLock<Vec<Option<u32>>>>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            n: self.n,
            adj: self.adj.clone(),
            dist: (0..self.n).map(|_| OnceLock::new()).collect(),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}
impl Eq for Graph {}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Build from an edge list. Duplicate edges collapse; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange(w, n));
                }
            }
            if !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            dist: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Hub `0` joined to the path `1-2-...-(n-1)`.
    pub fn fan(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::OutOfRange(n, 3));
        }
        let mut edges = Vec::with_capacity(2 * n - 3);
        for v in 1..n {
            edges.push((0, v));
        }
        for v in 1..n - 1 {
            edges.push((v, v + 1));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// BFS distance row from `v`; `None` marks unreachable vertices.
    /// Computed once per source and cached (compute-then-install).
    pub fn distances_from(&self, v: usize) -> &[Option<u32>] {
        self.dist[v].get_or_init(|| {
            let mut row = vec![None; self.n];
            row[v] = Some(0);
            let mut queue = VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                let du = row[u].unwrap();
                for &w in &self.adj[u] {
                    if row[w].is_none() {
                        row[w] = Some(du + 1);
                        queue.push_back(w);
                    }
                }
            }
            row
        })
    }

    pub fn dist(&self, u: usize, v: usize) -> Option<u32> {
        self.distances_from(u)[v]
    }

    /// Sorted common neighborhood of `x` and `y`.
    pub fn common_neighbors(&self, x: usize, y: usize) -> Vec<usize> {
        self.adj[x]
            .iter()
            .filter(|v| self.adj[y].binary_search(v).is_ok())
            .copied()
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Serialize to the canonical JSON form `{"n":..,"edges":[[u,v],..]}`
    /// with `u < v` and edges sorted lexicographically.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.n,
            edges: self.edges(),
        })
        .expect("graph JSON serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Graph, GraphError> {
        let parsed: GraphJson =
            serde_json::from_str(s).map_err(|e| GraphError::BadJson(e.to_string()))?;
        Graph::from_edges(parsed.n, &parsed.edges)
    }
}
