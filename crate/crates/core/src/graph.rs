//! Simple undirected graphs with a canonical edge order.
//!
//! Edges are stored as `(u, v)` with `u < v`, sorted lexicographically. That
//! order is load-bearing: incidence-matrix columns, line-graph vertices, and
//! the edge-vertices of the total graph all inherit it, so every matrix in
//! the crate agrees on which row is which.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{IntMat, Mat, MatrixKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    LoopEdge { vertex: usize },
    DuplicateEdge { u: usize, v: usize },
    InvalidParameter { what: &'static str },
}

impl core::fmt::Display for GraphError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GraphError::VertexOutOfRange { vertex, vertex_count } => {
                write!(f, "vertex {vertex} out of range for a graph on {vertex_count} vertices")
            }
            GraphError::LoopEdge { vertex } => write!(f, "loop edge at vertex {vertex}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u}, {v})"),
            GraphError::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
        }
    }
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, normalizing each edge to `(min, max)` and sorting.
    /// Rejects loops, duplicates, and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a, vertex_count: n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: b, vertex_count: n });
            }
            if a == b {
                return Err(GraphError::LoopEdge { vertex: a });
            }
            canon.push(if a < b { (a, b) } else { (b, a) });
        }
        canon.sort_unstable();
        for w in canon.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge { u: w[0].0, v: w[0].1 });
            }
        }
        Ok(Graph { n, edges: canon })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order: `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b {
            return false;
        }
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        let first = *deg.first()?;
        if deg.iter().all(|&d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut queue = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push(v);
                }
            }
        }
        reached == self.n
    }

    pub fn adjacency_matrix(&self) -> IntMat {
        let mut a = IntMat::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1;
            a[(v, u)] = 1;
        }
        a
    }

    pub fn degree_matrix(&self) -> IntMat {
        let mut d = IntMat::zeros(self.n, self.n);
        for (i, deg) in self.degrees().into_iter().enumerate() {
            d[(i, i)] = deg as i64;
        }
        d
    }

    pub fn laplacian_matrix(&self) -> IntMat {
        self.degree_matrix().sub(&self.adjacency_matrix())
    }

    /// The vertex-edge incidence matrix: `n` rows, one column per edge in
    /// canonical order, with ones at the edge's two endpoints.
    pub fn incidence_matrix(&self) -> IntMat {
        let mut r = IntMat::zeros(self.n, self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            r[(u, j)] = 1;
            r[(v, j)] = 1;
        }
        r
    }

    /// Adjacency or Laplacian matrix as floating point.
    pub fn matrix(&self, kind: MatrixKind) -> Mat {
        match kind {
            MatrixKind::Adjacency => self.adjacency_matrix().to_mat(),
            MatrixKind::Laplacian => self.laplacian_matrix().to_mat(),
        }
    }

    /// The line graph: one vertex per edge (canonical order), adjacent when
    /// the edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let m = self.edges.len();
        let mut edges = Vec::new();
        for i in 0..m {
            let (a, b) = self.edges[i];
            for j in (i + 1)..m {
                let (c, d) = self.edges[j];
                if a == c || a == d || b == c || b == d {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(m, &edges).expect("line graph construction is always valid")
    }

    /// The total graph: vertices are `V` then one vertex per edge (canonical
    /// order); two vertices are adjacent when the corresponding elements of
    /// the original graph are adjacent or incident.
    pub fn total_graph(&self) -> Graph {
        let n = self.n;
        let m = self.edges.len();
        let mut edges = Vec::new();
        // Original adjacencies.
        edges.extend_from_slice(&self.edges);
        // Edge-vertex pairs sharing an endpoint.
        for i in 0..m {
            let (a, b) = self.edges[i];
            for j in (i + 1)..m {
                let (c, d) = self.edges[j];
                if a == c || a == d || b == c || b == d {
                    edges.push((n + i, n + j));
                }
            }
        }
        // Vertex-edge incidences.
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            edges.push((u, n + i));
            edges.push((v, n + i));
        }
        Graph::new(n + m, &edges).expect("total graph construction is always valid")
    }

    /// Detects a complete bipartite graph structurally: `Some((p, q))` with
    /// `p <= q` when the graph is connected, 2-colorable, and every
    /// cross-part pair is an edge.
    pub fn complete_bipartite_parts(&self) -> Option<(usize, usize)> {
        if self.n < 2 || !self.is_connected() {
            return None;
        }
        let adj = self.adjacency_lists();
        let mut color = vec![u8::MAX; self.n];
        let mut queue = vec![0usize];
        color[0] = 0;
        while let Some(u) = queue.pop() {
            for &v in &adj[u] {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push(v);
                } else if color[v] == color[u] {
                    return None;
                }
            }
        }
        let p = color.iter().filter(|&&c| c == 0).count();
        let q = self.n - p;
        // Connected, bipartite, and no duplicate edges: complete across the
        // parts exactly when the edge count is p*q.
        if p >= 1 && q >= 1 && self.edges.len() == p * q {
            Some(if p <= q { (p, q) } else { (q, p) })
        } else {
            None
        }
    }
}
