//! The two neighborhood corona constructions built on the total graph.
//!
//! Both start from the total graph of `g1` (vertices of `g1` first, then one
//! vertex per edge in canonical order) and attach disjoint copies of `g2`:
//!
//! * vertex kind (`tvn`): one copy of `g2` per vertex `v` of `g1`, joined to
//!   every neighbor of `v` in `g1` and to the edge-vertex of every edge at
//!   `v` (not to `v` itself);
//! * edge kind (`ten`): one copy of `g2` per edge `e` of `g1`, joined to the
//!   two endpoint vertices of `e` (not to the edge-vertex of `e`).
//!
//! Vertex order of the result: `g1` vertices, edge-vertices, then the copies
//! in order, so the matrices have a clean block structure. The `block_*`
//! functions assemble those matrices directly from the block description, as
//! an independent cross-check on the edge-by-edge construction.

use alloc::vec::Vec;
use core::ops::Range;

use crate::graph::{Graph, GraphError};
use crate::matrix::{Mat, MatrixKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoronaKind {
    /// Copies indexed by vertices of `g1` (`tvn`).
    TVertex,
    /// Copies indexed by edges of `g1` (`ten`).
    TEdge,
}

impl CoronaKind {
    pub fn key(self) -> &'static str {
        match self {
            CoronaKind::TVertex => "tvn",
            CoronaKind::TEdge => "ten",
        }
    }
}

/// Where each block of a corona's vertex set sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoronaLayout {
    pub kind: CoronaKind,
    pub n1: usize,
    pub m1: usize,
    pub n2: usize,
}

impl CoronaLayout {
    pub fn copy_count(&self) -> usize {
        match self.kind {
            CoronaKind::TVertex => self.n1,
            CoronaKind::TEdge => self.m1,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n1 + self.m1 + self.copy_count() * self.n2
    }

    /// Vertices inherited from `g1`.
    pub fn g1_vertex_range(&self) -> Range<usize> {
        0..self.n1
    }

    /// Edge-vertices of the total graph of `g1`.
    pub fn edge_vertex_range(&self) -> Range<usize> {
        self.n1..self.n1 + self.m1
    }

    /// Everything before the copies: the total graph of `g1`.
    pub fn total_graph_range(&self) -> Range<usize> {
        0..self.n1 + self.m1
    }

    /// Vertices of the `i`-th copy of `g2`.
    pub fn copy_range(&self, i: usize) -> Range<usize> {
        debug_assert!(i < self.copy_count());
        let start = self.n1 + self.m1 + i * self.n2;
        start..start + self.n2
    }
}

/// A corona together with its block layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corona {
    pub graph: Graph,
    pub layout: CoronaLayout,
}

impl Corona {
    pub fn matrix(&self, kind: MatrixKind) -> Mat {
        self.graph.matrix(kind)
    }
}

fn build(g1: &Graph, g2: &Graph, kind: CoronaKind) -> Result<Corona, GraphError> {
    if g2.vertex_count() == 0 {
        return Err(GraphError::InvalidParameter {
            what: "corona needs a nonempty graph to copy",
        });
    }
    let layout = CoronaLayout {
        kind,
        n1: g1.vertex_count(),
        m1: g1.edge_count(),
        n2: g2.vertex_count(),
    };
    let mut edges: Vec<(usize, usize)> = g1.total_graph().edges().to_vec();
    for i in 0..layout.copy_count() {
        let base = layout.copy_range(i).start;
        for &(a, b) in g2.edges() {
            edges.push((base + a, base + b));
        }
        match kind {
            CoronaKind::TVertex => {
                // Attach copy i to the neighbors of vertex i and to the
                // edge-vertices of the edges at vertex i.
                for (j, &(u, v)) in g1.edges().iter().enumerate() {
                    if u == i || v == i {
                        let other = if u == i { v } else { u };
                        for w in 0..layout.n2 {
                            edges.push((other, base + w));
                            edges.push((layout.n1 + j, base + w));
                        }
                    }
                }
            }
            CoronaKind::TEdge => {
                // Attach copy i to the two endpoints of edge i.
                let (u, v) = g1.edges()[i];
                for w in 0..layout.n2 {
                    edges.push((u, base + w));
                    edges.push((v, base + w));
                }
            }
        }
    }
    let graph = Graph::new(layout.vertex_count(), &edges)?;
    Ok(Corona { graph, layout })
}

/// The vertex-indexed corona of `g1` with `g2`.
pub fn t_vertex_corona(g1: &Graph, g2: &Graph) -> Result<Corona, GraphError> {
    build(g1, g2, CoronaKind::TVertex)
}

/// The edge-indexed corona of `g1` with `g2`.
pub fn t_edge_corona(g1: &Graph, g2: &Graph) -> Result<Corona, GraphError> {
    build(g1, g2, CoronaKind::TEdge)
}

/// Either corona by kind.
pub fn corona(g1: &Graph, g2: &Graph, kind: CoronaKind) -> Result<Corona, GraphError> {
    build(g1, g2, kind)
}

/// Assembles the corona adjacency matrix directly from its block
/// description, without constructing the corona graph.
pub fn block_adjacency(g1: &Graph, g2: &Graph, kind: CoronaKind) -> Result<Mat, GraphError> {
    if g2.vertex_count() == 0 {
        return Err(GraphError::InvalidParameter {
            what: "corona needs a nonempty graph to copy",
        });
    }
    let layout = CoronaLayout {
        kind,
        n1: g1.vertex_count(),
        m1: g1.edge_count(),
        n2: g2.vertex_count(),
    };
    let (n1, m1, n2) = (layout.n1, layout.m1, layout.n2);
    let total = layout.vertex_count();
    let mut m = Mat::zeros(total, total);

    let a1 = g1.adjacency_matrix();
    let r = g1.incidence_matrix();
    let a2 = g2.adjacency_matrix();
    // Line-graph adjacency via the incidence identity R^T R - 2I.
    for i in 0..n1 {
        for j in 0..n1 {
            m[(i, j)] = a1[(i, j)] as f64;
        }
        for j in 0..m1 {
            m[(i, n1 + j)] = r[(i, j)] as f64;
            m[(n1 + j, i)] = r[(i, j)] as f64;
        }
    }
    for i in 0..m1 {
        for j in 0..m1 {
            let mut rtr = 0i64;
            for k in 0..n1 {
                rtr += r[(k, i)] * r[(k, j)];
            }
            m[(n1 + i, n1 + j)] = if i == j { 0.0 } else { rtr as f64 };
        }
    }
    for c in 0..layout.copy_count() {
        let base = layout.copy_range(c).start;
        for i in 0..n2 {
            for j in 0..n2 {
                m[(base + i, base + j)] = a2[(i, j)] as f64;
            }
        }
        match kind {
            CoronaKind::TVertex => {
                // Copy block column c of the top rows is A1[:, c] spread
                // across the copy, and R^T[:, c] for the edge rows.
                for u in 0..n1 {
                    let val = a1[(u, c)] as f64;
                    for w in 0..n2 {
                        m[(u, base + w)] = val;
                        m[(base + w, u)] = val;
                    }
                }
                for j in 0..m1 {
                    let val = r[(c, j)] as f64;
                    for w in 0..n2 {
                        m[(n1 + j, base + w)] = val;
                        m[(base + w, n1 + j)] = val;
                    }
                }
            }
            CoronaKind::TEdge => {
                // Copy block column c of the top rows is R[:, c]; edge rows
                // stay zero.
                for u in 0..n1 {
                    let val = r[(u, c)] as f64;
                    for w in 0..n2 {
                        m[(u, base + w)] = val;
                        m[(base + w, u)] = val;
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Assembles the corona Laplacian from the block adjacency and the
/// role-by-role degree formulas.
pub fn block_laplacian(g1: &Graph, g2: &Graph, kind: CoronaKind) -> Result<Mat, GraphError> {
    let a = block_adjacency(g1, g2, kind)?;
    let layout = CoronaLayout {
        kind,
        n1: g1.vertex_count(),
        m1: g1.edge_count(),
        n2: g2.vertex_count(),
    };
    let (n1, n2) = (layout.n1, layout.n2);
    let deg1 = g1.degrees();
    let deg2 = g2.degrees();
    let mut l = a.scale(-1.0);
    // Original vertices: twice their degree from the total graph plus n2
    // attached copies per incident element.
    for (u, &d) in deg1.iter().enumerate() {
        l[(u, u)] = (d * (2 + n2)) as f64;
    }
    // Edge-vertices: degree sum of the endpoints, plus two copies in the
    // vertex-indexed corona.
    for (j, &(u, v)) in g1.edges().iter().enumerate() {
        let extra = match kind {
            CoronaKind::TVertex => 2 * n2,
            CoronaKind::TEdge => 0,
        };
        l[(n1 + j, n1 + j)] = (deg1[u] + deg1[v] + extra) as f64;
    }
    // Copy vertices: their degree inside the copy plus the attachment count.
    for c in 0..layout.copy_count() {
        let base = layout.copy_range(c).start;
        let attach = match kind {
            CoronaKind::TVertex => 2 * deg1[c],
            CoronaKind::TEdge => 2,
        };
        for (w, &d) in deg2.iter().enumerate() {
            l[(base + w, base + w)] = (d + attach) as f64;
        }
    }
    Ok(l)
}
