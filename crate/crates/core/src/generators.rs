//! Named graph families used throughout the tests and the CLI.

use alloc::vec::Vec;

use crate::graph::{Graph, GraphError};

/// Path on `n >= 1` vertices.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::InvalidParameter { what: "path needs at least 1 vertex" });
    }
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(n, &edges)
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter { what: "cycle needs at least 3 vertices" });
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// Complete graph on `n >= 1` vertices.
pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::InvalidParameter { what: "complete graph needs at least 1 vertex" });
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    Graph::new(n, &edges)
}

/// Complete bipartite graph with parts of size `p, q >= 1`; part one first.
pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph, GraphError> {
    if p < 1 || q < 1 {
        return Err(GraphError::InvalidParameter {
            what: "complete bipartite graph needs both parts nonempty",
        });
    }
    let mut edges = Vec::with_capacity(p * q);
    for i in 0..p {
        for j in 0..q {
            edges.push((i, p + j));
        }
    }
    Graph::new(p + q, &edges)
}

/// Hypercube of dimension `d >= 1`: vertices are bit strings, edges flip one bit.
pub fn hypercube(d: usize) -> Result<Graph, GraphError> {
    if d < 1 || d > 20 {
        return Err(GraphError::InvalidParameter { what: "hypercube dimension must be in 1..=20" });
    }
    let n = 1usize << d;
    let mut edges = Vec::new();
    for v in 0..n {
        for bit in 0..d {
            let u = v ^ (1 << bit);
            if v < u {
                edges.push((v, u));
            }
        }
    }
    Graph::new(n, &edges)
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes between them.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::new(10, &edges).expect("petersen construction is always valid")
}

/// Cayley graph of the group Z4 x Z4 with the given connection set.
/// The set must exclude the identity, contain no duplicates, and be closed
/// under negation so that the graph is undirected.
pub fn cayley_z4xz4(connection: &[(i8, i8)]) -> Result<Graph, GraphError> {
    let norm = |a: i8| -> usize { (a.rem_euclid(4)) as usize };
    let mut set = [[false; 4]; 4];
    for &(a, b) in connection {
        let (x, y) = (norm(a), norm(b));
        if (x, y) == (0, 0) {
            return Err(GraphError::InvalidParameter {
                what: "connection set must not contain the identity",
            });
        }
        if set[x][y] {
            return Err(GraphError::InvalidParameter {
                what: "connection set must not contain duplicates",
            });
        }
        set[x][y] = true;
    }
    for x in 0..4 {
        for y in 0..4 {
            if set[x][y] != set[(4 - x) % 4][(4 - y) % 4] {
                return Err(GraphError::InvalidParameter {
                    what: "connection set must be closed under negation",
                });
            }
        }
    }
    let mut edges = Vec::new();
    for a in 0..4usize {
        for b in 0..4usize {
            let v = 4 * a + b;
            for x in 0..4 {
                for y in 0..4 {
                    if set[x][y] {
                        let u = 4 * ((a + x) % 4) + ((b + y) % 4);
                        if v < u {
                            edges.push((v, u));
                        }
                    }
                }
            }
        }
    }
    Graph::new(16, &edges)
}

/// The Shrikhande graph: the Cayley graph of Z4 x Z4 with connection set
/// {+-(1,0), +-(0,1), +-(1,1)}.
pub fn shrikhande() -> Graph {
    cayley_z4xz4(&[(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)])
        .expect("shrikhande connection set is valid")
}

/// The 4x4 rook's graph: line graph of the complete bipartite graph on 4+4.
pub fn rook_4x4() -> Graph {
    complete_bipartite(4, 4).expect("static parameters").line_graph()
}
