//! Plain-text edge lists: a `vertices edges` header line, then one `u v`
//! line per edge with 0-based endpoints. Blank lines and lines starting
//! with `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use tcorona_core::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("no header line found")]
    Empty,
    #[error("line {line}: expected {expected}, found `{found}`")]
    Malformed { line: usize, expected: &'static str, found: String },
    #[error("header announced {expected} edges but only {found} follow")]
    MissingEdges { expected: usize, found: usize },
    #[error("line {line}: content after the announced edge count")]
    TrailingContent { line: usize },
    #[error("line {line}: {err}")]
    BadEdge { line: usize, err: GraphError },
}

fn split_pair(
    line_no: usize,
    line: &str,
    expected: &'static str,
) -> Result<(usize, usize), FormatError> {
    let malformed = || FormatError::Malformed {
        line: line_no,
        expected,
        found: String::from(line),
    };
    let mut tokens = line.split_whitespace();
    let a = tokens.next().ok_or_else(malformed)?;
    let b = tokens.next().ok_or_else(malformed)?;
    if tokens.next().is_some() {
        return Err(malformed());
    }
    let a = a.parse().map_err(|_| malformed())?;
    let b = b.parse().map_err(|_| malformed())?;
    Ok((a, b))
}

/// Parses an edge list. Errors carry the 1-based line number they were
/// detected on.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines.next().ok_or(FormatError::Empty)?;
    let (n, m) = split_pair(header_no, header, "header `vertices edges`")?;

    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for (line_no, line) in lines {
        if edges.len() == m {
            return Err(FormatError::TrailingContent { line: line_no });
        }
        edges.push(split_pair(line_no, line, "edge `u v`")?);
        edge_lines.push(line_no);
    }
    if edges.len() < m {
        return Err(FormatError::MissingEdges { expected: m, found: edges.len() });
    }

    Graph::new(n, &edges).map_err(|err| {
        // Point at the offending line where the error names an edge.
        let line = match err {
            GraphError::LoopEdge { vertex } => edges
                .iter()
                .position(|&(u, v)| u == vertex && v == vertex)
                .map(|i| edge_lines[i]),
            GraphError::VertexOutOfRange { vertex, .. } => {
                edges.iter().position(|&(u, v)| u == vertex || v == vertex).map(|i| edge_lines[i])
            }
            GraphError::DuplicateEdge { u, v } => edges
                .iter()
                .position(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v))
                .map(|i| edge_lines[i]),
            GraphError::InvalidParameter { .. } => None,
        };
        FormatError::BadEdge { line: line.unwrap_or(header_no), err }
    })
}

/// Renders a graph in the format [`parse_graph`] reads.
pub fn to_text(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
