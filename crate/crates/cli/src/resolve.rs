//! Turns a graph description into a graph. A description is a named family
//! like `cycle:6` or `kpq:2,3`, a short alias like `c6`, or a path to an
//! edge-list file. Family names win over files of the same name.

use std::path::Path;

use thiserror::Error;

use tcorona_core::{generators, Graph, GraphError};

use crate::format::{self, FormatError};

pub const FAMILY_HELP: &str = "cycle:N, path:N, complete:N, kpq:P,Q, hypercube:D, \
petersen, shrikhande, rook4 (aliases cN, pN, kN, qD), or a path to an edge-list file";

#[derive(Debug, Error)]
pub enum ResolveError {
    #[error("unknown graph `{spec}`: expected {FAMILY_HELP}")]
    Unknown { spec: String },
    #[error("bad parameter in `{spec}`: {what}")]
    BadParameter { spec: String, what: String },
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error("{path}: {err}")]
    File { path: String, err: FormatError },
}

fn family(spec: &str, name: &str, result: Result<Graph, GraphError>) -> Result<Graph, ResolveError> {
    result.map_err(|e| ResolveError::BadParameter {
        spec: String::from(spec),
        what: format!("{name}: {e}"),
    })
}

fn parse_num(spec: &str, token: &str) -> Result<usize, ResolveError> {
    token.trim().parse().map_err(|_| ResolveError::BadParameter {
        spec: String::from(spec),
        what: format!("`{token}` is not a count"),
    })
}

fn named(spec: &str) -> Option<Result<Graph, ResolveError>> {
    match spec {
        "petersen" => return Some(Ok(generators::petersen())),
        "shrikhande" => return Some(Ok(generators::shrikhande())),
        "rook4" => return Some(Ok(generators::rook_4x4())),
        _ => {}
    }
    let (name, params) = spec.split_once(':')?;
    let result = match name {
        "cycle" => parse_num(spec, params).and_then(|n| family(spec, name, generators::cycle(n))),
        "path" => parse_num(spec, params).and_then(|n| family(spec, name, generators::path(n))),
        "complete" => {
            parse_num(spec, params).and_then(|n| family(spec, name, generators::complete(n)))
        }
        "hypercube" => {
            parse_num(spec, params).and_then(|d| family(spec, name, generators::hypercube(d)))
        }
        "kpq" => match params.split_once(',') {
            Some((p, q)) => parse_num(spec, p).and_then(|p| {
                parse_num(spec, q)
                    .and_then(|q| family(spec, name, generators::complete_bipartite(p, q)))
            }),
            None => Err(ResolveError::BadParameter {
                spec: String::from(spec),
                what: String::from("kpq takes two counts, as in kpq:2,3"),
            }),
        },
        _ => return None,
    };
    Some(result)
}

fn alias(spec: &str) -> Option<Result<Graph, ResolveError>> {
    let mut chars = spec.chars();
    let head = chars.next()?;
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let canonical = match head {
        'c' => "cycle",
        'p' => "path",
        'k' => "complete",
        'q' => "hypercube",
        _ => return None,
    };
    named(&format!("{canonical}:{rest}"))
}

/// Resolves a graph description; see the module doc for the accepted forms.
pub fn resolve(spec: &str) -> Result<Graph, ResolveError> {
    let spec = spec.trim();
    if let Some(result) = named(spec) {
        return result;
    }
    if let Some(result) = alias(spec) {
        return result;
    }
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec)
            .map_err(|err| ResolveError::Io { path: String::from(spec), err })?;
        return format::parse_graph(&text)
            .map_err(|err| ResolveError::File { path: String::from(spec), err });
    }
    Err(ResolveError::Unknown { spec: String::from(spec) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    #[test]
    fn resolves_families_and_aliases() {
        for (spec, n, m) in [
            ("cycle:5", 5, 5),
            ("c5", 5, 5),
            ("path:4", 4, 3),
            ("p4", 4, 3),
            ("complete:4", 4, 6),
            ("k4", 4, 6),
            ("hypercube:3", 8, 12),
            ("q3", 8, 12),
            ("kpq:2,3", 5, 6),
            ("petersen", 10, 15),
            ("shrikhande", 16, 48),
            ("rook4", 16, 48),
        ] {
            let g = resolve(spec).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (n, m), "{spec}");
        }
    }

    #[test]
    fn rejects_bad_parameters_without_falling_through() {
        assert!(matches!(resolve("cycle:2"), Err(ResolveError::BadParameter { .. })));
        assert!(matches!(resolve("cycle:x"), Err(ResolveError::BadParameter { .. })));
        assert!(matches!(resolve("kpq:3"), Err(ResolveError::BadParameter { .. })));
        assert!(matches!(resolve("sprocket:9"), Err(ResolveError::Unknown { .. })));
        assert!(matches!(resolve("z9"), Err(ResolveError::Unknown { .. })));
    }

    #[test]
    fn falls_back_to_edge_list_files() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "3 3\n0 1\n1 2\n2 0\n").unwrap();
        let g = resolve(f.path().to_str().unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));

        let mut bad = tempfile::NamedTempFile::new().unwrap();
        write!(bad, "3 3\n0 1\n").unwrap();
        assert!(matches!(
            resolve(bad.path().to_str().unwrap()),
            Err(ResolveError::File { .. })
        ));
    }
}
