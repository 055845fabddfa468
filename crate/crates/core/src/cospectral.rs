//! Manufactured cospectral, non-isomorphic graph pairs.
//!
//! The factored characteristic polynomials of the edge-indexed corona depend
//! on the base graph only through its spectrum, regular degree, and counts,
//! and on the copy graph only through its spectrum and coronal. Crossing
//! either slot of the corona with two cospectral regular graphs therefore
//! yields a pair of larger, non-regular graphs sharing both adjacency and
//! Laplacian spectra. Nothing here is taken on faith: every pair this module
//! hands out has had both spectra recomputed with the eigensolver and
//! compared as multisets, and a certification miss is a loud error.

use alloc::format;
use alloc::string::String;

use crate::corona::{t_edge_corona, Corona};
use crate::eigen::EigenError;
use crate::generators;
use crate::graph::{Graph, GraphError};
use crate::matrix::MatrixKind;
use crate::spectrum::{multiset_equal, Spectrum};

#[derive(Debug, Clone, PartialEq)]
pub enum CospectralError {
    /// A pair this module promised could not be certified. Always a bug or a
    /// numerical breakdown, never something to paper over.
    CertificationFailed { what: String, max_deviation: f64 },
    Construction(GraphError),
    Eigen(EigenError),
}

impl core::fmt::Display for CospectralError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CospectralError::CertificationFailed { what, max_deviation } => {
                write!(f, "certification failed: {what} (max deviation {max_deviation:.3e})")
            }
            CospectralError::Construction(e) => write!(f, "construction failed: {e}"),
            CospectralError::Eigen(e) => write!(f, "{e}"),
        }
    }
}

/// Certifies that two graphs share both the adjacency and the Laplacian
/// spectrum within `tol` while being distinct as labeled graphs. Returns the
/// (adjacency, Laplacian) multiset deviations actually measured.
///
/// Distinct-as-labeled-graphs is the cheap half of non-isomorphism; callers
/// that need the full claim must add a combinatorial distinguisher, as
/// [`seed_pair`] does with 4-clique counts.
pub fn certify(left: &Graph, right: &Graph, tol: f64) -> Result<(f64, f64), CospectralError> {
    if left == right {
        return Err(CospectralError::CertificationFailed {
            what: String::from("the two graphs are identical as labeled graphs"),
            max_deviation: 0.0,
        });
    }
    let mut deviations = [0.0_f64; 2];
    for (slot, kind) in [MatrixKind::Adjacency, MatrixKind::Laplacian].into_iter().enumerate() {
        let sl = Spectrum::of(left, kind).map_err(CospectralError::Eigen)?;
        let sr = Spectrum::of(right, kind).map_err(CospectralError::Eigen)?;
        let m = multiset_equal(sl.values(), sr.values(), tol);
        if !m.equal {
            return Err(CospectralError::CertificationFailed {
                what: format!("{} spectra differ as multisets", kind.letter()),
                max_deviation: m.max_deviation,
            });
        }
        deviations[slot] = m.max_deviation;
    }
    Ok((deviations[0], deviations[1]))
}

/// Two certified cospectral graphs ready to be crossed into coronas.
#[derive(Debug, Clone)]
pub struct SeedPair {
    pub left_key: &'static str,
    pub right_key: &'static str,
    pub left: Graph,
    pub right: Graph,
    pub adjacency_deviation: f64,
    pub laplacian_deviation: f64,
}

/// The stock seed pair: the rook's graph of the 4 by 4 grid against its
/// strongly regular twin. Both are 6-regular on 16 vertices with identical
/// adjacency and Laplacian spectra, certified here at 1e-9; they are not
/// isomorphic because one contains eight 4-cliques and the other none,
/// which is also checked rather than assumed.
pub fn seed_pair() -> Result<SeedPair, CospectralError> {
    let left = generators::rook_4x4();
    let right = generators::shrikhande();
    let (adjacency_deviation, laplacian_deviation) = certify(&left, &right, 1e-9)?;
    let (k4_left, k4_right) = (count_k4(&left), count_k4(&right));
    if k4_left == k4_right {
        return Err(CospectralError::CertificationFailed {
            what: format!(
                "4-clique counts failed to distinguish the seed graphs (both {k4_left})"
            ),
            max_deviation: 0.0,
        });
    }
    Ok(SeedPair {
        left_key: "rook4",
        right_key: "shrikhande",
        left,
        right,
        adjacency_deviation,
        laplacian_deviation,
    })
}

fn count_k4(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !g.has_edge(a, c) || !g.has_edge(b, c) {
                    continue;
                }
                for d in c + 1..n {
                    if g.has_edge(a, d) && g.has_edge(b, d) && g.has_edge(c, d) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// A certified cospectral pair of edge-indexed coronas. Both sides share the
/// adjacency and the Laplacian spectrum within the tolerance they were
/// certified at, and neither is regular.
#[derive(Debug, Clone)]
pub struct CoronaCospectralPair {
    pub left: Corona,
    pub right: Corona,
    pub adjacency_deviation: f64,
    pub laplacian_deviation: f64,
}

/// Crosses both sides of a seed pair with the same copy graph. The corona
/// spectra are recomputed and certified at `tol`, and both coronas are
/// checked to be non-regular, which is the point of the construction.
pub fn t_edge_cospectral_pair(
    seed: &SeedPair,
    g2: &Graph,
    tol: f64,
) -> Result<CoronaCospectralPair, CospectralError> {
    let left = t_edge_corona(&seed.left, g2).map_err(CospectralError::Construction)?;
    let right = t_edge_corona(&seed.right, g2).map_err(CospectralError::Construction)?;
    certified_pair(left, right, tol)
}

/// Crosses one base graph with the two sides of a seed pair as copy graphs.
/// Cospectrality flows through the copy slot here: the corona sees the copy
/// graph only through its spectrum and coronal, which the seed pair shares.
pub fn t_edge_cospectral_composition(
    g1: &Graph,
    seed: &SeedPair,
    tol: f64,
) -> Result<CoronaCospectralPair, CospectralError> {
    let left = t_edge_corona(g1, &seed.left).map_err(CospectralError::Construction)?;
    let right = t_edge_corona(g1, &seed.right).map_err(CospectralError::Construction)?;
    certified_pair(left, right, tol)
}

fn certified_pair(
    left: Corona,
    right: Corona,
    tol: f64,
) -> Result<CoronaCospectralPair, CospectralError> {
    let (adjacency_deviation, laplacian_deviation) = certify(&left.graph, &right.graph, tol)?;
    for side in [&left, &right] {
        if side.graph.regular_degree().is_some() {
            return Err(CospectralError::CertificationFailed {
                what: String::from("a corona that should be non-regular came out regular"),
                max_deviation: 0.0,
            });
        }
    }
    Ok(CoronaCospectralPair { left, right, adjacency_deviation, laplacian_deviation })
}
