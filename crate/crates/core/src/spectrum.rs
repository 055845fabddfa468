//! Spectra as sorted multisets, multiset comparison, and the coronal
//! (all-ones quadratic form of the resolvent).

use alloc::vec;
use alloc::vec::Vec;

use crate::eigen::{symmetric_eigenvalues, EigenError};
use crate::graph::Graph;
use crate::linalg::Lu;
use crate::matrix::{Mat, MatrixKind};

/// Default tolerance for comparing spectra computed by different routes.
pub const DEFAULT_SPECTRUM_TOL: f64 = 1e-6;

/// Eigenvalues of a graph matrix, sorted in the conventional order for the
/// kind: descending for adjacency (largest first), ascending for Laplacian
/// (zero first on a connected graph).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    kind: MatrixKind,
    values: Vec<f64>,
}

impl Spectrum {
    pub fn of(g: &Graph, kind: MatrixKind) -> Result<Spectrum, EigenError> {
        let values = symmetric_eigenvalues(&g.matrix(kind))?;
        Ok(Spectrum::from_values(kind, values))
    }

    /// Sorts `values` into the conventional order for `kind`.
    pub fn from_values(kind: MatrixKind, mut values: Vec<f64>) -> Spectrum {
        values.sort_unstable_by(f64::total_cmp);
        if kind == MatrixKind::Adjacency {
            values.reverse();
        }
        Spectrum { kind, values }
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    /// Values in conventional order (see the type docs).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn ascending(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_unstable_by(f64::total_cmp);
        v
    }

    pub fn matches(&self, other: &Spectrum, tol: f64) -> MultisetMatch {
        multiset_equal(&self.values, &other.values, tol)
    }
}

/// Result of comparing two real multisets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultisetMatch {
    pub equal: bool,
    /// Largest pairwise gap under the optimal (sorted) matching; infinite
    /// when the cardinalities differ.
    pub max_deviation: f64,
}

/// Compares two multisets of reals: sort both, pair entries off, take the
/// largest gap. For multisets this sorted pairing minimizes the largest gap,
/// so the answer does not depend on input order.
pub fn multiset_equal(a: &[f64], b: &[f64], tol: f64) -> MultisetMatch {
    if a.len() != b.len() {
        return MultisetMatch { equal: false, max_deviation: f64::INFINITY };
    }
    let mut sa: Vec<f64> = a.to_vec();
    let mut sb: Vec<f64> = b.to_vec();
    sa.sort_unstable_by(f64::total_cmp);
    sb.sort_unstable_by(f64::total_cmp);
    let mut max_dev = 0.0_f64;
    for (x, y) in sa.iter().zip(sb.iter()) {
        let d = libm::fabs(x - y);
        if d > max_dev {
            max_dev = d;
        }
    }
    MultisetMatch { equal: max_dev <= tol, max_deviation: max_dev }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoronalError {
    /// The evaluation point sits too close to an eigenvalue of the matrix,
    /// where the resolvent blows up.
    NearEigenvalue { x: f64, eigenvalue: f64 },
    Eigen(EigenError),
}

impl core::fmt::Display for CoronalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CoronalError::NearEigenvalue { x, eigenvalue } => {
                write!(f, "coronal evaluation point {x} is too close to eigenvalue {eigenvalue}")
            }
            CoronalError::Eigen(e) => write!(f, "{e}"),
        }
    }
}

/// The coronal of `M` at `x`: the sum of all entries of `(xI - M)^(-1)`,
/// computed by one linear solve against the all-ones vector. Refuses points
/// within `delta` of the provided spectrum of `M`.
pub fn coronal_with_spectrum(
    m: &Mat,
    eigenvalues: &[f64],
    x: f64,
    delta: f64,
) -> Result<f64, CoronalError> {
    for &ev in eigenvalues {
        if libm::fabs(x - ev) < delta {
            return Err(CoronalError::NearEigenvalue { x, eigenvalue: ev });
        }
    }
    let shifted = m.scale(-1.0).plus_scaled_identity(x);
    let lu = Lu::factor(&shifted);
    if lu.is_singular() {
        return Err(CoronalError::NearEigenvalue { x, eigenvalue: x });
    }
    let mut ones = vec![1.0; m.rows()];
    lu.solve_vec(&mut ones);
    Ok(ones.iter().sum())
}

/// The coronal of `M` at `x`, computing the spectrum of `M` internally for
/// the proximity check. Prefer [`coronal_with_spectrum`] in loops.
pub fn coronal(m: &Mat, x: f64, delta: f64) -> Result<f64, CoronalError> {
    let eigenvalues = symmetric_eigenvalues(m).map_err(CoronalError::Eigen)?;
    coronal_with_spectrum(m, &eigenvalues, x, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn petersen_adjacency_spectrum() {
        let s = Spectrum::of(&generators::petersen(), MatrixKind::Adjacency).unwrap();
        let mut want = vec![3.0];
        want.extend(core::iter::repeat(1.0).take(5));
        want.extend(core::iter::repeat(-2.0).take(4));
        let m = multiset_equal(s.values(), &want, 1e-8);
        assert!(m.equal, "deviation {}", m.max_deviation);
        // Conventional order for adjacency: descending.
        assert!((s.values()[0] - 3.0).abs() < 1e-8);
    }

    #[test]
    fn four_cycle_laplacian_spectrum() {
        let s = Spectrum::of(&generators::cycle(4).unwrap(), MatrixKind::Laplacian).unwrap();
        let m = multiset_equal(s.values(), &[0.0, 2.0, 2.0, 4.0], 1e-8);
        assert!(m.equal, "deviation {}", m.max_deviation);
        // Conventional order for Laplacian: ascending.
        assert!(s.values()[0].abs() < 1e-8);
    }

    #[test]
    fn multiset_comparison_catches_mismatches() {
        let m = multiset_equal(&[1.0, 2.0], &[1.0, 2.0, 3.0], 1e-6);
        assert!(!m.equal);
        assert!(m.max_deviation.is_infinite());
        let m = multiset_equal(&[2.0, 1.0], &[1.0, 2.0 + 5e-7], 1e-6);
        assert!(m.equal);
        assert!((m.max_deviation - 5e-7).abs() < 1e-12);
        let m = multiset_equal(&[2.0, 1.0], &[1.0, 2.1], 1e-6);
        assert!(!m.equal);
    }

    #[test]
    fn coronal_of_constant_row_sum_matrix_is_closed_form() {
        // For a matrix with constant row sum t on n vertices the coronal is
        // n / (x - t); adjacency of C4 has t = 2.
        let a = generators::cycle(4).unwrap().matrix(MatrixKind::Adjacency);
        for x in [3.0, 5.5, -4.25] {
            let got = coronal(&a, x, 1e-6).unwrap();
            let want = 4.0 / (x - 2.0);
            assert!((got - want).abs() < 1e-12, "x={x}: got {got}, want {want}");
        }
        // Laplacians always have row sum 0.
        let l = generators::petersen().matrix(MatrixKind::Laplacian);
        let got = coronal(&l, 2.5, 1e-6).unwrap();
        assert!((got - 10.0 / 2.5).abs() < 1e-12);
    }

    #[test]
    fn coronal_of_uneven_star_matches_hand_value() {
        // The star on 1+2 vertices has adjacency coronal
        // ((p+q)x + 2pq) / (x^2 - pq) with p=1, q=2; at x=2 that is 5.
        let g = generators::complete_bipartite(1, 2).unwrap();
        let got = coronal(&g.matrix(MatrixKind::Adjacency), 2.0, 1e-6).unwrap();
        assert!((got - 5.0).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn coronal_refuses_points_near_eigenvalues() {
        let a = generators::cycle(4).unwrap().matrix(MatrixKind::Adjacency);
        // Spectrum of A(C4) is {2, 0, 0, -2}.
        match coronal(&a, 2.0 + 1e-4, 1e-3) {
            Err(CoronalError::NearEigenvalue { .. }) => {}
            other => panic!("expected proximity refusal, got {other:?}"),
        }
        assert!(coronal(&a, 2.0 + 1e-2, 1e-3).is_ok());
    }
}
