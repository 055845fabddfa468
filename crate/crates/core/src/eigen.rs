//! Dense symmetric eigensolver (cyclic Jacobi rotations).
//!
//! This is the spectral route of the verification oracle. It never sees the
//! factored closed forms, so agreement between the two is evidence, not
//! circularity.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Mat;

#[derive(Debug, Clone, PartialEq)]
pub enum EigenError {
    NotSquare { rows: usize, cols: usize },
    NotSymmetric { max_asymmetry: f64 },
    NoConvergence { sweeps: usize },
}

impl core::fmt::Display for EigenError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EigenError::NotSquare { rows, cols } => {
                write!(f, "eigensolver needs a square matrix, got {rows}x{cols}")
            }
            EigenError::NotSymmetric { max_asymmetry } => {
                write!(f, "eigensolver needs a symmetric matrix, max |m_ij - m_ji| = {max_asymmetry}")
            }
            EigenError::NoConvergence { sweeps } => {
                write!(f, "Jacobi iteration did not converge in {sweeps} sweeps")
            }
        }
    }
}

/// Eigenvalues in ascending order, with eigenvectors as matching columns
/// when requested.
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Option<Mat>,
}

const MAX_SWEEPS: usize = 150;

fn check_symmetric(m: &Mat) -> Result<(), EigenError> {
    if !m.is_square() {
        return Err(EigenError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let tol = 1e-12 * if m.max_abs() > 1.0 { m.max_abs() } else { 1.0 };
    let asym = m.max_asymmetry();
    if asym > tol {
        return Err(EigenError::NotSymmetric { max_asymmetry: asym });
    }
    Ok(())
}

fn off_diagonal_norm_sq(a: &Mat) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[(i, j)] * a[(i, j)];
        }
    }
    2.0 * s
}

fn jacobi(m: &Mat, want_vectors: bool) -> Result<SymEigen, EigenError> {
    check_symmetric(m)?;
    let n = m.rows();
    let mut a = m.clone();
    let mut v = if want_vectors { Some(Mat::identity(n)) } else { None };

    if n <= 1 {
        let values = if n == 1 { vec![a[(0, 0)]] } else { Vec::new() };
        return Ok(SymEigen { values, vectors: v });
    }

    // Convergence scale: rotations stop once every off-diagonal entry is
    // negligible relative to the matrix as a whole.
    let scale = if m.max_abs() > 1.0 { m.max_abs() } else { 1.0 };
    let target = (1e-14 * scale) * (1e-14 * scale) * (n * n) as f64;
    // Matrices with large eigenvalue multiplicities enter a slow phase where
    // sweeps only shave a constant factor off the remaining mass. Truncating
    // that mass perturbs eigenvalues by at most its Frobenius norm, so once a
    // sweep fails to halve it below this bound the result is already far
    // tighter than anything compared against it.
    let floor_accept = (1e-12 * scale) * (1e-12 * scale) * (n * n) as f64;

    let mut converged = false;
    let mut prev_off = f64::INFINITY;
    for _sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_norm_sq(&a);
        if off <= target || (off <= floor_accept && off > 0.5 * prev_off) {
            converged = true;
            break;
        }
        prev_off = off;
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if libm::fabs(apq) <= 1e-300 {
                    continue;
                }
                // Classic stable rotation: theta = (a_qq - a_pp) / (2 a_pq),
                // t = sign(theta) / (|theta| + sqrt(theta^2 + 1)).
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;

                let app = a[(p, p)];
                let aqq = a[(q, q)];
                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = c * aip - s * aiq;
                    a[(p, i)] = a[(i, p)];
                    a[(i, q)] = c * aiq + s * aip;
                    a[(q, i)] = a[(i, q)];
                }
                if let Some(vm) = v.as_mut() {
                    for i in 0..n {
                        let vip = vm[(i, p)];
                        let viq = vm[(i, q)];
                        vm[(i, p)] = c * vip - s * viq;
                        vm[(i, q)] = c * viq + s * vip;
                    }
                }
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm_sq(&a);
        if off > target && off > floor_accept {
            return Err(EigenError::NoConvergence { sweeps: MAX_SWEEPS });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Insertion sort by diagonal value keeps this allocation-light and stable.
    for i in 1..n {
        let mut j = i;
        while j > 0 && a[(order[j - 1], order[j - 1])] > a[(order[j], order[j])] {
            order.swap(j - 1, j);
            j -= 1;
        }
    }
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)]).collect();
    let vectors = v.map(|vm| {
        Mat::from_fn(n, n, |i, j| vm[(i, order[j])])
    });
    Ok(SymEigen { values, vectors })
}

/// Eigenvalues and eigenvectors of a symmetric matrix, values ascending.
pub fn symmetric_eigen(m: &Mat) -> Result<SymEigen, EigenError> {
    jacobi(m, true)
}

/// Eigenvalues only, ascending.
pub fn symmetric_eigenvalues(m: &Mat) -> Result<Vec<f64>, EigenError> {
    jacobi(m, false).map(|e| e.values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]]) -> Mat {
        Mat::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j])
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g - w).abs() < tol, "got {got:?}, want {want:?}");
        }
    }

    #[test]
    fn two_by_two_exact() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let m = mat(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let vals = symmetric_eigenvalues(&m).unwrap();
        assert_close(&vals, &[1.0, 3.0], 1e-12);
    }

    #[test]
    fn path_graph_laplacian_spectrum() {
        // L(P3) = [[1,-1,0],[-1,2,-1],[0,-1,1]] has eigenvalues {0,1,3}.
        let m = mat(&[&[1.0, -1.0, 0.0], &[-1.0, 2.0, -1.0], &[0.0, -1.0, 1.0]]);
        let vals = symmetric_eigenvalues(&m).unwrap();
        assert_close(&vals, &[0.0, 1.0, 3.0], 1e-10);
    }

    #[test]
    fn four_cycle_laplacian_spectrum() {
        // L(C4) eigenvalues are {0, 2, 2, 4}.
        let m = mat(&[
            &[2.0, -1.0, 0.0, -1.0],
            &[-1.0, 2.0, -1.0, 0.0],
            &[0.0, -1.0, 2.0, -1.0],
            &[-1.0, 0.0, -1.0, 2.0],
        ]);
        let vals = symmetric_eigenvalues(&m).unwrap();
        assert_close(&vals, &[0.0, 2.0, 2.0, 4.0], 1e-10);
    }

    #[test]
    fn eigenvectors_reconstruct_matrix() {
        let m = mat(&[
            &[4.0, 1.0, -2.0, 2.0],
            &[1.0, 2.0, 0.0, 1.0],
            &[-2.0, 0.0, 3.0, -2.0],
            &[2.0, 1.0, -2.0, -1.0],
        ]);
        let e = symmetric_eigen(&m).unwrap();
        let v = e.vectors.unwrap();
        // V diag(values) V^T == M.
        let n = m.rows();
        let mut recon = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += v[(i, k)] * e.values[k] * v[(j, k)];
                }
                recon[(i, j)] = s;
            }
        }
        let diff = recon.sub(&m);
        assert!(diff.max_abs() < 1e-10, "max reconstruction error {}", diff.max_abs());
    }

    #[test]
    fn rejects_asymmetric_input() {
        let m = mat(&[&[1.0, 2.0], &[3.0, 4.0]]);
        match symmetric_eigenvalues(&m) {
            Err(EigenError::NotSymmetric { .. }) => {}
            other => panic!("expected symmetry rejection, got {other:?}"),
        }
    }

    #[test]
    fn rejects_rectangular_input() {
        let m = Mat::zeros(2, 3);
        match symmetric_eigenvalues(&m) {
            Err(EigenError::NotSquare { rows: 2, cols: 3 }) => {}
            other => panic!("expected shape rejection, got {other:?}"),
        }
    }

    #[test]
    fn empty_and_single_entry_matrices() {
        assert!(symmetric_eigenvalues(&Mat::zeros(0, 0)).unwrap().is_empty());
        let one = mat(&[&[7.5]]);
        assert_eq!(symmetric_eigenvalues(&one).unwrap(), vec![7.5]);
    }
}
