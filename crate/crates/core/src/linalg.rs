//! LU factorization with partial pivoting: determinants and linear solves.
//!
//! This is the determinant route of the verification oracle, deliberately
//! separate from both the eigensolver and the factored closed forms.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Mat;

/// Row-pivoted LU factorization of a square matrix.
pub struct Lu {
    lu: Mat,
    pivots: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    pub fn factor(m: &Mat) -> Lu {
        assert!(m.is_square(), "LU factorization needs a square matrix");
        let n = m.rows();
        let mut lu = m.clone();
        let mut pivots = vec![0usize; n];
        let mut sign = 1.0;
        let mut singular = false;

        for k in 0..n {
            let mut p = k;
            let mut best = libm::fabs(lu[(k, k)]);
            for i in (k + 1)..n {
                let v = libm::fabs(lu[(i, k)]);
                if v > best {
                    best = v;
                    p = i;
                }
            }
            pivots[k] = p;
            if best == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor != 0.0 {
                    for j in (k + 1)..n {
                        let delta = factor * lu[(k, j)];
                        lu[(i, j)] -= delta;
                    }
                }
            }
        }

        Lu { lu, pivots, sign, singular }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> f64 {
        if self.singular {
            return 0.0;
        }
        let mut d = self.sign;
        for i in 0..self.lu.rows() {
            d *= self.lu[(i, i)];
        }
        d
    }

    /// Smallest |U_kk|; 0.0 when exactly singular. A cheap conditioning
    /// signal for callers that must refuse near-singular solves.
    pub fn min_abs_pivot(&self) -> f64 {
        if self.singular {
            return 0.0;
        }
        let mut worst = f64::INFINITY;
        for i in 0..self.lu.rows() {
            worst = worst.min(libm::fabs(self.lu[(i, i)]));
        }
        worst
    }

    /// Solves `A x = b` in place.
    pub fn solve_vec(&self, b: &mut [f64]) {
        assert!(!self.singular, "solve on a singular factorization");
        let n = self.lu.rows();
        assert_eq!(b.len(), n);
        // The stored multipliers live in fully pivoted row order, so all row
        // interchanges must happen before the first elimination is replayed.
        for k in 0..n {
            let p = self.pivots[k];
            if p != k {
                b.swap(k, p);
            }
        }
        for k in 0..n {
            let bk = b[k];
            if bk != 0.0 {
                for i in (k + 1)..n {
                    b[i] -= self.lu[(i, k)] * bk;
                }
            }
        }
        for k in (0..n).rev() {
            b[k] /= self.lu[(k, k)];
            let bk = b[k];
            if bk != 0.0 {
                for i in 0..k {
                    b[i] -= self.lu[(i, k)] * bk;
                }
            }
        }
    }

    /// Solves `A X = B` column by column.
    pub fn solve_mat(&self, b: &Mat) -> Mat {
        let n = self.lu.rows();
        assert_eq!(b.rows(), n);
        let mut out = Mat::zeros(n, b.cols());
        let mut col = vec![0.0; n];
        for j in 0..b.cols() {
            for i in 0..n {
                col[i] = b[(i, j)];
            }
            self.solve_vec(&mut col);
            for i in 0..n {
                out[(i, j)] = col[i];
            }
        }
        out
    }
}

/// `det(M)`.
pub fn det(m: &Mat) -> f64 {
    Lu::factor(m).det()
}

/// `det(xI - M)`: the characteristic polynomial of `M` evaluated at `x`.
pub fn det_at(m: &Mat, x: f64) -> f64 {
    assert!(m.is_square());
    let shifted = m.scale(-1.0).plus_scaled_identity(x);
    det(&shifted)
}
