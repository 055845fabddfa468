//! Real roots of monic polynomials via companion-matrix QR iteration.
//!
//! The spectrum predictors factor characteristic polynomials into small
//! cubic and quartic pieces; this module turns those pieces back into
//! eigenvalues. Closed-form cubic/quartic solvers are unstable near repeated
//! roots, so instead we run the Francis double-shift QR iteration (EISPACK
//! `hqr` lineage, eigenvalues only) on the companion matrix.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::Mat;

#[derive(Debug, Clone, PartialEq)]
pub enum RootsError {
    /// A root has an imaginary part too large to truncate to the real line.
    ComplexPair { re: f64, im: f64 },
    NoConvergence { iterations: usize },
}

impl core::fmt::Display for RootsError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RootsError::ComplexPair { re, im } => {
                write!(f, "polynomial has a non-real root {re} + {im}i")
            }
            RootsError::NoConvergence { iterations } => {
                write!(f, "QR iteration did not converge within {iterations} steps per root")
            }
        }
    }
}

/// Imaginary parts below this (relative to the root's magnitude) are
/// rounding noise from an isolated real root and get truncated.
const IMAG_TOL: f64 = 1e-7;
/// QR scatters an m-fold root over a disc of radius about epsilon^(1/m),
/// so members of a repeated root land up to about 1e-4 apart (and off the
/// real axis by the same amount) before refinement pulls them back.
const CLUSTER_RADIUS: f64 = 1e-4;
const CLUSTER_IMAG_TOL: f64 = 1e-3;
const MAX_ITER_PER_ROOT: usize = 60;

/// Roots of `x^d + c[d-1] x^(d-1) + ... + c[1] x + c[0]`, ascending.
///
/// `coeffs` lists `c[0]..c[d-1]`; the leading coefficient is implicitly 1.
/// Errors if any root is genuinely complex.
pub fn real_roots_monic(coeffs: &[f64]) -> Result<Vec<f64>, RootsError> {
    let d = coeffs.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        return Ok(vec![-coeffs[0]]);
    }
    // Companion matrix: ones on the subdiagonal, last column -c.
    let mut h = Mat::zeros(d, d);
    for i in 1..d {
        h[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        h[(i, d - 1)] = -coeffs[i];
    }
    let (re, im) = hessenberg_eigenvalues(&mut h)?;
    let mut pts: Vec<(f64, f64)> = re.into_iter().zip(im).collect();
    pts.sort_unstable_by(|a, b| f64::total_cmp(&a.0, &b.0));

    let mut roots = Vec::with_capacity(d);
    let mut i = 0;
    while i < pts.len() {
        // Grow the cluster while adjacent real parts stay within the QR
        // scatter radius of a repeated root.
        let mut j = i + 1;
        while j < pts.len() {
            let gap = pts[j].0 - pts[j - 1].0;
            let mag = libm::fabs(pts[j].0);
            let scale = if mag > 1.0 { mag } else { 1.0 };
            if gap > CLUSTER_RADIUS * scale {
                break;
            }
            j += 1;
        }
        let m = j - i;
        if m == 1 {
            let (r, v) = pts[i];
            let scale = if libm::fabs(r) > 1.0 { libm::fabs(r) } else { 1.0 };
            if libm::fabs(v) > IMAG_TOL * scale {
                return Err(RootsError::ComplexPair { re: r, im: v });
            }
            roots.push(newton_polish(coeffs, r));
        } else {
            let mut mean = 0.0;
            for &(r, v) in &pts[i..j] {
                let scale = if libm::fabs(r) > 1.0 { libm::fabs(r) } else { 1.0 };
                if libm::fabs(v) > CLUSTER_IMAG_TOL * scale {
                    return Err(RootsError::ComplexPair { re: r, im: v });
                }
                mean += r;
            }
            mean /= m as f64;
            // The scatter is nearly symmetric around the true root, so the
            // mean recovers most digits before Newton finishes the job.
            let x = newton_polish_multiple(coeffs, mean, m);
            for _ in 0..m {
                roots.push(x);
            }
        }
        i = j;
    }
    roots.sort_unstable_by(f64::total_cmp);
    Ok(roots)
}

fn eval_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 1.0;
    let mut dp = 0.0;
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Up to two Newton corrections, each kept only if it shrinks the residual.
/// Simple roots are already at machine precision and stay there; truncating
/// a rounding-noise imaginary part costs the real part accuracy, which this
/// buys back.
fn newton_polish(coeffs: &[f64], mut x: f64) -> f64 {
    let (mut p, _) = eval_with_derivative(coeffs, x);
    for _ in 0..2 {
        let (pc, dpc) = eval_with_derivative(coeffs, x);
        if pc == 0.0 || dpc == 0.0 {
            break;
        }
        let candidate = x - pc / dpc;
        let (pnew, _) = eval_with_derivative(coeffs, candidate);
        if libm::fabs(pnew) >= libm::fabs(p) {
            break;
        }
        x = candidate;
        p = pnew;
    }
    x
}

/// Newton refinement at an m-fold root: the plain step converges linearly
/// with ratio (m-1)/m there, so the step is scaled by m. Once the mean sits
/// within rounding distance of the root, p and its derivative are both noise
/// and their quotient can be a wild jump, so a step is only kept when it
/// shrinks the residual.
fn newton_polish_multiple(coeffs: &[f64], mut x: f64, m: usize) -> f64 {
    let mm = m as f64;
    let (mut p, mut dp) = eval_with_derivative(coeffs, x);
    for _ in 0..4 {
        if p == 0.0 || dp == 0.0 {
            break;
        }
        let step = mm * p / dp;
        if !step.is_finite() {
            break;
        }
        let candidate = x - step;
        let (pc, dpc) = eval_with_derivative(coeffs, candidate);
        if libm::fabs(pc) >= libm::fabs(p) {
            break;
        }
        x = candidate;
        p = pc;
        dp = dpc;
    }
    x
}

/// Eigenvalues of an upper Hessenberg matrix, returned as (real, imaginary)
/// parts. Destroys `h`. Double-shift QR with the two classic exceptional
/// shifts; bounded iteration count instead of looping forever.
fn hessenberg_eigenvalues(h: &mut Mat) -> Result<(Vec<f64>, Vec<f64>), RootsError> {
    let nn = h.rows() as isize;
    let mut d = vec![0.0; nn as usize];
    let mut e = vec![0.0; nn as usize];
    if nn == 0 {
        return Ok((d, e));
    }

    let low: isize = 0;
    let eps = f64::EPSILON;
    let mut exshift = 0.0;
    let (mut p, mut q, mut r, mut s, mut z, mut w, mut x, mut y);

    let at = |h: &Mat, i: isize, j: isize| h[(i as usize, j as usize)];

    let mut norm = 0.0;
    for i in 0..nn {
        let j0 = if i > 0 { i - 1 } else { 0 };
        for j in j0..nn {
            norm += libm::fabs(at(h, i, j));
        }
    }
    if norm == 0.0 {
        return Ok((d, e));
    }

    let mut n = nn - 1;
    let mut iter = 0usize;
    while n >= low {
        // Find a single negligible subdiagonal element.
        let mut l = n;
        while l > low {
            s = libm::fabs(at(h, l - 1, l - 1)) + libm::fabs(at(h, l, l));
            if s == 0.0 {
                s = norm;
            }
            if libm::fabs(at(h, l, l - 1)) < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // One root deflated.
            d[n as usize] = at(h, n, n) + exshift;
            e[n as usize] = 0.0;
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // A 2x2 block deflated: real pair or complex conjugates.
            w = at(h, n, n - 1) * at(h, n - 1, n);
            p = (at(h, n - 1, n - 1) - at(h, n, n)) / 2.0;
            q = p * p + w;
            z = libm::sqrt(libm::fabs(q));
            let xx = at(h, n, n) + exshift;
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                d[(n - 1) as usize] = xx + z;
                d[n as usize] = d[(n - 1) as usize];
                if z != 0.0 {
                    d[n as usize] = xx - w / z;
                }
                e[(n - 1) as usize] = 0.0;
                e[n as usize] = 0.0;
            } else {
                d[(n - 1) as usize] = xx + p;
                d[n as usize] = xx + p;
                e[(n - 1) as usize] = z;
                e[n as usize] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            // Form the shift.
            x = at(h, n, n);
            y = at(h, n - 1, n - 1);
            w = at(h, n, n - 1) * at(h, n - 1, n);

            // Exceptional shifts when the ordinary ones stall.
            if iter == 10 {
                exshift += x;
                for i in low..=n {
                    h[(i as usize, i as usize)] -= x;
                }
                s = libm::fabs(at(h, n, n - 1)) + libm::fabs(at(h, n - 1, n - 2));
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = libm::sqrt(s);
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=n {
                        h[(i as usize, i as usize)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = 0.964;
                    w = 0.964;
                }
            }

            iter += 1;
            if iter > MAX_ITER_PER_ROOT {
                return Err(RootsError::NoConvergence { iterations: MAX_ITER_PER_ROOT });
            }

            // Find two consecutive small subdiagonal elements.
            let mut m = n - 2;
            loop {
                z = at(h, m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / at(h, m + 1, m) + at(h, m, m + 1);
                q = at(h, m + 1, m + 1) - z - r - s;
                r = at(h, m + 2, m + 1);
                s = libm::fabs(p) + libm::fabs(q) + libm::fabs(r);
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if libm::fabs(at(h, m, m - 1)) * (libm::fabs(q) + libm::fabs(r))
                    < eps
                        * (libm::fabs(p)
                            * (libm::fabs(at(h, m - 1, m - 1))
                                + libm::fabs(z)
                                + libm::fabs(at(h, m + 1, m + 1))))
                {
                    break;
                }
                m -= 1;
            }

            for i in (m + 2)..=n {
                h[(i as usize, (i - 2) as usize)] = 0.0;
                if i > m + 2 {
                    h[(i as usize, (i - 3) as usize)] = 0.0;
                }
            }

            // One implicit double-shift QR step on rows l..=n.
            for k in m..n {
                let notlast = k != n - 1;
                if k != m {
                    p = at(h, k, k - 1);
                    q = at(h, k + 1, k - 1);
                    r = if notlast { at(h, k + 2, k - 1) } else { 0.0 };
                    x = libm::fabs(p) + libm::fabs(q) + libm::fabs(r);
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = libm::sqrt(p * p + q * q + r * r);
                if p < 0.0 {
                    s = -s;
                }
                if s != 0.0 {
                    if k != m {
                        h[(k as usize, (k - 1) as usize)] = -s * x;
                    } else if l != m {
                        h[(k as usize, (k - 1) as usize)] = -at(h, k, k - 1);
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;

                    for j in k..nn {
                        let mut pp = at(h, k, j) + q * at(h, k + 1, j);
                        if notlast {
                            pp += r * at(h, k + 2, j);
                            h[((k + 2) as usize, j as usize)] -= pp * z;
                        }
                        h[(k as usize, j as usize)] -= pp * x;
                        h[((k + 1) as usize, j as usize)] -= pp * y;
                    }

                    let imax = if n < k + 3 { n } else { k + 3 };
                    for i in 0..=imax {
                        let mut pp = x * at(h, i, k) + y * at(h, i, k + 1);
                        if notlast {
                            pp += z * at(h, i, k + 2);
                            h[(i as usize, (k + 2) as usize)] -= pp * r;
                        }
                        h[(i as usize, k as usize)] -= pp;
                        h[(i as usize, (k + 1) as usize)] -= pp * q;
                    }
                }
            }
        }
    }
    Ok((d, e))
}
