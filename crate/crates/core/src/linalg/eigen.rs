//! Cyclic Jacobi diagonalization of small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the
//! off-diagonal mass decreases monotonically. Pivots are visited row-major
//! over the upper triangle, which makes the whole procedure deterministic.

use super::matrix::{HermMatrix, Matrix};
use super::vector::Scalar;
use crate::error::{FrameError, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with the matching unit eigenvectors stored
/// as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

fn off_diagonal_sqr(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// Full eigendecomposition. `tol` is the relative accuracy demanded of the
/// eigenvalues; iteration continues to machine precision when possible and
/// only fails if `tol` has not been reached after the sweep cap.
pub fn hermitian_eigen(m: &HermMatrix, tol: f64) -> Result<EigenDecomposition> {
    let n = m.dim();
    let mut a = m.matrix().clone();
    let mut v = Matrix::identity(n);
    let scale_sqr = a.frobenius_norm().powi(2);
    let target = (f64::EPSILON * f64::EPSILON) * scale_sqr;

    let mut sweeps = 0;
    while off_diagonal_sqr(&a) > target {
        if sweeps == MAX_SWEEPS {
            if off_diagonal_sqr(&a) <= tol * tol * scale_sqr {
                break;
            }
            return Err(FrameError::EigenNoConverge { sweeps });
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                rotated |= rotate(&mut a, &mut v, p, q);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(EigenDecomposition { values, vectors })
}

// Annihilates a[p][q]; returns false when the pivot is already negligible.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) -> bool {
    let g = a[(p, q)];
    let g_abs = g.norm();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if g_abs == 0.0 || g_abs <= 1e-3 * f64::EPSILON * (app.abs() * aqq.abs()).sqrt() {
        a[(p, q)] = Scalar::new(0.0, 0.0);
        a[(q, p)] = Scalar::new(0.0, 0.0);
        return false;
    }
    let phase = g / g_abs;
    let tau = (aqq - app) / (2.0 * g_abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let ph_conj = phase.conj();

    let n = a.rows();
    // A <- A U, U = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on columns p, q.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)] * ph_conj;
        a[(k, p)] = akp * c - akq * s;
        a[(k, q)] = akp * s + akq * c;
    }
    // A <- U* A on rows p, q.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)] * phase;
        a[(p, k)] = apk * c - aqk * s;
        a[(q, k)] = apk * s + aqk * c;
    }
    a[(p, p)] = Scalar::new(app - t * g_abs, 0.0);
    a[(q, q)] = Scalar::new(aqq + t * g_abs, 0.0);
    a[(p, q)] = Scalar::new(0.0, 0.0);
    a[(q, p)] = Scalar::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)] * ph_conj;
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
    true
}

/// Smallest and largest eigenvalue.
pub fn extremal_eigenvalues(m: &HermMatrix, tol: f64) -> Result<(f64, f64)> {
    let eig = hermitian_eigen(m, tol)?;
    Ok((eig.values[0], eig.values[eig.values.len() - 1]))
}

/// Operator (spectral) norm: the square root of the largest eigenvalue of the
/// Hermitian square `m* m`.
pub fn operator_norm(m: &Matrix, tol: f64) -> Result<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0.0);
    }
    let gram = if m.rows() < m.cols() {
        m.mul(&m.adjoint())?
    } else {
        m.adjoint().mul(m)?
    };
    let (_, max) = extremal_eigenvalues(&HermMatrix::new(gram)?, tol)?;
    Ok(max.max(0.0).sqrt())
}
