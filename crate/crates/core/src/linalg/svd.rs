//! One-sided (Hestenes) Jacobi singular value decomposition.
//!
//! Columns are orthogonalized pairwise by unitary plane rotations until every
//! pair is numerically orthogonal. Small singular values come out with
//! absolute error on the order of `eps * σ_max`, which is what the numerical
//! rank threshold needs.

use super::matrix::Matrix;
use super::vector::Scalar;
use crate::error::{FrameError, Result};

const MAX_SWEEPS: usize = 80;

/// `m · v = u · diag(sigma)` with singular values in descending order.
///
/// Columns of `u` belonging to zero singular values are left at zero.
#[derive(Debug, Clone)]
pub struct ColumnSvd {
    pub sigma: Vec<f64>,
    pub u: Matrix,
    pub v: Matrix,
}

impl ColumnSvd {
    /// Number of singular values above `rel_tol * σ_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        numerical_rank(&self.sigma, rel_tol)
    }
}

pub fn numerical_rank(sigma: &[f64], rel_tol: f64) -> usize {
    let max = sigma.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Decomposes `m` by orthogonalizing its columns.
pub fn svd_columns(m: &Matrix) -> Result<ColumnSvd> {
    let rows = m.rows();
    let cols = m.cols();
    // Column-major working copies.
    let mut a: Vec<Vec<Scalar>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<Scalar>> = (0..cols)
        .map(|j| {
            let mut e = vec![Scalar::new(0.0, 0.0); cols];
            e[j] = Scalar::new(1.0, 0.0);
            e
        })
        .collect();

    let mut converged = cols < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha: f64 = a[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = a[q].iter().map(|z| z.norm_sqr()).sum();
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let g = a[p]
                    .iter()
                    .zip(&a[q])
                    .fold(Scalar::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y);
                let gamma = g.norm();
                if gamma <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let ph_conj = (g / gamma).conj();
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (lo, hi) = a.split_at_mut(q);
                rotate_pair(&mut lo[p], &mut hi[0], c, s, ph_conj);
                let (lo, hi) = v.split_at_mut(q);
                rotate_pair(&mut lo[p], &mut hi[0], c, s, ph_conj);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(FrameError::EigenNoConverge { sweeps: MAX_SWEEPS });
    }

    let norms: Vec<f64> = a
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let u = Matrix::from_fn(rows, cols, |r, c| {
        let j = order[c];
        if norms[j] > 0.0 {
            a[j][r] / norms[j]
        } else {
            Scalar::new(0.0, 0.0)
        }
    });
    let v = Matrix::from_fn(cols, cols, |r, c| v[order[c]][r]);
    Ok(ColumnSvd { sigma, u, v })
}

fn rotate_pair(p: &mut [Scalar], q: &mut [Scalar], c: f64, s: f64, ph_conj: Scalar) {
    for (x, y) in p.iter_mut().zip(q.iter_mut()) {
        let xp = *x;
        let yq = *y * ph_conj;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

/// Singular values of `m` (descending), padded with zeros to `m.cols()`
/// entries. Works on whichever orientation has fewer columns.
pub fn singular_values(m: &Matrix) -> Result<Vec<f64>> {
    let mut sigma = if m.cols() <= m.rows() {
        svd_columns(m)?.sigma
    } else {
        svd_columns(&m.adjoint())?.sigma
    };
    sigma.resize(m.cols(), 0.0);
    Ok(sigma)
}
