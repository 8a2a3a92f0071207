use super::matrix::{HermMatrix, Matrix};
use super::vector::{Scalar, Vector};
use crate::error::{FrameError, Result};

/// Lower-triangular Cholesky factor `L` with `M = L L*`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    source: Matrix,
    l: Matrix,
}

impl Cholesky {
    /// Factors a Hermitian positive definite matrix. Pivots that are not
    /// comfortably above rounding level are treated as loss of definiteness.
    pub fn factor(m: &HermMatrix) -> Result<Self> {
        let a = m.matrix();
        let n = m.dim();
        let max_diag = (0..n).map(|i| a[(i, i)].re).fold(0.0, f64::max);
        let floor = (n as f64) * f64::EPSILON * max_diag;
        let mut l = Matrix::zeros(n, n);
        for j in 0..n {
            let mut d = a[(j, j)].re;
            for k in 0..j {
                d -= l[(j, k)].norm_sqr();
            }
            if d.is_nan() || d <= floor {
                return Err(FrameError::NotPositiveDefinite);
            }
            let djj = d.sqrt();
            l[(j, j)] = Scalar::new(djj, 0.0);
            for i in (j + 1)..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / djj;
            }
        }
        Ok(Self {
            source: a.clone(),
            l,
        })
    }

    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    fn solve_raw(&self, b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let l = &self.l;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= l[(i, k)] * y[k];
            }
            y[i] = s / l[(i, i)].re;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= l[(k, i)].conj() * y[k];
            }
            y[i] = s / l[(i, i)].re;
        }
        y
    }

    /// Solves `M x = b` with one step of iterative refinement.
    pub fn solve(&self, b: &Vector) -> Result<Vector> {
        if b.dim() != self.dim() {
            return Err(FrameError::DimMismatch {
                expected: self.dim(),
                found: b.dim(),
            });
        }
        let mut x = Vector::from_raw(self.solve_raw(b.coords()));
        let r = b.sub(&self.source.mul_vec(&x)?)?;
        let dx = self.solve_raw(r.coords());
        x.axpy(Scalar::new(1.0, 0.0), &Vector::from_raw(dx))?;
        Ok(x)
    }
}

/// Solves `M x = b` for Hermitian positive definite `M`.
pub fn solve_hpd(m: &HermMatrix, b: &Vector) -> Result<Vector> {
    Cholesky::factor(m)?.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let m = HermMatrix::new(Matrix::from_real_rows(&[&[4.0, 1.0], &[1.0, 3.0]])).unwrap();
        let b = Vector::from_real(&[1.0, 2.0]).unwrap();
        let x = solve_hpd(&m, &b).unwrap();
        // Exact solution (1/11, 7/11).
        assert!((x.coords()[0].re - 1.0 / 11.0).abs() < 1e-15);
        assert!((x.coords()[1].re - 7.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn complex_hermitian_system() {
        let mut a = Matrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 2.0]]);
        a[(0, 1)] = Scalar::new(0.0, 1.0);
        a[(1, 0)] = Scalar::new(0.0, -1.0);
        let m = HermMatrix::new(a.clone()).unwrap();
        let b = Vector::new(vec![Scalar::new(1.0, 1.0), Scalar::new(-2.0, 0.5)]).unwrap();
        let x = solve_hpd(&m, &b).unwrap();
        let r = a.mul_vec(&x).unwrap().sub(&b).unwrap();
        assert!(r.norm() < 1e-14);
    }

    #[test]
    fn rejects_indefinite_and_singular() {
        let m = HermMatrix::new(Matrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]])).unwrap();
        let b = Vector::from_real(&[1.0, 0.0]).unwrap();
        assert_eq!(solve_hpd(&m, &b).unwrap_err().name(), "NotPositiveDefinite");
        let m = HermMatrix::new(Matrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]])).unwrap();
        assert_eq!(solve_hpd(&m, &b).unwrap_err().name(), "NotPositiveDefinite");
    }

    #[test]
    fn rejects_wrong_rhs_length() {
        let m = HermMatrix::new(Matrix::identity(2)).unwrap();
        let b = Vector::from_real(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(solve_hpd(&m, &b).unwrap_err().name(), "DimMismatch");
    }
}
