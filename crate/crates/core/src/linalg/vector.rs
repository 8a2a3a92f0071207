use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};

pub type Scalar = Complex64;

/// Dense complex vector in a truncated ambient space, stored as coordinates
/// with respect to a fixed orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vector {
    coords: Vec<Scalar>,
}

impl Vector {
    /// Builds a vector, rejecting empty input and non-finite coordinates.
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(FrameError::DimMismatch {
                expected: 1,
                found: 0,
            });
        }
        if coords
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(FrameError::NonFinite);
        }
        Ok(Self { coords })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Scalar::new(v, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector dimension must be positive");
        Self {
            coords: vec![Scalar::new(0.0, 0.0); dim],
        }
    }

    /// The `k`-th standard basis vector (zero-based).
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[k] = Scalar::new(1.0, 0.0);
        v
    }

    // Internal constructor for values produced by arithmetic on finite data.
    pub(crate) fn from_raw(coords: Vec<Scalar>) -> Self {
        debug_assert!(!coords.is_empty());
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// `⟨self, other⟩`, linear in `self` and conjugate-linear in `other`.
    pub fn inner(&self, other: &Vector) -> Result<Scalar> {
        inner_product(self, other)
    }

    pub fn scale(&self, a: Scalar) -> Vector {
        Vector::from_raw(self.coords.iter().map(|c| c * a).collect())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        check_dims(self, other)?;
        Ok(Vector::from_raw(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        check_dims(self, other)?;
        Ok(Vector::from_raw(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    /// `self += a * other`.
    pub fn axpy(&mut self, a: Scalar, other: &Vector) -> Result<()> {
        check_dims(self, other)?;
        for (s, o) in self.coords.iter_mut().zip(&other.coords) {
            *s += a * o;
        }
        Ok(())
    }

    /// Embeds the vector in a larger ambient space by appending zero
    /// coordinates.
    pub fn padded(&self, dim: usize) -> Result<Vector> {
        if dim < self.dim() {
            return Err(FrameError::DimMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        let mut coords = self.coords.clone();
        coords.resize(dim, Scalar::new(0.0, 0.0));
        Ok(Vector::from_raw(coords))
    }
}

fn check_dims(u: &Vector, v: &Vector) -> Result<()> {
    if u.dim() != v.dim() {
        return Err(FrameError::DimMismatch {
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(())
}

/// `Σ_k u_k · conj(v_k)`.
pub fn inner_product(u: &Vector, v: &Vector) -> Result<Scalar> {
    check_dims(u, v)?;
    Ok(u.coords
        .iter()
        .zip(&v.coords)
        .fold(Scalar::new(0.0, 0.0), |acc, (a, b)| acc + a * b.conj()))
}

/// Projection of `v` onto the orthogonal complement of `span{span_vec}`.
pub fn project_complement(v: &Vector, span_vec: &Vector) -> Result<Vector> {
    check_dims(v, span_vec)?;
    let s2 = span_vec.norm_sqr();
    if s2 == 0.0 {
        return Err(FrameError::ZeroSpanVector);
    }
    let coef = inner_product(v, span_vec)? / s2;
    let mut out = v.clone();
    out.axpy(-coef, span_vec)?;
    Ok(out)
}
