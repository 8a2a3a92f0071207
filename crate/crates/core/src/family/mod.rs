//! Indexed vector families, explicit or generated at a truncation level.

mod gallery;
mod io;

pub use gallery::example31_dim;
pub use gallery::{materialize, GallerySpec};
pub use io::{from_json_str, load, save, to_json_string, FILE_FORMAT};

use crate::error::{FrameError, Result};
use crate::linalg::{Matrix, Vector};

/// Where a family came from. Generated families remember their rule so that
/// they can be serialized compactly and rebuilt bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyOrigin {
    Explicit,
    Generated {
        spec: GallerySpec,
        truncation: usize,
    },
}

/// An ordered family `{x_n}` of vectors sharing one ambient dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameFamily {
    ambient_dim: usize,
    vectors: Vec<Vector>,
    origin: FamilyOrigin,
}

impl FrameFamily {
    /// Explicit family; rejects an empty list and mixed dimensions.
    pub fn explicit(vectors: Vec<Vector>) -> Result<Self> {
        let first = vectors.first().ok_or(FrameError::CountMismatch {
            expected: 1,
            found: 0,
        })?;
        let ambient_dim = first.dim();
        check_dims(&vectors, ambient_dim)?;
        Ok(Self {
            ambient_dim,
            vectors,
            origin: FamilyOrigin::Explicit,
        })
    }

    /// Convenience constructor from real coordinate rows.
    pub fn from_real(rows: &[&[f64]]) -> Result<Self> {
        Self::explicit(
            rows.iter()
                .map(|r| Vector::from_real(r))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub(crate) fn generated(
        ambient_dim: usize,
        vectors: Vec<Vector>,
        spec: GallerySpec,
        truncation: usize,
    ) -> Self {
        debug_assert!(!vectors.is_empty());
        debug_assert!(vectors.iter().all(|v| v.dim() == ambient_dim));
        Self {
            ambient_dim,
            vectors,
            origin: FamilyOrigin::Generated { spec, truncation },
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn count(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn vector(&self, n: usize) -> &Vector {
        &self.vectors[n]
    }

    pub fn origin(&self) -> &FamilyOrigin {
        &self.origin
    }

    /// Generator and truncation level, if the family was generated.
    pub fn generator(&self) -> Option<(&GallerySpec, usize)> {
        match &self.origin {
            FamilyOrigin::Generated { spec, truncation } => Some((spec, *truncation)),
            FamilyOrigin::Explicit => None,
        }
    }

    /// Same vectors, forgetting the generating rule.
    pub fn into_explicit(self) -> Self {
        Self {
            origin: FamilyOrigin::Explicit,
            ..self
        }
    }

    /// `dim × count` matrix whose columns are the family's vectors.
    pub fn synthesis_matrix(&self) -> Matrix {
        Matrix::from_fn(self.ambient_dim, self.count(), |i, j| {
            self.vectors[j].coords()[i]
        })
    }

    /// `count × dim` matrix mapping `x` to `(⟨x, x_n⟩)_n`.
    pub fn analysis_matrix(&self) -> Matrix {
        Matrix::from_fn(self.count(), self.ambient_dim, |i, j| {
            self.vectors[i].coords()[j].conj()
        })
    }

    pub(crate) fn check_same_shape(&self, other: &FrameFamily) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(FrameError::DimMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        if self.count() != other.count() {
            return Err(FrameError::CountMismatch {
                expected: self.count(),
                found: other.count(),
            });
        }
        Ok(())
    }
}

fn check_dims(vectors: &[Vector], dim: usize) -> Result<()> {
    match vectors.iter().find(|v| v.dim() != dim) {
        Some(v) => Err(FrameError::DimMismatch {
            expected: dim,
            found: v.dim(),
        }),
        None => Ok(()),
    }
}

/// `f` followed by `g`.
pub fn concat(f: &FrameFamily, g: &FrameFamily) -> Result<FrameFamily> {
    if f.ambient_dim != g.ambient_dim {
        return Err(FrameError::DimMismatch {
            expected: f.ambient_dim,
            found: g.ambient_dim,
        });
    }
    let mut vectors = f.vectors.clone();
    vectors.extend(g.vectors.iter().cloned());
    FrameFamily::explicit(vectors)
}

/// Inserts a zero vector after every element: `{f_1, 0, f_2, 0, ...}`.
pub fn interleave_zero_pad(f: &FrameFamily) -> FrameFamily {
    let zero = Vector::zeros(f.ambient_dim);
    let vectors = f
        .vectors
        .iter()
        .flat_map(|v| [v.clone(), zero.clone()])
        .collect();
    FrameFamily {
        ambient_dim: f.ambient_dim,
        vectors,
        origin: FamilyOrigin::Explicit,
    }
}
