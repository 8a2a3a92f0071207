use crate::duality::is_realizable;
use crate::error::{FrameError, Result};
use crate::family::FrameFamily;
use crate::linalg::{svd_columns, Scalar, Vector};
use crate::Tolerances;

/// Range of the analysis operator `x ↦ (⟨x, x_n⟩)_n` inside coefficient
/// space, stored as an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSpace {
    pub basis: Vec<Vector>,
    pub count: usize,
    pub codim: usize,
}

impl MomentSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthogonal projection of `c` onto the space.
    pub fn project(&self, c: &Vector) -> Result<Vector> {
        let mut p = Vector::zeros(self.count);
        for q in &self.basis {
            p.axpy(c.inner(q)?, q)?;
        }
        Ok(p)
    }
}

pub fn moment_space(f: &FrameFamily, tol: &Tolerances) -> Result<MomentSpace> {
    let svd = svd_columns(&f.analysis_matrix())?;
    let rank = svd.rank(tol.rank);
    let basis = (0..rank)
        .map(|j| Vector::new(svd.u.column(j)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentSpace {
        basis,
        count: f.count(),
        codim: f.count() - rank,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub in_space: bool,
    /// `‖c − P c‖`.
    pub residual: f64,
    /// `‖P c‖`.
    pub projection_norm: f64,
}

pub fn moment_membership(ms: &MomentSpace, c: &[Scalar], tol: &Tolerances) -> Result<Membership> {
    if c.len() != ms.count {
        return Err(FrameError::CountMismatch {
            expected: ms.count,
            found: c.len(),
        });
    }
    let c = Vector::new(c.to_vec())?;
    let p = ms.project(&c)?;
    let residual = c.sub(&p)?.norm();
    Ok(Membership {
        in_space: residual <= tol.rank * c.norm(),
        residual,
        projection_norm: p.norm(),
    })
}

/// Whether two families of equal length have the same moment space.
pub fn moment_space_equal(f: &FrameFamily, g: &FrameFamily, tol: &Tolerances) -> Result<bool> {
    if f.count() != g.count() {
        return Err(FrameError::CountMismatch {
            expected: f.count(),
            found: g.count(),
        });
    }
    let a = moment_space(f, tol)?;
    let b = moment_space(g, tol)?;
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let inside = |from: &MomentSpace, to: &MomentSpace| -> Result<bool> {
        for q in &from.basis {
            if q.sub(&to.project(q)?)?.norm() > tol.rank {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(inside(&a, &b)? && inside(&b, &a)?)
}

/// Membership in the union of the moment spaces of all alternative duals,
/// which coincides with realizability of `c`.
pub fn extended_moment_membership(f: &FrameFamily, c: &[Scalar], tol: &Tolerances) -> Result<bool> {
    is_realizable(f, c, tol)
}
