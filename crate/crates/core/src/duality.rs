//! Dual certification and explicit dual constructions.

use crate::analysis::{
    canonical_dual, cross_operator, frame_bounds, frame_operator, identity_residual,
};
use crate::error::{FrameError, Result};
use crate::family::{FrameFamily, GallerySpec};
use crate::linalg::{
    extremal_eigenvalues, inner_product, project_complement, Cholesky, HermMatrix, Matrix, Scalar,
    Vector,
};
use crate::structure::is_minimal;
use crate::Tolerances;

/// Result of checking both reconstruction identities for a pair of families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualCertificate {
    /// `‖D_X C_Y − I‖`: failure of `x = Σ ⟨x, y_n⟩ x_n`.
    pub alt_dual_residual: f64,
    /// `‖D_Y C_X − I‖`: failure of `x = Σ ⟨x, x_n⟩ y_n`.
    pub syn_dual_residual: f64,
    pub is_alternative_dual: bool,
    pub is_synthesis_pseudo_dual: bool,
    pub dual_is_bessel: bool,
    /// Largest eigenvalue of the frame operator of `y`.
    pub dual_bessel_bound: f64,
    /// Residual that is explained by truncating an infinite pair, already
    /// subtracted from the pass/fail decision. Zero for finite families.
    pub truncation_allowance: f64,
}

/// Residual of the truncated `Example31Frame`/`Example31Dual` pair at `k`
/// terms. Odd truncations reproduce the identity exactly; even ones leave
/// the rank-one error `x ↦ (√(2/k)⟨x, e_1⟩ − ½⟨x, e_{k/2}⟩) e_{k/2}`.
pub fn example31_truncation_residual(k: usize) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        (2.0 / k as f64 + 0.25).sqrt()
    }
}

fn truncation_allowance(x: &FrameFamily, y: &FrameFamily) -> f64 {
    match (x.generator(), y.generator()) {
        (Some((a, ka)), Some((b, kb))) if ka == kb => match (a, b) {
            (GallerySpec::Example31Frame, GallerySpec::Example31Dual)
            | (GallerySpec::Example31Dual, GallerySpec::Example31Frame) => {
                example31_truncation_residual(ka)
            }
            _ => 0.0,
        },
        _ => 0.0,
    }
}

pub fn certify_dual(x: &FrameFamily, y: &FrameFamily, tol: &Tolerances) -> Result<DualCertificate> {
    x.check_same_shape(y)?;
    let alt = identity_residual(&cross_operator(x, y)?, tol)?;
    let syn = identity_residual(&cross_operator(y, x)?, tol)?;
    let (_, bessel) = extremal_eigenvalues(&frame_operator(y)?, tol.eigen)?;
    let allowance = truncation_allowance(x, y);
    Ok(DualCertificate {
        alt_dual_residual: alt,
        syn_dual_residual: syn,
        is_alternative_dual: alt <= tol.dual + allowance,
        is_synthesis_pseudo_dual: syn <= tol.dual + allowance,
        dual_is_bessel: bessel.is_finite(),
        dual_bessel_bound: bessel.max(0.0),
        truncation_allowance: allowance,
    })
}

fn check_len(f: &FrameFamily, c: &[Scalar]) -> Result<()> {
    if c.len() != f.count() {
        return Err(FrameError::CountMismatch {
            expected: f.count(),
            found: c.len(),
        });
    }
    Ok(())
}

/// `Σ c_n x_n`.
pub fn synthesize(f: &FrameFamily, c: &[Scalar]) -> Result<Vector> {
    check_len(f, c)?;
    let mut x0 = Vector::zeros(f.ambient_dim());
    for (cn, xn) in c.iter().zip(f.vectors()) {
        x0.axpy(*cn, xn)?;
    }
    Ok(x0)
}

/// Builds an alternative dual `{y_n}` with `⟨x₀, y_n⟩ = c_n`, where
/// `x₀ = Σ c_n x_n`:
/// `y_n = conj(c_n)/‖x₀‖² · x₀ + P x̃_n`, with `P` the projection onto
/// `x₀^⊥` and `x̃` the canonical dual.
pub fn realize_dual(f: &FrameFamily, c: &[Scalar], tol: &Tolerances) -> Result<FrameFamily> {
    let x0 = synthesize(f, c)?;
    let canonical = canonical_dual(f, tol)?;
    let norm_sqr = x0.norm_sqr();
    if norm_sqr.sqrt() <= tol.rank {
        return Err(FrameError::ZeroResultant);
    }
    let vectors = c
        .iter()
        .zip(canonical.vectors())
        .map(|(cn, dn)| {
            let mut y = project_complement(dn, &x0)?;
            y.axpy(cn.conj() / norm_sqr, &x0)?;
            Ok(y)
        })
        .collect::<Result<Vec<_>>>()?;
    FrameFamily::explicit(vectors)
}

/// Whether some alternative dual `{y_n}` and vector `x` give `c_n = ⟨x, y_n⟩`:
/// exactly when `Σ c_n x_n` is nonzero or `c` vanishes identically.
pub fn is_realizable(f: &FrameFamily, c: &[Scalar], tol: &Tolerances) -> Result<bool> {
    let x0 = synthesize(f, c)?;
    Ok(x0.norm() > tol.rank || c.iter().all(|z| *z == Scalar::new(0.0, 0.0)))
}

/// Doubles the coefficient at the first index with `c_n x_n ≠ 0`, so that a
/// series summing to zero instead sums to that single term.
pub fn conditional_shift(f: &FrameFamily, c: &[Scalar]) -> Result<Vec<Scalar>> {
    check_len(f, c)?;
    let n0 = c
        .iter()
        .zip(f.vectors())
        .position(|(cn, xn)| *cn != Scalar::new(0.0, 0.0) && !xn.is_zero())
        .ok_or(FrameError::AllTermsZero)?;
    let mut d = c.to_vec();
    d[n0] *= 2.0;
    Ok(d)
}

/// Given a family with zero vectors at every second position (1-based even
/// indices) and one of its alternative duals, replaces the dual vectors at
/// the zero positions by `w`. The result is still an alternative dual, but
/// its Bessel bound grows with the number of zero positions.
pub fn nonframe_dual_for_zero_padded(
    padded: &FrameFamily,
    base_dual: &FrameFamily,
    w: &Vector,
    tol: &Tolerances,
) -> Result<FrameFamily> {
    padded.check_same_shape(base_dual)?;
    if w.dim() != padded.ambient_dim() {
        return Err(FrameError::DimMismatch {
            expected: padded.ambient_dim(),
            found: w.dim(),
        });
    }
    if padded
        .vectors()
        .iter()
        .skip(1)
        .step_by(2)
        .any(|v| !v.is_zero())
    {
        return Err(FrameError::NotZeroPadded);
    }
    if w.is_zero() {
        return Err(FrameError::ZeroSpanVector);
    }
    if !certify_dual(padded, base_dual, tol)?.is_alternative_dual {
        return Err(FrameError::NotADual { index: 0 });
    }
    let vectors = base_dual
        .vectors()
        .iter()
        .enumerate()
        .map(|(i, y)| if i % 2 == 1 { w.clone() } else { y.clone() })
        .collect();
    FrameFamily::explicit(vectors)
}

/// The sequence `{g_n}` with `⟨f_m, g_n⟩ = δ_mn` lying in the span of `f`.
pub fn biorthogonal(f: &FrameFamily, tol: &Tolerances) -> Result<FrameFamily> {
    if !is_minimal(f, tol)? {
        return Err(FrameError::NotMinimal);
    }
    let n = f.count();
    let v = f.vectors();
    let mut gram = Matrix::zeros(n, n);
    for m in 0..n {
        for k in 0..n {
            gram[(m, k)] = inner_product(&v[m], &v[k])?;
        }
    }
    let chol = Cholesky::factor(&HermMatrix::new(gram)?).map_err(|_| FrameError::NotMinimal)?;
    (0..n)
        .map(|j| {
            let z = chol.solve(&Vector::basis(n, j))?;
            let mut g = Vector::zeros(f.ambient_dim());
            for (zk, fk) in z.coords().iter().zip(v) {
                g.axpy(zk.conj(), fk)?;
            }
            Ok(g)
        })
        .collect::<Result<Vec<_>>>()
        .and_then(FrameFamily::explicit)
}

/// Whether `y`'s frame operator is bounded below on the whole space, i.e.
/// whether the finite family `y` is itself a frame.
pub fn dual_is_frame(y: &FrameFamily, tol: &Tolerances) -> Result<bool> {
    Ok(frame_bounds(y, tol)?.is_frame)
}
