//! Analysis, synthesis and frame operators; frame bounds; canonical duals.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{FrameError, Result};
use crate::family::FrameFamily;
use crate::linalg::{
    hermitian_eigen, inner_product, numerical_rank, operator_norm, singular_values, Cholesky,
    HermMatrix, Matrix, Scalar, Vector,
};
use crate::Tolerances;

/// The three operators attached to a family.
#[derive(Debug, Clone)]
pub struct OperatorBundle {
    /// `count × dim`; row `n` maps `x` to `⟨x, x_n⟩`.
    pub analysis: Matrix,
    /// `dim × count`; the adjoint of `analysis`.
    pub synthesis: Matrix,
    /// `Σ x_n x_n*`.
    pub frame_op: HermMatrix,
}

pub fn operators(f: &FrameFamily) -> Result<OperatorBundle> {
    let synthesis = f.synthesis_matrix();
    let analysis = synthesis.adjoint();
    let frame_op = HermMatrix::new(frame_operator_matrix(f))?;
    Ok(OperatorBundle {
        analysis,
        synthesis,
        frame_op,
    })
}

fn frame_operator_matrix(f: &FrameFamily) -> Matrix {
    let mut s = Matrix::zeros(f.ambient_dim(), f.ambient_dim());
    for v in f.vectors() {
        s.add_outer(v, v)
            .expect("family vectors share the ambient dimension");
    }
    s
}

pub fn frame_operator(f: &FrameFamily) -> Result<HermMatrix> {
    HermMatrix::new(frame_operator_matrix(f))
}

/// `Σ x_n y_n*`, the operator `x ↦ Σ ⟨x, y_n⟩ x_n`.
pub fn cross_operator(x: &FrameFamily, y: &FrameFamily) -> Result<Matrix> {
    x.check_same_shape(y)?;
    let d = x.ambient_dim();
    let mut m = Matrix::zeros(d, d);
    for (xn, yn) in x.vectors().iter().zip(y.vectors()) {
        m.add_outer(xn, yn)?;
    }
    Ok(m)
}

/// Operator norm of `m − I`.
pub fn identity_residual(m: &Matrix, tol: &Tolerances) -> Result<f64> {
    operator_norm(&m.sub(&Matrix::identity(m.rows()))?, tol.eigen)
}

/// Frame bounds. `lower` is taken on the span of the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub rank: usize,
    pub is_bessel: bool,
    pub is_frame: bool,
}

/// Numerical rank of a family.
pub fn rank(f: &FrameFamily, tol: &Tolerances) -> Result<usize> {
    Ok(numerical_rank(
        &singular_values(&f.synthesis_matrix())?,
        tol.rank,
    ))
}

pub fn frame_bounds(f: &FrameFamily, tol: &Tolerances) -> Result<FrameBounds> {
    let s = frame_operator(f)?;
    let eig = hermitian_eigen(&s, tol.eigen)?;
    let rank = rank(f, tol)?;
    let dim = f.ambient_dim();
    let upper = eig.values[dim - 1].max(0.0);
    let lower = if rank == 0 {
        0.0
    } else {
        eig.values[dim - rank].clamp(0.0, upper)
    };
    Ok(FrameBounds {
        lower,
        upper,
        rank,
        is_bessel: upper.is_finite(),
        is_frame: rank == dim && lower > tol.rank * upper,
    })
}

/// `{S⁻¹ x_n}`.
pub fn canonical_dual(f: &FrameFamily, tol: &Tolerances) -> Result<FrameFamily> {
    if !frame_bounds(f, tol)?.is_frame {
        return Err(FrameError::NotAFrame);
    }
    let chol = Cholesky::factor(&frame_operator(f)?).map_err(|_| FrameError::NotAFrame)?;
    let vectors = f
        .vectors()
        .iter()
        .map(|v| chol.solve(v))
        .collect::<Result<Vec<_>>>()?;
    FrameFamily::explicit(vectors)
}

/// `Σ |⟨x, x_n⟩|²`.
pub fn quadratic_sum(f: &FrameFamily, x: &Vector) -> Result<f64> {
    f.vectors()
        .iter()
        .map(|v| inner_product(x, v).map(|c| c.norm_sqr()))
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub bounds: FrameBounds,
    pub trials: usize,
    pub min_observed: f64,
    pub max_observed: f64,
    pub violations: usize,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

const INEQUALITY_SLACK: f64 = 1e-9;

/// Samples seeded random unit vectors and checks
/// `A ≤ Σ |⟨x, x_n⟩|² ≤ B` on each, up to a relative slack of `1e-9`.
///
/// The lower bound is only meaningful for frames, so for rank-deficient
/// families the lower side is checked against zero.
pub fn verify_frame_inequality(
    f: &FrameFamily,
    trials: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    let bounds = frame_bounds(f, tol)?;
    let lower = if bounds.is_frame { bounds.lower } else { 0.0 };
    let eps = INEQUALITY_SLACK * bounds.upper.max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_observed = f64::INFINITY;
    let mut max_observed = f64::NEG_INFINITY;
    let mut violations = 0;
    for _ in 0..trials.max(1) {
        let x = random_unit_vector(&mut rng, f.ambient_dim());
        let q = quadratic_sum(f, &x)?;
        min_observed = min_observed.min(q);
        max_observed = max_observed.max(q);
        if q < lower - eps || q > bounds.upper + eps {
            violations += 1;
        }
    }
    Ok(InequalityReport {
        bounds,
        trials: trials.max(1),
        min_observed,
        max_observed,
        violations,
    })
}

/// Uniformly distributed unit vector drawn from `rng`.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    loop {
        let coords: Vec<Scalar> = (0..dim)
            .map(|_| Scalar::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
            .collect();
        let v = Vector::new(coords).expect("gaussian samples are finite");
        let n = v.norm();
        if n > 1e-12 {
            return v.scale(Scalar::new(1.0 / n, 0.0));
        }
    }
}
