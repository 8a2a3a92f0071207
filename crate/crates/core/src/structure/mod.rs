//! Excess, minimality and moment spaces.

mod moment;

pub use moment::{
    extended_moment_membership, moment_membership, moment_space, moment_space_equal, Membership,
    MomentSpace,
};

use crate::analysis::frame_bounds;
use crate::duality::certify_dual;
use crate::error::{FrameError, Result};
use crate::family::{concat, materialize, FrameFamily};
use crate::linalg::{numerical_rank, singular_values, Scalar, Vector};
use crate::Tolerances;

/// Truncation levels used to look for unbounded excess.
pub const GROWTH_SWEEP: [usize; 4] = [25, 50, 100, 200];
/// Per-doubling ratio above which excess counts as growing linearly.
pub const GROWTH_RATIO: f64 = 1.5;

#[derive(Debug, Clone, PartialEq)]
pub struct ExcessGrowth {
    /// `(K, excess at K)` over the sweep.
    pub points: Vec<(usize, usize)>,
    /// Every doubling of `K` multiplies the excess by at least 1.5.
    pub linear_growth: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExcessReport {
    pub count: usize,
    pub rank: usize,
    pub excess: usize,
    /// Indices whose removal leaves a basis of the span.
    pub removable_set: Vec<usize>,
    /// Lower frame bound of what remains after removal, on its span.
    pub kept_lower_bound: f64,
    pub is_near_riesz: bool,
    pub is_riesz: bool,
    pub is_minimal: bool,
    pub growth: Option<ExcessGrowth>,
}

/// Rank and an ascending greedy basis: `x_i` is kept when it is not in the
/// span of the vectors kept before it.
pub fn greedy_basis(f: &FrameFamily, tol: &Tolerances) -> Result<(usize, Vec<usize>)> {
    let sigma = singular_values(&f.synthesis_matrix())?;
    let rank = numerical_rank(&sigma, tol.rank);
    let threshold = tol.rank * sigma.first().copied().unwrap_or(0.0);

    let mut basis: Vec<Vector> = Vec::new();
    let mut kept = Vec::new();
    for (i, v) in f.vectors().iter().enumerate() {
        if basis.len() == rank {
            break;
        }
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = r.inner(q)?;
                r.axpy(-c, q)?;
            }
        }
        let n = r.norm();
        if n > threshold && n > 0.0 {
            basis.push(r.scale(Scalar::new(1.0 / n, 0.0)));
            kept.push(i);
        }
    }
    if kept.len() == rank {
        return Ok((rank, kept));
    }

    // Gram-Schmidt disagreed with the singular values; decide each candidate
    // by the rank of the enlarged set instead.
    let mut kept = Vec::new();
    let mut current = 0;
    for i in 0..f.count() {
        let mut trial: Vec<Vector> = kept.iter().map(|&k| f.vector(k).clone()).collect();
        trial.push(f.vector(i).clone());
        let r = numerical_rank(
            &singular_values(&FrameFamily::explicit(trial)?.synthesis_matrix())?,
            tol.rank,
        );
        if r > current {
            current = r;
            kept.push(i);
        }
    }
    Ok((current, kept))
}

fn excess_at(f: &FrameFamily, tol: &Tolerances) -> Result<usize> {
    let sigma = singular_values(&f.synthesis_matrix())?;
    Ok(f.count() - numerical_rank(&sigma, tol.rank))
}

fn growth_sweep(f: &FrameFamily, tol: &Tolerances) -> Result<Option<ExcessGrowth>> {
    let spec = match f.generator() {
        Some((spec, _)) if spec.is_truncatable() => *spec,
        _ => return Ok(None),
    };
    let mut points = Vec::new();
    for k in GROWTH_SWEEP {
        // Zero-padded families need an even truncation.
        let k = if matches!(spec, crate::GallerySpec::ZeroPadded) {
            k + k % 2
        } else {
            k
        };
        points.push((k, excess_at(&materialize(spec, k)?, tol)?));
    }
    let linear_growth = points
        .windows(2)
        .all(|w| w[0].1 > 0 && w[1].1 as f64 >= GROWTH_RATIO * w[0].1 as f64);
    Ok(Some(ExcessGrowth {
        points,
        linear_growth,
    }))
}

/// Excess `count − rank` with a removable witness set and near-Riesz
/// classification. Generated truncations of infinite families are also
/// swept over several truncation levels.
pub fn excess(f: &FrameFamily, tol: &Tolerances) -> Result<ExcessReport> {
    let (rank, kept) = greedy_basis(f, tol)?;
    let removable_set: Vec<usize> = (0..f.count()).filter(|i| !kept.contains(i)).collect();
    let growth = growth_sweep(f, tol)?;
    let unbounded = growth.as_ref().is_some_and(|g| g.linear_growth);

    let (kept_lower_bound, kept_ok) = if kept.is_empty() {
        (0.0, false)
    } else {
        let remaining = FrameFamily::explicit(kept.iter().map(|&i| f.vector(i).clone()).collect())?;
        let b = frame_bounds(&remaining, tol)?;
        (
            b.lower,
            b.rank == remaining.count() && b.lower > tol.rank * b.upper,
        )
    };
    let excess = f.count() - rank;
    let is_near_riesz = kept_ok && !unbounded;
    Ok(ExcessReport {
        count: f.count(),
        rank,
        excess,
        removable_set,
        kept_lower_bound,
        is_near_riesz,
        is_riesz: is_near_riesz && excess == 0 && rank == f.ambient_dim(),
        is_minimal: excess == 0 && rank > 0,
        growth,
    })
}

/// No element lies in the span of the others: the smallest singular value of
/// the family matrix is above `tol.rank` times the largest.
pub fn is_minimal(f: &FrameFamily, tol: &Tolerances) -> Result<bool> {
    if f.count() > f.ambient_dim() {
        return Ok(false);
    }
    let sigma = singular_values(&f.synthesis_matrix())?;
    let max = sigma[0];
    let min = sigma[sigma.len() - 1];
    Ok(max > 0.0 && min > tol.rank * max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnionReport {
    pub excess: usize,
    pub bound: usize,
    pub holds: bool,
}

/// Appending finitely many vectors to a minimal family adds at most that
/// many to the excess.
pub fn check_minimal_union_lemma(
    f: &FrameFamily,
    extras: &[Vector],
    tol: &Tolerances,
) -> Result<UnionReport> {
    if !is_minimal(f, tol)? {
        return Err(FrameError::NotMinimal);
    }
    let union = if extras.is_empty() {
        f.clone()
    } else {
        concat(f, &FrameFamily::explicit(extras.to_vec())?)?
    };
    let e = excess_at(&union, tol)?;
    Ok(UnionReport {
        excess: e,
        bound: extras.len(),
        holds: e <= extras.len(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualExcessAudit {
    pub frame: ExcessReport,
    pub duals: Vec<ExcessReport>,
    /// All excesses agree, and so do the growth flags.
    pub consistent: bool,
}

/// Compares the excess of a frame with that of each of its duals. Every
/// listed family must certify as an alternative dual or a synthesis
/// pseudo-dual.
pub fn dual_excess_audit(
    f: &FrameFamily,
    duals: &[FrameFamily],
    tol: &Tolerances,
) -> Result<DualExcessAudit> {
    for (index, y) in duals.iter().enumerate() {
        let cert = certify_dual(f, y, tol)?;
        if !(cert.is_alternative_dual || cert.is_synthesis_pseudo_dual) {
            return Err(FrameError::NotADual { index });
        }
    }
    let frame = excess(f, tol)?;
    let duals = duals
        .iter()
        .map(|y| excess(y, tol))
        .collect::<Result<Vec<_>>>()?;
    let flag = |r: &ExcessReport| r.growth.as_ref().is_some_and(|g| g.linear_growth);
    let consistent = duals
        .iter()
        .all(|d| d.excess == frame.excess && flag(d) == flag(&frame));
    Ok(DualExcessAudit {
        frame,
        duals,
        consistent,
    })
}
