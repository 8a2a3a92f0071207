use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::FrameFamily;
use crate::error::{FrameError, Result};
use crate::linalg::{extremal_eigenvalues, HermMatrix, Matrix, Scalar, Vector};

const RANDOM_FRAME_MIN_EIGEN: f64 = 1e-6;
const MAX_REDRAWS: usize = 100;

/// Rules for generating families.
///
/// `Example31Frame` is `{e1, e1, e1, e2, e2, e3, e3, ...}` and
/// `Example31Dual` its conditionally convergent dual
/// `{e1, e1, -e1, e1/√2 + e2/2, -e1/√2 + e2/2, ...}`. Both are truncated to
/// the first `K` terms. `ZeroPadded` is the orthonormal basis of dimension
/// `K/2` with a zero vector inserted after each element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GallerySpec {
    OrthonormalBasis {
        dim: usize,
    },
    TightMB,
    OnbPlusExtras {
        dim: usize,
        extras: usize,
        seed: u64,
    },
    Example31Frame,
    Example31Dual,
    ZeroPadded,
    RandomFrame {
        dim: usize,
        count: usize,
        seed: u64,
    },
}

impl GallerySpec {
    /// Stable identifier used in frame files.
    pub fn name(&self) -> &'static str {
        match self {
            GallerySpec::OrthonormalBasis { .. } => "orthonormal_basis",
            GallerySpec::TightMB => "tight_mb",
            GallerySpec::OnbPlusExtras { .. } => "onb_plus_extras",
            GallerySpec::Example31Frame => "example31_frame",
            GallerySpec::Example31Dual => "example31_dual",
            GallerySpec::ZeroPadded => "zero_padded",
            GallerySpec::RandomFrame { .. } => "random_frame",
        }
    }

    /// Generator parameters as (name, value) pairs, in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, u64)> {
        match *self {
            GallerySpec::OrthonormalBasis { dim } => vec![("dim", dim as u64)],
            GallerySpec::OnbPlusExtras { dim, extras, seed } => vec![
                ("dim", dim as u64),
                ("extras", extras as u64),
                ("seed", seed),
            ],
            GallerySpec::RandomFrame { dim, count, seed } => {
                vec![("count", count as u64), ("dim", dim as u64), ("seed", seed)]
            }
            _ => vec![],
        }
    }

    /// Inverse of [`GallerySpec::name`] and [`GallerySpec::params`].
    pub fn from_name(name: &str, param: impl Fn(&str) -> Option<u64>) -> Result<Self> {
        let need = |key: &str| {
            param(key).ok_or_else(|| {
                FrameError::BadGeneratorParams(format!("{name}: missing parameter `{key}`"))
            })
        };
        Ok(match name {
            "orthonormal_basis" => GallerySpec::OrthonormalBasis {
                dim: need("dim")? as usize,
            },
            "tight_mb" => GallerySpec::TightMB,
            "onb_plus_extras" => GallerySpec::OnbPlusExtras {
                dim: need("dim")? as usize,
                extras: need("extras")? as usize,
                seed: param("seed").unwrap_or(0),
            },
            "example31_frame" => GallerySpec::Example31Frame,
            "example31_dual" => GallerySpec::Example31Dual,
            "zero_padded" => GallerySpec::ZeroPadded,
            "random_frame" => GallerySpec::RandomFrame {
                dim: need("dim")? as usize,
                count: need("count")? as usize,
                seed: param("seed").unwrap_or(0),
            },
            other => {
                return Err(FrameError::BadGeneratorParams(format!(
                    "unknown generator `{other}`"
                )))
            }
        })
    }

    /// True for rules describing an infinite sequence cut at `K` terms.
    pub fn is_truncatable(&self) -> bool {
        matches!(
            self,
            GallerySpec::Example31Frame | GallerySpec::Example31Dual | GallerySpec::ZeroPadded
        )
    }

    /// Number of elements produced at truncation `k`.
    pub fn count_at(&self, k: usize) -> usize {
        match *self {
            GallerySpec::OrthonormalBasis { dim } => dim,
            GallerySpec::TightMB => 3,
            GallerySpec::OnbPlusExtras { dim, extras, .. } => dim + extras,
            GallerySpec::RandomFrame { count, .. } => count,
            _ => k,
        }
    }
}

/// Materializes a generator. Fixed-size generators ignore `k`.
pub fn materialize(spec: GallerySpec, k: usize) -> Result<FrameFamily> {
    let (dim, vectors) = match spec {
        GallerySpec::OrthonormalBasis { dim } => {
            require(dim >= 1, "orthonormal_basis needs dim >= 1")?;
            (dim, (0..dim).map(|i| Vector::basis(dim, i)).collect())
        }
        GallerySpec::TightMB => {
            let h = 3f64.sqrt() / 2.0;
            let rows: [[f64; 2]; 3] = [[0.0, 1.0], [-h, -0.5], [h, -0.5]];
            (2, rows.iter().map(|r| real(r)).collect())
        }
        GallerySpec::OnbPlusExtras { dim, extras, seed } => {
            require(dim >= 1, "onb_plus_extras needs dim >= 1")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v: Vec<Vector> = (0..dim).map(|i| Vector::basis(dim, i)).collect();
            for _ in 0..extras {
                v.push(random_unit(&mut rng, dim));
            }
            (dim, v)
        }
        GallerySpec::Example31Frame => {
            require(k >= 4, "example31_frame needs K >= 4")?;
            let dim = example31_dim(k);
            (
                dim,
                (1..=k)
                    .map(|idx| example31_frame_vector(dim, idx))
                    .collect(),
            )
        }
        GallerySpec::Example31Dual => {
            require(k >= 4, "example31_dual needs K >= 4")?;
            let dim = example31_dim(k);
            (
                dim,
                (1..=k).map(|idx| example31_dual_vector(dim, idx)).collect(),
            )
        }
        GallerySpec::ZeroPadded => {
            require(
                k >= 2 && k.is_multiple_of(2),
                "zero_padded needs an even K >= 2",
            )?;
            let dim = k / 2;
            let zero = Vector::zeros(dim);
            let v = (0..k)
                .map(|i| {
                    if i % 2 == 0 {
                        Vector::basis(dim, i / 2)
                    } else {
                        zero.clone()
                    }
                })
                .collect();
            (dim, v)
        }
        GallerySpec::RandomFrame { dim, count, seed } => {
            require(dim >= 1, "random_frame needs dim >= 1")?;
            require(count >= dim, "random_frame needs count >= dim")?;
            (dim, random_frame(dim, count, seed)?)
        }
    };
    let truncation = if spec.is_truncatable() {
        k
    } else {
        vectors.len()
    };
    Ok(FrameFamily::generated(dim, vectors, spec, truncation))
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(FrameError::BadGeneratorParams(msg.to_string()))
    }
}

fn real(coords: &[f64]) -> Vector {
    Vector::from_raw(coords.iter().map(|&x| Scalar::new(x, 0.0)).collect())
}

/// Ambient dimension of the generated conditional pair at truncation `k`.
pub fn example31_dim(k: usize) -> usize {
    (k.saturating_sub(1)).div_ceil(2).max(1)
}

// 1-based index into {e1, e1, e1, e2, e2, e3, e3, ...}.
fn example31_frame_vector(dim: usize, idx: usize) -> Vector {
    let n = if idx <= 3 { 1 } else { idx / 2 };
    Vector::basis(dim, n - 1)
}

fn example31_dual_vector(dim: usize, idx: usize) -> Vector {
    match idx {
        1 | 2 => Vector::basis(dim, 0),
        3 => Vector::basis(dim, 0).scale(Scalar::new(-1.0, 0.0)),
        _ => {
            let n = idx / 2;
            let sign = if idx.is_multiple_of(2) { 1.0 } else { -1.0 };
            let mut coords = Vector::zeros(dim).into_coords();
            coords[0] = Scalar::new(sign / (n as f64).sqrt(), 0.0);
            coords[n - 1] = Scalar::new(0.5, 0.0);
            Vector::from_raw(coords)
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> Scalar {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Scalar::new(re * s, im * s)
}

fn gaussian_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    Vector::from_raw((0..dim).map(|_| gaussian(rng)).collect())
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    loop {
        let v = gaussian_vector(rng, dim);
        let n = v.norm();
        if n > 1e-12 {
            return v.scale(Scalar::new(1.0 / n, 0.0));
        }
    }
}

fn random_frame(dim: usize, count: usize, seed: u64) -> Result<Vec<Vector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        let vectors: Vec<Vector> = (0..count).map(|_| gaussian_vector(&mut rng, dim)).collect();
        let mut s = Matrix::zeros(dim, dim);
        for v in &vectors {
            s.add_outer(v, v)?;
        }
        let (lo, _) = extremal_eigenvalues(&HermMatrix::new(s)?, 1e-10)?;
        if lo >= RANDOM_FRAME_MIN_EIGEN {
            return Ok(vectors);
        }
    }
    Err(FrameError::BadGeneratorParams(format!(
        "random_frame: no well-conditioned draw after {MAX_REDRAWS} attempts"
    )))
}
