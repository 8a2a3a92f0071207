#![allow(dead_code)]

use framekit::family::materialize;
use framekit::{FrameFamily, GallerySpec, Scalar, Tolerances, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn tol() -> Tolerances {
    Tolerances::default()
}

/// Gallery frames of dimension at most 16.
pub fn gallery() -> Vec<(String, FrameFamily)> {
    let specs: Vec<(GallerySpec, usize)> = vec![
        (GallerySpec::OrthonormalBasis { dim: 1 }, 0),
        (GallerySpec::OrthonormalBasis { dim: 3 }, 0),
        (GallerySpec::OrthonormalBasis { dim: 8 }, 0),
        (GallerySpec::TightMB, 0),
        (
            GallerySpec::OnbPlusExtras {
                dim: 4,
                extras: 2,
                seed: 5,
            },
            0,
        ),
        (
            GallerySpec::OnbPlusExtras {
                dim: 6,
                extras: 3,
                seed: 11,
            },
            0,
        ),
        (
            GallerySpec::RandomFrame {
                dim: 3,
                count: 5,
                seed: 1,
            },
            0,
        ),
        (
            GallerySpec::RandomFrame {
                dim: 8,
                count: 16,
                seed: 2,
            },
            0,
        ),
        (
            GallerySpec::RandomFrame {
                dim: 16,
                count: 20,
                seed: 3,
            },
            0,
        ),
        (GallerySpec::Example31Frame, 9),
        (GallerySpec::Example31Frame, 31),
        (GallerySpec::Example31Dual, 9),
        (GallerySpec::Example31Dual, 30),
        (GallerySpec::ZeroPadded, 8),
        (GallerySpec::ZeroPadded, 32),
    ];
    specs
        .into_iter()
        .map(|(spec, k)| {
            (
                format!("{}@{k}", spec.name()),
                materialize(spec, k).unwrap(),
            )
        })
        .collect()
}

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    Vector::new((0..dim).map(|_| random_scalar(rng)).collect()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
