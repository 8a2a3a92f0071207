//! Parsing of gallery specifications, family sources and complex lists.

use std::path::PathBuf;

use framekit::family::{load, materialize};
use framekit::{FrameFamily, GallerySpec, Scalar, Vector};

use crate::CliError;

/// Default truncation for the truncatable generators.
pub const DEFAULT_EXAMPLE_K: usize = 201;
pub const DEFAULT_ZERO_PADDED_K: usize = 8;

/// Parses `tight-mb`, `onb:N`, `onb-plus-extras:d,j[,seed]`,
/// `example31-frame`, `example31-dual`, `zero-padded` or
/// `random:d,m[,seed]`. A missing seed falls back to `seed`.
pub fn parse_gallery(text: &str, seed: u64) -> Result<GallerySpec, CliError> {
    let (name, args) = match text.split_once(':') {
        Some((n, a)) => (n.trim(), a.trim()),
        None => (text.trim(), ""),
    };
    let nums: Vec<u64> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|s| {
                s.trim().parse::<u64>().map_err(|_| {
                    CliError::Usage(format!("bad gallery parameter `{s}` in `{text}`"))
                })
            })
            .collect::<Result<_, _>>()?
    };
    let arity = |lo: usize, hi: usize| {
        if nums.len() < lo || nums.len() > hi {
            Err(CliError::Usage(format!(
                "`{name}` takes {lo}..={hi} parameters, got {}",
                nums.len()
            )))
        } else {
            Ok(())
        }
    };
    let spec = match name {
        "tight-mb" => {
            arity(0, 0)?;
            GallerySpec::TightMB
        }
        "onb" => {
            arity(1, 1)?;
            GallerySpec::OrthonormalBasis {
                dim: nums[0] as usize,
            }
        }
        "onb-plus-extras" => {
            arity(2, 3)?;
            GallerySpec::OnbPlusExtras {
                dim: nums[0] as usize,
                extras: nums[1] as usize,
                seed: nums.get(2).copied().unwrap_or(seed),
            }
        }
        "example31-frame" => {
            arity(0, 0)?;
            GallerySpec::Example31Frame
        }
        "example31-dual" => {
            arity(0, 0)?;
            GallerySpec::Example31Dual
        }
        "zero-padded" => {
            arity(0, 0)?;
            GallerySpec::ZeroPadded
        }
        "random" => {
            arity(2, 3)?;
            GallerySpec::RandomFrame {
                dim: nums[0] as usize,
                count: nums[1] as usize,
                seed: nums.get(2).copied().unwrap_or(seed),
            }
        }
        other => return Err(CliError::Usage(format!("unknown gallery family `{other}`"))),
    };
    Ok(spec)
}

/// Where a family comes from on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Gallery(String),
    File(PathBuf),
}

impl Source {
    pub fn describe(&self) -> String {
        match self {
            Source::Gallery(g) => format!("gallery:{g}"),
            Source::File(p) => format!("file:{}", p.display()),
        }
    }
}

pub fn default_truncation(spec: &GallerySpec) -> usize {
    match spec {
        GallerySpec::ZeroPadded => DEFAULT_ZERO_PADDED_K,
        _ => DEFAULT_EXAMPLE_K,
    }
}

pub fn resolve(source: &Source, k: Option<usize>, seed: u64) -> Result<FrameFamily, CliError> {
    match source {
        Source::Gallery(text) => {
            let spec = parse_gallery(text, seed)?;
            let k = k.unwrap_or_else(|| default_truncation(&spec));
            Ok(materialize(spec, k)?)
        }
        Source::File(path) => Ok(load(path)?),
    }
}

/// One complex number: `1`, `-0.5`, `2i`, `-i`, `1+2i`, `1e-3-4.5e2i`.
pub fn parse_complex(text: &str) -> Result<Scalar, CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Usage(format!("bad complex number `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        let re = s.parse::<f64>().map_err(|_| bad())?;
        return if re.is_finite() {
            Ok(Scalar::new(re, 0.0))
        } else {
            Err(bad())
        };
    };
    // Split at the last sign that is neither leading nor part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re.is_empty() {
        0.0
    } else {
        re.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    let z = Scalar::new(re, im);
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(bad());
    }
    Ok(z)
}

pub fn parse_complex_list(text: &str) -> Result<Vec<Scalar>, CliError> {
    text.split(',').map(parse_complex).collect()
}

pub fn parse_vector(text: &str) -> Result<Vector, CliError> {
    Ok(Vector::new(parse_complex_list(text)?)?)
}

pub fn parse_cuts(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad cut `{s}`")))
        })
        .collect()
}
