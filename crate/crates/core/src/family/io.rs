//! JSON frame files.
//!
//! ```json
//! {"format":"framekit-v1","ambient_dim":2,"kind":"explicit","vectors":[[[1,0],[0,0]],[[0,0],[1,0]]]}
//! {"format":"framekit-v1","kind":"generated","generator":"example31_frame","params":{},"K":9}
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{materialize, FamilyOrigin, FrameFamily, GallerySpec};
use crate::error::{FrameError, Result};
use crate::linalg::{Scalar, Vector};

pub const FILE_FORMAT: &str = "framekit-v1";

#[derive(Serialize, Deserialize)]
struct RawFile {
    format: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ambient_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vectors: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<BTreeMap<String, u64>>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    truncation: Option<usize>,
}

fn semantic(message: impl Into<String>) -> FrameError {
    FrameError::BadFrameFile {
        line: 0,
        column: 0,
        message: message.into(),
    }
}

/// Parses a frame file held in memory.
pub fn from_json_str(text: &str) -> Result<FrameFamily> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| FrameError::BadFrameFile {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.format != FILE_FORMAT {
        return Err(semantic(format!("unsupported format `{}`", raw.format)));
    }
    match raw.kind.as_str() {
        "explicit" => {
            let rows = raw.vectors.ok_or_else(|| semantic("missing `vectors`"))?;
            let first_len = rows.first().map(|r| r.len());
            let dim = raw.ambient_dim.or(first_len).unwrap_or(0);
            if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
                return Err(FrameError::DimMismatch {
                    expected: dim,
                    found: bad.len(),
                });
            }
            let vectors = rows
                .into_iter()
                .map(|r| Vector::new(r.into_iter().map(|[re, im]| Scalar::new(re, im)).collect()))
                .collect::<Result<Vec<_>>>()?;
            FrameFamily::explicit(vectors)
        }
        "generated" => {
            let name = raw
                .generator
                .ok_or_else(|| semantic("missing `generator`"))?;
            let params = raw.params.unwrap_or_default();
            let spec = GallerySpec::from_name(&name, |k| params.get(k).copied())?;
            let k = match raw.truncation {
                Some(k) => k,
                None if !spec.is_truncatable() => 0,
                None => return Err(semantic("missing `K`")),
            };
            materialize(spec, k)
        }
        other => Err(semantic(format!("unknown kind `{other}`"))),
    }
}

/// Serializes a family. Generated families are stored as their rule.
pub fn to_json_string(f: &FrameFamily) -> String {
    let raw = match f.origin() {
        FamilyOrigin::Generated { spec, truncation } => RawFile {
            format: FILE_FORMAT.into(),
            kind: "generated".into(),
            ambient_dim: None,
            vectors: None,
            generator: Some(spec.name().into()),
            params: Some(
                spec.params()
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), v))
                    .collect(),
            ),
            truncation: Some(*truncation),
        },
        FamilyOrigin::Explicit => RawFile {
            format: FILE_FORMAT.into(),
            kind: "explicit".into(),
            ambient_dim: Some(f.ambient_dim()),
            vectors: Some(
                f.vectors()
                    .iter()
                    .map(|v| v.coords().iter().map(|c| [c.re, c.im]).collect())
                    .collect(),
            ),
            generator: None,
            params: None,
            truncation: None,
        },
    };
    serde_json::to_string(&raw).expect("frame file serialization cannot fail")
}

pub fn load(path: impl AsRef<Path>) -> Result<FrameFamily> {
    from_json_str(&std::fs::read_to_string(path)?)
}

pub fn save(f: &FrameFamily, path: impl AsRef<Path>) -> Result<()> {
    let mut text = to_json_string(f);
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
