use thiserror::Error;

/// Errors raised by the frame laboratory.
///
/// Every variant has a stable machine-readable name (see [`FrameError::name`])
/// which the command-line front end reports verbatim.
#[derive(Debug, Error)]
pub enum FrameError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("count mismatch: expected {expected}, found {found}")]
    CountMismatch { expected: usize, found: usize },

    #[error("non-finite value in input")]
    NonFinite,

    #[error("matrix is not Hermitian (asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    EigenNoConverge { sweeps: usize },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("spanning vector is zero")]
    ZeroSpanVector,

    #[error("invalid generator parameters: {0}")]
    BadGeneratorParams(String),

    #[error("bad frame file at line {line}, column {column}: {message}")]
    BadFrameFile {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("family is not a frame for its ambient space")]
    NotAFrame,

    #[error("coefficient series sums to zero; no dual realizes it")]
    ZeroResultant,

    #[error("every term c_n x_n vanishes")]
    AllTermsZero,

    #[error("family does not carry zeros at every even position")]
    NotZeroPadded,

    #[error("family is not minimal")]
    NotMinimal,

    #[error("cut {cut} exceeds series length {len}")]
    CutOutOfRange { cut: usize, len: usize },

    #[error("family #{index} fails dual certification")]
    NotADual { index: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl FrameError {
    /// Stable identifier used in machine-readable reports.
    pub fn name(&self) -> &'static str {
        match self {
            FrameError::DimMismatch { .. } => "DimMismatch",
            FrameError::CountMismatch { .. } => "CountMismatch",
            FrameError::NonFinite => "NonFinite",
            FrameError::NotHermitian { .. } => "NotHermitian",
            FrameError::EigenNoConverge { .. } => "EigenNoConverge",
            FrameError::NotPositiveDefinite => "NotPositiveDefinite",
            FrameError::ZeroSpanVector => "ZeroSpanVector",
            FrameError::BadGeneratorParams(_) => "BadGeneratorParams",
            FrameError::BadFrameFile { .. } => "BadFrameFile",
            FrameError::NotAFrame => "NotAFrame",
            FrameError::ZeroResultant => "ZeroResultant",
            FrameError::AllTermsZero => "AllTermsZero",
            FrameError::NotZeroPadded => "NotZeroPadded",
            FrameError::NotMinimal => "NotMinimal",
            FrameError::CutOutOfRange { .. } => "CutOutOfRange",
            FrameError::NotADual { .. } => "NotADual",
            FrameError::Io(_) => "Io",
        }
    }

    /// True for failures of file access or file parsing, as opposed to
    /// mathematical preconditions.
    pub fn is_io(&self) -> bool {
        matches!(self, FrameError::Io(_) | FrameError::BadFrameFile { .. })
    }
}

pub type Result<T> = std::result::Result<T, FrameError>;
