use num_complex::Complex64;
use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point {0} lies outside the open unit disk")]
    OutsideDisk(Complex64),

    #[error("operation is undefined at z = 0")]
    OriginExcluded,

    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },

    #[error("map does not vanish at the origin (F(0) = {0})")]
    NotNormalized(Complex64),

    #[error("expected a spec of order {expected}, got {actual}")]
    WrongOrder { expected: u32, actual: u32 },

    #[error("singular input: {0}")]
    SingularInput(String),

    #[error("degenerate curve: consecutive samples coincide near index {0}")]
    DegenerateCurve(usize),

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("failed to write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }
}
