use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sample grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),

    #[error("sample grid half-width must be positive and finite, got {0}")]
    GridHalfWidth(f64),

    #[error("`{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("invalid optimizer config: {0}")]
    Config(String),

    #[error("objective is non-finite at iteration {iteration} (J = {value})")]
    NonFiniteObjective { iteration: usize, value: f64 },

    #[error("unknown target `{0}` (expected quadratic, gaussian, sigmoid or poly:c0,c1,...)")]
    UnknownTarget(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("missing key `{0}`")]
    MissingKey(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
