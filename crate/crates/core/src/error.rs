use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("coordinate vector has length {got}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("element is not in the open cone")]
    NotInCone,
    #[error("element is not in the open interval ]-e,e[")]
    NotInInterval,
    #[error("element is singular (det = 0)")]
    Singular,
    #[error("linear map is not in the structure group (sample residual {0:e})")]
    NotInStructureGroup(f64),
    #[error("nonzero remainder in exact division by det (slot {slot})")]
    NonzeroRemainder { slot: char },
    #[error("Cayley quotient is not constant: {0}")]
    NonConstantQuotient(String),
    #[error("Gamma function pole at {0}")]
    GammaPole(f64),
    #[error("divergent parameter: {0}")]
    Divergent(String),
    #[error("polydisc of radius {radius:e} leaves the tube domain (min eigenvalue {min_eig:e})")]
    RadiusViolation { radius: f64, min_eig: f64 },
    #[error("branch tracking failed: {0}")]
    BranchFailure(String),
    #[error("point is outside the tube domain")]
    OutsideTube,
    #[error("operation not supported for {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("config error: {0}")]
    Config(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
