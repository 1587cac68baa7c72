use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("wavelength {lambda_um} µm is outside the fitted range [{lo}, {hi}] µm of {model}")]
    OutOfValidityRange {
        model: String,
        lambda_um: f64,
        lo: f64,
        hi: f64,
    },
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid crystal model: {0}")]
    InvalidModel(String),
    #[error("pump frequency ω_i − ω_o = {0} rad/s is not positive")]
    NonpositivePumpFrequency(f64),
    #[error("|v_p⁻¹ − v_o⁻¹| = {0:e} s/m is below 1e-18 s/m, PMF angle is ±90°")]
    DegenerateDenominator(f64),
    #[error("no sign change found: {0}")]
    NoBracket(String),
    #[error("unsupported field shape: {0}")]
    UnsupportedShape(String),
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("time window too small: {0}")]
    WindowTooSmall(String),
    #[error("input field carries no photons")]
    ZeroInput,
    #[error("field has zero energy")]
    ZeroField,
    #[error("target not bracketed: {0}")]
    NotBracketed(String),
    #[error("threshold {threshold} not crossed on the {side} side of the scan")]
    ThresholdNotCrossed { threshold: f64, side: &'static str },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
