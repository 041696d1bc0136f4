use thiserror::Error;

use crate::classify::AqKind;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("degenerate: no quadratic terms")]
    NoQuadraticTerms,

    #[error("quadric is not axisymmetric")]
    NotAxisymmetric,

    #[error("{0} has no real points")]
    ImaginarySurface(AqKind),

    #[error("degenerate conic section (vanishing constant term)")]
    DegenerateConic,

    #[error("planar point lies on the conic")]
    OnCurve,

    #[error("resolvent cubic has no real root")]
    ResolventFailure,

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonFinite(_) => "NonFinite",
            Error::NoQuadraticTerms => "NoQuadraticTerms",
            Error::NotAxisymmetric => "NotAxisymmetric",
            Error::ImaginarySurface(_) => "ImaginarySurface",
            Error::DegenerateConic => "DegenerateConic",
            Error::OnCurve => "OnCurve",
            Error::ResolventFailure => "ResolventFailure",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}
