use thiserror::Error;

/// Coarse error category; the CLI maps these onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Input parameters outside the family's domain.
    Domain,
    /// Valid parameters, but the requested computation is not defined in this regime.
    Regime,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("point lies outside the half-space of the plane (inner product {inner:e} > 0)")]
    OutsideHalfSpace { inner: f64 },

    #[error("planes are ultraparallel (inner product {inner:e} < -1)")]
    Ultraparallel { inner: f64 },

    #[error("planes intersect beyond the ideal boundary (inner product {inner:e} > 1)")]
    IntersectBeyondBoundary { inner: f64 },

    #[error("planes intersect (inner product {inner:e} > -1)")]
    PlanesIntersect { inner: f64 },

    #[error("vector is not on the expected quadric: {0}")]
    NotOnQuadric(String),

    #[error("point at infinity of projective space (x0 = 0)")]
    PointAtInfinity,

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("analytic derivative defined for h>1; use volume oracle (h = {h})")]
    HeightTooSmall { h: f64 },

    #[error("ideal vertex present ({0}); the Monte-Carlo integrand is unbounded")]
    IdealConfiguration(String),

    #[error("degenerate polytope: no accepted samples out of {samples}")]
    DegeneratePolytope { samples: u64 },

    #[error("root bracket failure: {0}")]
    BracketFailure(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidParams(_) => ErrorKind::Domain,
            _ => ErrorKind::Regime,
        }
    }

    /// Short machine-readable code for structured error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "invalid_params",
            Error::OutsideHalfSpace { .. } => "outside_half_space",
            Error::Ultraparallel { .. } => "ultraparallel",
            Error::IntersectBeyondBoundary { .. } => "intersect_beyond_boundary",
            Error::PlanesIntersect { .. } => "planes_intersect",
            Error::NotOnQuadric(_) => "not_on_quadric",
            Error::PointAtInfinity => "point_at_infinity",
            Error::RegimeMismatch(_) => "regime_mismatch",
            Error::HeightTooSmall { .. } => "height_too_small",
            Error::IdealConfiguration(_) => "ideal_configuration",
            Error::DegeneratePolytope { .. } => "degenerate_polytope",
            Error::BracketFailure(_) => "bracket_failure",
            Error::Quadrature(_) => "quadrature",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
