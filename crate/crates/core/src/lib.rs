//! Hyperbolic complete orthoschemes `R(h, r, θ)` in the projective ball model.
//!
//! The family is normalized with vertices `v0 = (r sinθ, r cosθ, 0)`,
//! `v1 = (0, r cosθ, 0)`, `v2 = 0`, `v3 = (0, 0, h)`. As `h` grows past 1 the
//! vertex `v3` becomes ultraideal and is truncated; for `r > 1` the body turns into
//! a Lambert cube once `h > r / √(r² − 1)`. The crate computes the metric data of
//! each member, the derivative of the volume along `h` through the Schläfli
//! differential formula, the unique maximizing height, and an independent
//! Monte-Carlo volume.
//!
//! The geometric kernel is generic over [`Real`] (`f32`, `f64`); the aliases below
//! fix it to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod lorentz;
pub mod maximizer;
pub mod metrics;
pub mod ortho2d;
pub mod orthoscheme;
pub mod quadrature;
pub mod scalar;
pub mod schlafli;
pub mod volume;

pub use error::{Error, ErrorKind, Result};
pub use lorentz::{LorentzVec, PointClass};
pub use maximizer::{MaximizerResult, MaximumLocation};
pub use metrics::{EdgeKind, EdgeLength, MetricData};
pub use ortho2d::{AreaReport, Ortho2DParams, Shape2D};
pub use orthoscheme::{
    CombinatorialType, FamilyParams, OrthoschemeGeometry, OrthoschemeParams, RadiusCase,
};
pub use scalar::Real;
pub use schlafli::{AuxFunctions, DerivativeReport};
pub use volume::{SweepRow, VolumeEstimate, VolumeMethod};

pub type LorentzVec64 = LorentzVec<f64>;
pub type Params64 = OrthoschemeParams<f64>;
pub type Family64 = FamilyParams<f64>;
pub type Geometry64 = OrthoschemeGeometry<f64>;
pub type Metrics64 = MetricData<f64>;
pub type Derivative64 = DerivativeReport<f64>;
pub type Maximizer64 = MaximizerResult<f64>;
pub type Ortho2D64 = Ortho2DParams<f64>;
pub type Area64 = AreaReport<f64>;
