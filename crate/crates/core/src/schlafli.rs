//! Derivative of the volume along the family via the Schläfli differential formula,
//! `dV/dh = −½ (ℓ03 dθ12/dh + ℓ01 dθ23/dh)`, and the auxiliary functions used to
//! locate its zero.
//!
//! `θ01 = θ` is constant in `h`, so only `θ12` and `θ23` contribute.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{edge_l01_scaled, edge_l03_scaled, h2m1, lambert_q};
use crate::orthoscheme::{classify, CombinatorialType, FamilyParams, OrthoschemeParams, RadiusCase};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeReport<T> {
    pub h: T,
    pub regime: CombinatorialType,
    pub dv_dh: T,
    pub l03: T,
    pub l01: T,
    pub dtheta12_dh: T,
    pub dtheta23_dh: T,
    /// `ℓ03 · dθ12/dh`. Equal to the product except at the ideal-vertex boundary,
    /// where `ℓ03 = 0`, `dθ12/dh = −∞` and this holds the one-sided limit.
    pub edge_term: T,
    /// The same derivative through the factored form `½(−dθ12/dh)(F(h) − ½ log|1 − r²|)`;
    /// `None` on Lambert cubes and at the ideal-vertex boundary.
    pub factored: Option<T>,
}

impl<T: Real> DerivativeReport<T> {
    /// `−½ (edge_term + ℓ01 dθ23/dh)`.
    pub fn reconstruct(&self) -> T {
        -T::lit(0.5) * (self.edge_term + self.l01 * self.dtheta23_dh)
    }
}

/// `F(h)`, `G(h)`, `C` and `F'(h)` at one height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuxFunctions<T> {
    pub f: T,
    pub g: T,
    pub c: T,
    pub df_dh: T,
}

fn require_analytic<T: Real>(params: OrthoschemeParams<T>) -> Result<CombinatorialType> {
    let regime = classify(params);
    if regime == CombinatorialType::OrdinaryOrthoscheme {
        return Err(Error::HeightTooSmall { h: params.h.as_f64() });
    }
    Ok(regime)
}

/// `dθ12/dh`. Outside the Lambert range:
/// `−r² sinθ cosθ / (N² √((1−r²)h² + r²))`, which diverges to `−∞` at the
/// ideal-vertex boundary. On a Lambert cube: `h / ((h²−1) √((r²−1)h² − r²))`.
pub fn dtheta12_dh<T: Real>(params: OrthoschemeParams<T>) -> Result<T> {
    let regime = require_analytic(params)?;
    let fam = params.family();
    let h = params.h;
    match regime {
        CombinatorialType::LambertCube => {
            let q = lambert_q(params)?;
            Ok(h / (h2m1(h) * q.sqrt()))
        }
        CombinatorialType::DoubleFrustumIdealVertex => Ok(T::neg_infinity()),
        _ => {
            let disc = fam.edge03_disc(h);
            if !(disc > T::zero()) {
                return Err(Error::RegimeMismatch(format!(
                    "(1-r^2)h^2 + r^2 must be positive outside the Lambert range, got {}",
                    disc
                )));
            }
            let (s, c) = fam.sin_cos();
            let r = fam.r_eff();
            Ok(-r * r * s * c / (fam.face2_norm_sq(h) * disc.sqrt()))
        }
    }
}

/// `dθ23/dh = r √(1 − r² cos²θ) cosθ / N²`, the same in every regime.
pub fn dtheta23_dh<T: Real>(params: OrthoschemeParams<T>) -> Result<T> {
    require_analytic(params)?;
    let fam = params.family();
    let c = fam.theta.cos();
    let r = fam.r_eff();
    let rc = r * c;
    Ok(r * (T::one() - rc * rc).sqrt() * c / fam.face2_norm_sq(params.h))
}

pub fn dv_dh<T: Real>(params: OrthoschemeParams<T>) -> Result<DerivativeReport<T>> {
    dv_dh_scaled(params, T::one())
}

/// [`dv_dh`] with the horosphere at an ideal `v0` taken from the lift `λ·v̂0`.
/// For `r = 1` this shifts `ℓ03` and `ℓ01` by `log λ` and, since
/// `−dθ12/dh = dθ23/dh` there, leaves the derivative unchanged.
pub fn dv_dh_scaled<T: Real>(params: OrthoschemeParams<T>, v0_scale: T) -> Result<DerivativeReport<T>> {
    let regime = require_analytic(params)?;
    let fam = params.family();
    let h = params.h;
    let half = T::lit(0.5);
    let l03 = edge_l03_scaled(params, v0_scale)?.length;
    let l01 = edge_l01_scaled(params, v0_scale).length;
    let d12 = dtheta12_dh(params)?;
    let d23 = dtheta23_dh(params)?;

    let edge_term = if regime == CombinatorialType::DoubleFrustumIdealVertex {
        // ℓ03 ~ S and dθ12/dh ~ −r² sinθ cosθ / (N² S) as S → 0
        let (s, c) = fam.sin_cos();
        let r = fam.r_eff();
        -r * r * s * c / fam.face2_norm_sq(h)
    } else {
        l03 * d12
    };
    let dv = -half * (edge_term + l01 * d23);

    let factored = match regime {
        CombinatorialType::SimpleFrustum
        | CombinatorialType::SimpleFrustumIdealV0
        | CombinatorialType::DoubleFrustum => {
            let root = if fam.radius_case() == RadiusCase::Ideal {
                // ℓ03 − ℓ01, both measured from the same horosphere at v0
                l03 - l01
            } else {
                root_function(fam, h)?
            };
            Some(half * (-d12) * root)
        }
        _ => None,
    };

    Ok(DerivativeReport {
        h,
        regime,
        dv_dh: dv,
        l03,
        l01,
        dtheta12_dh: d12,
        dtheta23_dh: d23,
        edge_term,
        factored,
    })
}

/// `C = ℓ01 √(1 − r² cos²θ) / (r sinθ)`. For `r = 1` this is `ℓ01 = log(2 sinθ)`
/// under the `x0 = 1` horosphere.
pub fn aux_c<T: Real>(fam: FamilyParams<T>) -> T {
    let (s, c) = fam.sin_cos();
    let r = fam.r_eff();
    let rc = r * c;
    let l01 = edge_l01_scaled(
        OrthoschemeParams { h: T::lit(2.0), r: fam.r, theta: fam.theta },
        T::one(),
    )
    .length;
    l01 * (T::one() - rc * rc).sqrt() / (r * s)
}

fn require_f_domain<T: Real>(fam: FamilyParams<T>, h: T) -> Result<T> {
    if !(h > T::one()) {
        return Err(Error::HeightTooSmall { h: h.as_f64() });
    }
    let disc = fam.edge03_disc(h);
    if disc < -T::class_eps() {
        return Err(Error::RegimeMismatch(format!(
            "F(h) requires (1-r^2)h^2 + r^2 >= 0, got {}",
            disc
        )));
    }
    Ok(disc.max(T::zero()).sqrt())
}

/// `F(h) = log((S + 1) / √(h² − 1)) − C S` with `S = √((1−r²)h² + r²)`.
pub fn aux_f<T: Real>(fam: FamilyParams<T>, h: T) -> Result<T> {
    let s_edge = require_f_domain(fam, h)?;
    let half = T::lit(0.5);
    Ok((s_edge + T::one()).ln() - half * h2m1(h).ln() - aux_c(fam) * s_edge)
}

/// `G(h) = C (1 − r²)(h² − 1) + 1`.
pub fn aux_g<T: Real>(fam: FamilyParams<T>, h: T) -> T {
    let r = fam.r_eff();
    aux_c(fam) * (T::one() - r * r) * h2m1(h) + T::one()
}

/// `F'(h) = −h G(h) / ((h² − 1) S)`.
pub fn aux_df_dh<T: Real>(fam: FamilyParams<T>, h: T) -> Result<T> {
    let s_edge = require_f_domain(fam, h)?;
    Ok(-h * aux_g(fam, h) / (h2m1(h) * s_edge))
}

pub fn aux_functions<T: Real>(fam: FamilyParams<T>, h: T) -> Result<AuxFunctions<T>> {
    Ok(AuxFunctions {
        f: aux_f(fam, h)?,
        g: aux_g(fam, h),
        c: aux_c(fam),
        df_dh: aux_df_dh(fam, h)?,
    })
}

/// `F(h) − ½ log|1 − r²|` (the log term is absent for `r = 1`). Outside the Lambert
/// range its zeros are exactly the zeros of `dV/dh`, and it has the sign of `dV/dh`.
pub fn root_function<T: Real>(fam: FamilyParams<T>, h: T) -> Result<T> {
    let f = aux_f(fam, h)?;
    let r = fam.r_eff();
    let shift = match fam.radius_case() {
        RadiusCase::Ideal => T::zero(),
        _ => T::lit(0.5) * (T::one() - r * r).abs().ln(),
    };
    Ok(f - shift)
}
