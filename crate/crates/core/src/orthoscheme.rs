//! The normalized family `R(h, r, θ)` of complete orthoschemes.
//!
//! Vertices in the Klein ball:
//! `v0 = (r sinθ, r cosθ, 0)`, `v1 = (0, r cosθ, 0)`, `v2 = 0`, `v3 = (0, 0, h)`.
//! The chain `v0 v1 v2 v3` is orthogonal: the base `v0 v1 v2` has its right angle
//! at `v1` and the edge `v2 v3` is perpendicular to the base. `v1` and `v2` are
//! always interior; `v0` is interior, ideal or ultraideal as `r ⋚ 1`, and `v3`
//! likewise as `h ⋚ 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::{inner, klein_lift, LorentzVec, PointClass};
use crate::scalar::Real;

/// Position of `r` relative to 1, i.e. the class of `v0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RadiusCase {
    /// `0 < r < 1`: `v0` ordinary.
    Below,
    /// `r = 1`: `v0` ideal.
    Ideal,
    /// `r > 1`: `v0` ultraideal.
    Above,
}

/// The two parameters fixed along a family, `(r, θ)`; `h` varies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyParams<T> {
    pub r: T,
    pub theta: T,
}

impl<T: Real> FamilyParams<T> {
    pub fn new(r: T, theta: T) -> Result<Self> {
        if !(r.is_finite() && theta.is_finite()) {
            return Err(Error::InvalidParams("r and theta must be finite".into()));
        }
        if !(r > T::zero()) {
            return Err(Error::InvalidParams(format!("r must be positive, got {}", r)));
        }
        if !(theta > T::zero() && theta < T::FRAC_PI_2()) {
            return Err(Error::InvalidParams(format!(
                "theta must lie in (0, pi/2), got {}",
                theta
            )));
        }
        if !(r * theta.cos() < T::one()) {
            return Err(Error::InvalidParams(format!(
                "r cos(theta) must be < 1 so that v1 is interior, got {}",
                r * theta.cos()
            )));
        }
        Ok(Self { r, theta })
    }

    pub fn at(self, h: T) -> Result<OrthoschemeParams<T>> {
        OrthoschemeParams::new(h, self.r, self.theta)
    }

    pub fn radius_case(self) -> RadiusCase {
        let d = self.r - T::one();
        if d.abs() <= T::class_eps() {
            RadiusCase::Ideal
        } else if d < T::zero() {
            RadiusCase::Below
        } else {
            RadiusCase::Above
        }
    }

    /// `r` with the ideal band snapped to exactly 1.
    pub(crate) fn r_eff(self) -> T {
        match self.radius_case() {
            RadiusCase::Ideal => T::one(),
            _ => self.r,
        }
    }

    /// Height `r / √(r² − 1)` at which edge `v0 v3` touches the ideal boundary;
    /// only defined for `r > 1`.
    pub fn lambert_threshold(self) -> Option<T> {
        match self.radius_case() {
            RadiusCase::Above => Some(self.r / (self.r * self.r - T::one()).sqrt()),
            _ => None,
        }
    }

    pub(crate) fn sin_cos(self) -> (T, T) {
        self.theta.sin_cos()
    }

    /// `(1 − r² cos²θ) h² + r² cos²θ`, the squared normalizer of `ŵ2`.
    pub(crate) fn face2_norm_sq(self, h: T) -> T {
        let rc = self.r_eff() * self.theta.cos();
        let rc2 = rc * rc;
        (T::one() - rc2) * h * h + rc2
    }

    /// `(1 − r²) h² + r²`; positive exactly when edge `v0 v3` meets the ball.
    pub(crate) fn edge03_disc(self, h: T) -> T {
        let r = self.r_eff();
        let r2 = r * r;
        (T::one() - r2) * h * h + r2
    }
}

/// One member `R(h, r, θ)` of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoschemeParams<T> {
    pub h: T,
    pub r: T,
    pub theta: T,
}

impl<T: Real> OrthoschemeParams<T> {
    pub fn new(h: T, r: T, theta: T) -> Result<Self> {
        FamilyParams::new(r, theta)?;
        if !(h.is_finite() && h > T::zero()) {
            return Err(Error::InvalidParams(format!("h must be positive and finite, got {}", h)));
        }
        Ok(Self { h, r, theta })
    }

    pub fn family(self) -> FamilyParams<T> {
        FamilyParams { r: self.r, theta: self.theta }
    }

    pub fn with_h(self, h: T) -> Result<Self> {
        Self::new(h, self.r, self.theta)
    }

    pub fn radius_case(self) -> RadiusCase {
        self.family().radius_case()
    }

    pub fn lambert_threshold(self) -> Option<T> {
        self.family().lambert_threshold()
    }

    pub fn vertices(self) -> [[T; 3]; 4] {
        let (s, c) = self.theta.sin_cos();
        let z = T::zero();
        [[self.r * s, self.r * c, z], [z, self.r * c, z], [z, z, z], [z, z, self.h]]
    }

    /// Point classes of `v0 … v3` (with the `class_eps` ideal band).
    pub fn vertex_classes(self) -> [PointClass; 4] {
        let v0 = match self.radius_case() {
            RadiusCase::Below => PointClass::Interior,
            RadiusCase::Ideal => PointClass::Ideal,
            RadiusCase::Above => PointClass::Ultraideal,
        };
        let d = self.h - T::one();
        let v3 = if d.abs() <= T::class_eps() {
            PointClass::Ideal
        } else if d < T::zero() {
            PointClass::Interior
        } else {
            PointClass::Ultraideal
        };
        [v0, PointClass::Interior, PointClass::Interior, v3]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CombinatorialType {
    /// `h ≤ 1`: `v3` interior or ideal, no truncation at `v3`.
    OrdinaryOrthoscheme,
    /// `h > 1`, `r < 1`.
    SimpleFrustum,
    /// `h > 1`, `r = 1`.
    SimpleFrustumIdealV0,
    /// `r > 1`, `1 < h < r/√(r²−1)`.
    DoubleFrustum,
    /// `r > 1`, `h = r/√(r²−1)`: edge `v0 v3` tangent to the ideal boundary.
    DoubleFrustumIdealVertex,
    /// `r > 1`, `h > r/√(r²−1)`: the polar planes of `v0` and `v3` meet inside the ball.
    LambertCube,
}

impl CombinatorialType {
    pub fn as_str(self) -> &'static str {
        match self {
            CombinatorialType::OrdinaryOrthoscheme => "OrdinaryOrthoscheme",
            CombinatorialType::SimpleFrustum => "SimpleFrustum",
            CombinatorialType::SimpleFrustumIdealV0 => "SimpleFrustumIdealV0",
            CombinatorialType::DoubleFrustum => "DoubleFrustum",
            CombinatorialType::DoubleFrustumIdealVertex => "DoubleFrustumIdealVertex",
            CombinatorialType::LambertCube => "LambertCube",
        }
    }
}

impl std::fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify<T: Real>(params: OrthoschemeParams<T>) -> CombinatorialType {
    use CombinatorialType::*;
    let eps = T::class_eps();
    if params.h <= T::one() + eps {
        return OrdinaryOrthoscheme;
    }
    match params.radius_case() {
        RadiusCase::Below => SimpleFrustum,
        RadiusCase::Ideal => SimpleFrustumIdealV0,
        RadiusCase::Above => {
            let hb = params.lambert_threshold().expect("threshold exists for r > 1");
            let d = params.h - hb;
            if d.abs() <= eps {
                DoubleFrustumIdealVertex
            } else if d < T::zero() {
                DoubleFrustum
            } else {
                LambertCube
            }
        }
    }
}

/// Vertices, their proper lifts and the face poles of one family member.
///
/// `face_poles[i]` is the unit space-like normal of the face opposite `v_i`,
/// oriented so that its half-space contains the orthoscheme. `lifts[i]` lies on
/// `H³`, on `S₁²` (proper lift: its half-space is the truncation) or, for an
/// ideal vertex, on the light cone with `x0 = 1` unless rescaled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoschemeGeometry<T> {
    pub params: OrthoschemeParams<T>,
    pub vertices: [[T; 3]; 4],
    pub classes: [PointClass; 4],
    pub lifts: [LorentzVec<T>; 4],
    pub face_poles: [LorentzVec<T>; 4],
    pub combinatorial_type: CombinatorialType,
}

impl<T: Real> OrthoschemeGeometry<T> {
    /// Proper lifts of ultraideal vertices; each cuts the orthoscheme by
    /// `{x : ⟨x, v̂⟩ ≤ 0}`.
    pub fn truncation_halfspaces(&self) -> Vec<LorentzVec<T>> {
        truncation_halfspaces(self)
    }

    /// Every half-space `{x : ⟨x, w⟩ ≤ 0}` whose intersection with the ball is the
    /// truncated polytope: the four faces followed by the truncations.
    pub fn halfspaces(&self) -> Vec<LorentzVec<T>> {
        let mut out = self.face_poles.to_vec();
        out.extend(self.truncation_halfspaces());
        out
    }

    /// Membership of a Klein point in the truncated polytope.
    pub fn contains_klein(&self, p: [T; 3]) -> bool {
        let x = LorentzVec::new(T::one(), p[0], p[1], p[2]);
        self.halfspaces().iter().all(|&w| inner(x, w) <= T::zero())
    }
}

pub fn build<T: Real>(params: OrthoschemeParams<T>) -> Result<OrthoschemeGeometry<T>> {
    build_scaled(params, T::one())
}

/// Like [`build`], with the light-like lift of an ideal `v0` multiplied by
/// `v0_scale` (a different horosphere at `v0`). Has no effect when `v0` is not ideal.
pub fn build_scaled<T: Real>(
    params: OrthoschemeParams<T>,
    v0_scale: T,
) -> Result<OrthoschemeGeometry<T>> {
    let params = OrthoschemeParams::new(params.h, params.r, params.theta)?;
    if !(v0_scale > T::zero() && v0_scale.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "horosphere scale must be positive, got {}",
            v0_scale
        )));
    }
    let fam = params.family();
    let (s, c) = fam.sin_cos();
    let h = params.h;
    let r = fam.r_eff();
    let one = T::one();
    let zero = T::zero();
    let classes = params.vertex_classes();

    let v0 = match fam.radius_case() {
        RadiusCase::Below => {
            LorentzVec::new(one, r * s, r * c, zero).scale((one - r * r).sqrt().recip())
        }
        RadiusCase::Ideal => LorentzVec::new(one, s, c, zero).scale(v0_scale),
        RadiusCase::Above => {
            LorentzVec::new(one, r * s, r * c, zero).scale((r * r - one).sqrt().recip())
        }
    };
    let rc = r * c;
    let v1 = LorentzVec::new(one, zero, rc, zero).scale((one - rc * rc).sqrt().recip());
    let v2 = LorentzVec::new(one, zero, zero, zero);
    let v3 = match classes[3] {
        PointClass::Ideal => LorentzVec::new(one, zero, zero, one),
        class => klein_lift([zero, zero, h], class)?,
    };

    let n2 = fam.face2_norm_sq(h);
    assert!(n2 > zero, "face normalizer must be positive when r cos(theta) < 1");
    let n = n2.sqrt();
    let w0 = LorentzVec::new(zero, -one, zero, zero);
    let w1 = LorentzVec::new(zero, c, -s, zero);
    let w2 = LorentzVec::new(h * rc, zero, h, rc).scale(n.recip());
    let w3 = LorentzVec::new(zero, zero, zero, -one);

    Ok(OrthoschemeGeometry {
        params,
        vertices: params.vertices(),
        classes,
        lifts: [v0, v1, v2, v3],
        face_poles: [w0, w1, w2, w3],
        combinatorial_type: classify(params),
    })
}

pub fn truncation_halfspaces<T: Real>(geom: &OrthoschemeGeometry<T>) -> Vec<LorentzVec<T>> {
    geom.classes
        .iter()
        .zip(geom.lifts.iter())
        .filter(|(class, _)| **class == PointClass::Ultraideal)
        .map(|(_, lift)| *lift)
        .collect()
}
