//! Edge lengths `ℓij` and dihedral angles `θij` of `R(h, r, θ)`.
//!
//! `θij` is the dihedral angle between the faces opposite `v_i` and `v_j`, i.e.
//! along edge `v_k v_l` with `{i, j, k, l} = {0, 1, 2, 3}`. Edge lengths follow the
//! truncation conventions: an ultraideal endpoint is replaced by its polar plane and
//! an ideal endpoint by a horosphere (the one of the stored light-like lift). On a
//! Lambert cube `θ12` is the angle between the polar planes of `v0` and `v3` and `ℓ03`
//! is the length of their intersection edge.
//!
//! For `h > 1` the closed forms below are used; for `h ≤ 1` everything is evaluated
//! directly from the lifts with the [`lorentz`](crate::lorentz) distance formulas.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::{
    dihedral_angle, dist_horo_horo, dist_horo_plane, dist_horo_point, dist_plane_plane,
    dist_point_plane, dist_point_point, inner, PointClass,
};
use crate::orthoscheme::{build_scaled, CombinatorialType, OrthoschemeGeometry, OrthoschemeParams, RadiusCase};
use crate::scalar::{acosh_stable, asinh_stable, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeKind {
    /// Both endpoints interior.
    PointPoint,
    /// Interior point to the polar plane of an ultraideal endpoint.
    PointPlane,
    /// Signed distance involving a horosphere at an ideal endpoint.
    HoroSigned,
    /// Common perpendicular of two ultraparallel polar planes.
    PlanePlane,
    /// Lambert cube: the edge cut out by the two intersecting polar planes.
    PolarPolarIntersection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeLength<T> {
    pub length: T,
    pub kind: EdgeKind,
}

/// Index pairs in the order used by [`MetricData`] fields.
pub const EDGE_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DihedralAngles<T> {
    pub theta01: T,
    pub theta02: T,
    pub theta03: T,
    pub theta12: T,
    pub theta13: T,
    pub theta23: T,
}

impl<T: Real> DihedralAngles<T> {
    pub fn to_array(&self) -> [T; 6] {
        [self.theta01, self.theta02, self.theta03, self.theta12, self.theta13, self.theta23]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricData<T> {
    pub l01: EdgeLength<T>,
    pub l02: EdgeLength<T>,
    pub l03: EdgeLength<T>,
    pub l12: EdgeLength<T>,
    pub l13: EdgeLength<T>,
    pub l23: EdgeLength<T>,
    pub angles: DihedralAngles<T>,
}

impl<T: Real> MetricData<T> {
    pub fn lengths(&self) -> [EdgeLength<T>; 6] {
        [self.l01, self.l02, self.l03, self.l12, self.l13, self.l23]
    }
}

fn require_above_one<T: Real>(params: OrthoschemeParams<T>) -> Result<()> {
    if params.h <= T::one() + T::class_eps() {
        return Err(Error::HeightTooSmall { h: params.h.as_f64() });
    }
    Ok(())
}

/// `h² − 1` without cancellation near `h = 1`.
#[inline]
pub(crate) fn h2m1<T: Real>(h: T) -> T {
    (h - T::one()) * (h + T::one())
}

/// Closed-form `ℓ03` for `h > 1`.
pub fn edge_l03<T: Real>(params: OrthoschemeParams<T>) -> Result<EdgeLength<T>> {
    edge_l03_scaled(params, T::one())
}

/// [`edge_l03`] with the horosphere at an ideal `v0` given by the lift `λ·v̂0`.
pub fn edge_l03_scaled<T: Real>(params: OrthoschemeParams<T>, v0_scale: T) -> Result<EdgeLength<T>> {
    require_above_one(params)?;
    let fam = params.family();
    let h = params.h;
    let one = T::one();
    let half = T::lit(0.5);
    let r = fam.r_eff();
    let r2 = r * r;
    Ok(match crate::orthoscheme::classify(params) {
        CombinatorialType::SimpleFrustum => {
            // log((S + 1) / (√(1−r²) √(h²−1)))
            let s_edge = fam.edge03_disc(h).sqrt();
            let length = (s_edge + one).ln() - half * (one - r2).ln() - half * h2m1(h).ln();
            EdgeLength { length, kind: EdgeKind::PointPlane }
        }
        CombinatorialType::SimpleFrustumIdealV0 => {
            // log(−2 ⟨λ v̂0, v̂3⟩) = log(2 / √(h²−1)) + log λ
            let length = T::LN_2() - half * h2m1(h).ln() + v0_scale.ln();
            EdgeLength { length, kind: EdgeKind::HoroSigned }
        }
        CombinatorialType::DoubleFrustum => {
            // log((S + 1) / (√(r²−1) √(h²−1))); equal to atanh(S) since
            // (r²−1)(h²−1) = 1 − S², which is the accurate form as S → 0.
            let s_edge = fam.edge03_disc(h).max(T::zero()).sqrt();
            let length = if s_edge < half {
                s_edge.atanh()
            } else {
                (s_edge + one).ln() - half * (r2 - one).ln() - half * h2m1(h).ln()
            };
            EdgeLength { length, kind: EdgeKind::PlanePlane }
        }
        CombinatorialType::DoubleFrustumIdealVertex => {
            EdgeLength { length: T::zero(), kind: EdgeKind::PlanePlane }
        }
        CombinatorialType::LambertCube => {
            // arccosh(h sinθ / N) = atanh(√q cosθ / (h sinθ)), q = (r²−1)h² − r²
            let q = lambert_q(params)?;
            let (s, c) = fam.sin_cos();
            let length = (q.sqrt() * c / (h * s)).atanh();
            EdgeLength { length, kind: EdgeKind::PolarPolarIntersection }
        }
        CombinatorialType::OrdinaryOrthoscheme => unreachable!("h > 1 checked above"),
    })
}

/// `(r² − 1) h² − r²`, positive exactly on the Lambert range.
pub(crate) fn lambert_q<T: Real>(params: OrthoschemeParams<T>) -> Result<T> {
    let q = -params.family().edge03_disc(params.h);
    if !(q > T::zero()) {
        return Err(Error::RegimeMismatch(format!(
            "Lambert-cube formula requires (r^2-1)h^2 - r^2 > 0, got {}",
            q
        )));
    }
    Ok(q)
}

/// Closed-form `ℓ01`; independent of `h` since edge `v0 v1` lies in the base plane.
pub fn edge_l01<T: Real>(params: OrthoschemeParams<T>) -> EdgeLength<T> {
    edge_l01_scaled(params, T::one())
}

pub fn edge_l01_scaled<T: Real>(params: OrthoschemeParams<T>, v0_scale: T) -> EdgeLength<T> {
    let fam = params.family();
    let (s, c) = fam.sin_cos();
    let r = fam.r_eff();
    let rc = r * c;
    let a2 = T::one() - rc * rc;
    match fam.radius_case() {
        RadiusCase::Below => {
            let length = acosh_stable((a2 / (T::one() - r * r)).sqrt());
            EdgeLength { length, kind: EdgeKind::PointPoint }
        }
        RadiusCase::Ideal => {
            let length = (T::lit(2.0) * s).ln() + v0_scale.ln();
            EdgeLength { length, kind: EdgeKind::HoroSigned }
        }
        RadiusCase::Above => {
            let length = asinh_stable((a2 / (r * r - T::one())).sqrt());
            EdgeLength { length, kind: EdgeKind::PointPlane }
        }
    }
}

/// Dihedral angles. Closed forms for `h > 1`, written as `atan2` so that angles
/// near 0 keep full precision; direct evaluation on the face poles otherwise.
pub fn angles<T: Real>(params: OrthoschemeParams<T>) -> Result<DihedralAngles<T>> {
    if params.h <= T::one() + T::class_eps() {
        let geom = build_scaled(params, T::one())?;
        return angles_from_poles(&geom);
    }
    let fam = params.family();
    let (s, c) = fam.sin_cos();
    let h = params.h;
    let r = fam.r_eff();
    let rc = r * c;
    let right = T::FRAC_PI_2();
    let theta12 = match crate::orthoscheme::classify(params) {
        CombinatorialType::LambertCube => {
            // arccos(1 / (√(r²−1) √(h²−1))), and (r²−1)(h²−1) − 1 = q
            lambert_q(params)?.sqrt().atan2(T::one())
        }
        _ => {
            // arccos(h sinθ / N) with N² − h² sin²θ = cos²θ · S²
            let s_edge = fam.edge03_disc(h).max(T::zero()).sqrt();
            (c * s_edge).atan2(h * s)
        }
    };
    // arccos(r cosθ / N) with N² − r² cos²θ = (1 − r² cos²θ) h²
    let theta23 = (h * (T::one() - rc * rc).sqrt()).atan2(rc);
    Ok(DihedralAngles {
        theta01: params.theta,
        theta02: right,
        theta03: right,
        theta12,
        theta13: right,
        theta23,
    })
}

/// All six angles from `θij = arccos(−⟨ŵi, ŵj⟩)`, with the Lambert `θ12` taken
/// between the truncating planes of `v0` and `v3`.
pub fn angles_from_poles<T: Real>(geom: &OrthoschemeGeometry<T>) -> Result<DihedralAngles<T>> {
    let w = &geom.face_poles;
    let theta12 = if geom.combinatorial_type == CombinatorialType::LambertCube {
        dihedral_angle(geom.lifts[0], geom.lifts[3])?
    } else {
        dihedral_angle(w[1], w[2])?
    };
    Ok(DihedralAngles {
        theta01: dihedral_angle(w[0], w[1])?,
        theta02: dihedral_angle(w[0], w[2])?,
        theta03: dihedral_angle(w[0], w[3])?,
        theta12,
        theta13: dihedral_angle(w[1], w[3])?,
        theta23: dihedral_angle(w[2], w[3])?,
    })
}

/// Length of edge `v_i v_j` from the lifts, dispatching on the endpoint classes.
pub fn edge_from_lifts<T: Real>(
    geom: &OrthoschemeGeometry<T>,
    i: usize,
    j: usize,
) -> Result<EdgeLength<T>> {
    use PointClass::*;
    let (a, b) = (geom.lifts[i], geom.lifts[j]);
    let (ca, cb) = (geom.classes[i], geom.classes[j]);
    Ok(match (ca, cb) {
        (Interior, Interior) => EdgeLength { length: dist_point_point(a, b), kind: EdgeKind::PointPoint },
        (Interior, Ultraideal) => EdgeLength { length: dist_point_plane(a, b)?, kind: EdgeKind::PointPlane },
        (Ultraideal, Interior) => EdgeLength { length: dist_point_plane(b, a)?, kind: EdgeKind::PointPlane },
        (Ideal, Interior) => EdgeLength { length: dist_horo_point(a, b)?, kind: EdgeKind::HoroSigned },
        (Interior, Ideal) => EdgeLength { length: dist_horo_point(b, a)?, kind: EdgeKind::HoroSigned },
        (Ideal, Ultraideal) => EdgeLength { length: dist_horo_plane(a, b)?, kind: EdgeKind::HoroSigned },
        (Ultraideal, Ideal) => EdgeLength { length: dist_horo_plane(b, a)?, kind: EdgeKind::HoroSigned },
        (Ideal, Ideal) => EdgeLength { length: dist_horo_horo(a, b)?, kind: EdgeKind::HoroSigned },
        (Ultraideal, Ultraideal) => {
            if -inner(a, b) >= T::one() - T::clamp_eps() {
                EdgeLength { length: dist_plane_plane(a, b)?, kind: EdgeKind::PlanePlane }
            } else {
                // Polar planes intersect. Only (0, 3) can be in this situation; the
                // edge between them is the common perpendicular of faces 1 and 2.
                let length = dist_plane_plane(geom.face_poles[1], geom.face_poles[2])?;
                EdgeLength { length, kind: EdgeKind::PolarPolarIntersection }
            }
        }
    })
}

/// Metric data evaluated entirely from the lifts and poles.
pub fn metrics_from_lifts<T: Real>(geom: &OrthoschemeGeometry<T>) -> Result<MetricData<T>> {
    let e = |i, j| edge_from_lifts(geom, i, j);
    Ok(MetricData {
        l01: e(0, 1)?,
        l02: e(0, 2)?,
        l03: e(0, 3)?,
        l12: e(1, 2)?,
        l13: e(1, 3)?,
        l23: e(2, 3)?,
        angles: angles_from_poles(geom)?,
    })
}

/// Full metric data; closed forms for `ℓ01`, `ℓ03` and the angles when `h > 1`.
pub fn metrics<T: Real>(params: OrthoschemeParams<T>) -> Result<MetricData<T>> {
    metrics_scaled(params, T::one())
}

pub fn metrics_scaled<T: Real>(params: OrthoschemeParams<T>, v0_scale: T) -> Result<MetricData<T>> {
    let geom = build_scaled(params, v0_scale)?;
    let mut data = metrics_from_lifts(&geom)?;
    if params.h > T::one() + T::class_eps() {
        data.l01 = edge_l01_scaled(params, v0_scale);
        data.l03 = edge_l03_scaled(params, v0_scale)?;
        data.angles = angles(params)?;
    }
    Ok(data)
}
