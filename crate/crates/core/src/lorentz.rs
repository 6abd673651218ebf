//! Minkowski space `R^{1,3}`, the hyperboloid model and the projective ball model.
//!
//! Points of `H³` are unit time-like vectors with `x0 > 0`, oriented geodesic planes
//! are unit space-like vectors (points of the de Sitter sphere `S₁²`), and ideal
//! points are future light-like vectors. The plane of a space-like `v` bounds the
//! half-space `{x : ⟨x, v⟩ ≤ 0}`. Curvature is fixed at −1.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{acosh_stable, asinh_stable, Real};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct LorentzVec<T> {
    pub x0: T,
    pub x1: T,
    pub x2: T,
    pub x3: T,
}

impl<T: Real> LorentzVec<T> {
    pub const fn new(x0: T, x1: T, x2: T, x3: T) -> Self {
        Self { x0, x1, x2, x3 }
    }

    pub fn from_f64(c: [f64; 4]) -> Self {
        Self::new(T::lit(c[0]), T::lit(c[1]), T::lit(c[2]), T::lit(c[3]))
    }

    pub fn to_array(self) -> [T; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Lorentzian quadratic form `⟨v, v⟩`.
    pub fn norm_sq(self) -> T {
        inner(self, self)
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }

    /// Spatial part, i.e. the Klein coordinates before division by `x0`.
    pub fn spatial(self) -> [T; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Rescales a time-like vector onto `H³` (`⟨v,v⟩ = −1`, `x0 > 0`).
    pub fn normalize_timelike(self) -> Result<Self> {
        let q = self.norm_sq();
        if !(q < T::zero()) {
            return Err(Error::NotOnQuadric(format!(
                "expected time-like vector, got <v,v> = {}",
                q
            )));
        }
        let s = (-q).sqrt();
        Ok(if self.x0 < T::zero() { self.scale(-s.recip()) } else { self.scale(s.recip()) })
    }

    /// Rescales a space-like vector onto `S₁²` (`⟨v,v⟩ = +1`), keeping its orientation.
    pub fn normalize_spacelike(self) -> Result<Self> {
        let q = self.norm_sq();
        if !(q > T::zero()) {
            return Err(Error::NotOnQuadric(format!(
                "expected space-like vector, got <v,v> = {}",
                q
            )));
        }
        Ok(self.scale(q.sqrt().recip()))
    }
}

impl<T: Real> Add for LorentzVec<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl<T: Real> Sub for LorentzVec<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl<T: Real> Mul<T> for LorentzVec<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        self.scale(s)
    }
}

impl<T: Real> Neg for LorentzVec<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

/// Position of a projective point relative to the ball `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PointClass {
    Interior,
    Ideal,
    Ultraideal,
}

impl PointClass {
    /// Classifies a Klein point by the sign of `1 − ‖p‖²`, with the ideal band
    /// `|1 − ‖p‖²| ≤ Real::class_eps()`.
    pub fn of_klein<T: Real>(p: [T; 3]) -> Self {
        let d = T::one() - klein_norm_sq(p);
        if d.abs() <= T::class_eps() {
            PointClass::Ideal
        } else if d > T::zero() {
            PointClass::Interior
        } else {
            PointClass::Ultraideal
        }
    }
}

pub(crate) fn klein_norm_sq<T: Real>(p: [T; 3]) -> T {
    p[0] * p[0] + p[1] * p[1] + p[2] * p[2]
}

/// Lorentzian inner product `−x0 y0 + x1 y1 + x2 y2 + x3 y3`.
#[inline]
pub fn inner<T: Real>(u: LorentzVec<T>, v: LorentzVec<T>) -> T {
    -u.x0 * v.x0 + u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3
}

/// Distance from a point `u ∈ H³` to the plane of `v ∈ S₁²`, with `u` in the
/// half-space of `v`: `sinh ℓ = −⟨u, v⟩`.
pub fn dist_point_plane<T: Real>(u: LorentzVec<T>, v: LorentzVec<T>) -> Result<T> {
    let ip = inner(u, v);
    if ip > T::clamp_eps() {
        return Err(Error::OutsideHalfSpace { inner: ip.as_f64() });
    }
    Ok(asinh_stable((-ip).max(T::zero())))
}

/// Signed distance between the horosphere `{x ∈ H³ : ⟨x, u⟩ = −½}` of a light-like
/// `u` and the plane of `v ∈ S₁²`: `e^ℓ / 2 = −⟨u, v⟩`. Positive iff they are disjoint.
///
/// Scaling `u` by `λ > 0` shrinks the horoball and shifts the result by `log λ`.
pub fn dist_horo_plane<T: Real>(u: LorentzVec<T>, v: LorentzVec<T>) -> Result<T> {
    horo_log(u, v)
}

/// Signed distance between the horosphere of a light-like `u` and a point `p ∈ H³`,
/// positive when `p` lies outside the horoball: `e^ℓ / 2 = −⟨u, p⟩`.
pub fn dist_horo_point<T: Real>(u: LorentzVec<T>, p: LorentzVec<T>) -> Result<T> {
    horo_log(u, p)
}

/// Signed distance between the horospheres of two light-like vectors.
pub fn dist_horo_horo<T: Real>(u: LorentzVec<T>, v: LorentzVec<T>) -> Result<T> {
    horo_log(u, v)
}

fn horo_log<T: Real>(u: LorentzVec<T>, v: LorentzVec<T>) -> Result<T> {
    let ip = inner(u, v);
    if !(ip < T::zero()) {
        return Err(Error::OutsideHalfSpace { inner: ip.as_f64() });
    }
    Ok((-T::lit(2.0) * ip).ln())
}

/// Dihedral angle `θ ∈ [0, π]` of the corner `H(u) ∩ H(v)`: `cos θ = −⟨u, v⟩`.
pub fn dihedral_angle<T: Real>(u: LorentzVec<T>, v: LorentzVec<T>) -> Result<T> {
    let c = -inner(u, v);
    let eps = T::clamp_eps();
    if c > T::one() + eps {
        return Err(Error::Ultraparallel { inner: (-c).as_f64() });
    }
    if c < -T::one() - eps {
        return Err(Error::IntersectBeyondBoundary { inner: (-c).as_f64() });
    }
    Ok(c.max(-T::one()).min(T::one()).acos())
}

/// Length of the common perpendicular of two ultraparallel planes: `cosh ℓ = −⟨u, v⟩`.
pub fn dist_plane_plane<T: Real>(u: LorentzVec<T>, v: LorentzVec<T>) -> Result<T> {
    let c = -inner(u, v);
    if c < T::one() - T::clamp_eps() {
        return Err(Error::PlanesIntersect { inner: (-c).as_f64() });
    }
    Ok(acosh_stable(c.max(T::one())))
}

/// Distance between two points of `H³`: `cosh ℓ = −⟨u, v⟩`.
pub fn dist_point_point<T: Real>(u: LorentzVec<T>, v: LorentzVec<T>) -> T {
    acosh_stable((-inner(u, v)).max(T::one()))
}

/// Radial projection to the affine chart `x0 = 1`.
pub fn klein_project<T: Real>(v: LorentzVec<T>) -> Result<[T; 3]> {
    if v.x0 == T::zero() {
        return Err(Error::PointAtInfinity);
    }
    Ok([v.x1 / v.x0, v.x2 / v.x0, v.x3 / v.x0])
}

/// Inverse image of a Klein point: on `H³` for interior points, on `S₁²` for
/// ultraideal ones (the lift whose half-space contains the origin), and the
/// unscaled light-like vector `(1, p)` for ideal points.
pub fn klein_lift<T: Real>(p: [T; 3], class: PointClass) -> Result<LorentzVec<T>> {
    let v = LorentzVec::new(T::one(), p[0], p[1], p[2]);
    let d = T::one() - klein_norm_sq(p);
    match class {
        PointClass::Ideal => Ok(v),
        PointClass::Interior if d > T::zero() => Ok(v.scale(d.sqrt().recip())),
        PointClass::Ultraideal if d < T::zero() => Ok(v.scale((-d).sqrt().recip())),
        _ => Err(Error::NotOnQuadric(format!(
            "Klein point with 1 - |p|^2 = {} does not match class {:?}",
            d, class
        ))),
    }
}
