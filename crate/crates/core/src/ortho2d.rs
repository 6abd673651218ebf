//! Two-dimensional complete orthoschemes and their areas.
//!
//! The triangle has vertices `P0 = (r, 0)`, `P1 = (0, 0)`, `P2 = (0, h)` in the Klein
//! disc, with the right angle at `P1`. Relative to the 3D family this is the face
//! `v0 v1 v3` seen from its own plane: `P1` plays `v1`, `P2` plays the apex `v3`.
//! Ultraideal vertices are cut off by their polar lines and the area follows from
//! the angle defect `(n − 2)π − Σ αᵢ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Vectors of `R^{2,1}` with `⟨x, y⟩ = −x0 y0 + x1 y1 + x2 y2`.
pub mod kernel {
    use crate::scalar::Real;

    pub type Vec3<T> = [T; 3];

    #[inline]
    pub fn inner<T: Real>(u: Vec3<T>, v: Vec3<T>) -> T {
        -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
    }

    pub fn normalize_spacelike<T: Real>(n: Vec3<T>) -> Option<Vec3<T>> {
        let q = inner(n, n);
        if q.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
            return None;
        }
        let s = q.sqrt();
        Some([n[0] / s, n[1] / s, n[2] / s])
    }

    /// Interior angle between two adjacent sides given by outward unit normals.
    /// Sides meeting on the ideal boundary give `0`.
    pub fn corner_angle<T: Real>(n: Vec3<T>, m: Vec3<T>) -> T {
        let c = -inner(n, m);
        c.max(-T::one()).min(T::one()).acos()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ortho2DParams<T> {
    pub h: T,
    pub r: T,
}

impl<T: Real> Ortho2DParams<T> {
    pub fn new(h: T, r: T) -> Result<Self> {
        if !(h.is_finite() && h > T::zero()) {
            return Err(Error::InvalidParams(format!("h must be positive and finite, got {}", h)));
        }
        if !(r.is_finite() && r > T::zero()) {
            return Err(Error::InvalidParams(format!("r must be positive and finite, got {}", r)));
        }
        Ok(Self { h, r })
    }

    /// `r / √(r² − 1)` for `r > 1`: past this height the hypotenuse leaves the disc.
    pub fn lambert_threshold(&self) -> Option<T> {
        lambert_threshold(self.r)
    }
}

fn lambert_threshold<T: Real>(r: T) -> Option<T> {
    if r > T::one() + T::class_eps() {
        Some(r / (r * r - T::one()).sqrt())
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape2D {
    Triangle,
    IdealTriangle,
    Quadrilateral,
    RightAngledPentagon,
    /// Two legs and the polar lines of `P0` and `P2`.
    PolarQuadrilateral,
}

impl Shape2D {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape2D::Triangle => "triangle",
            Shape2D::IdealTriangle => "ideal_triangle",
            Shape2D::Quadrilateral => "quadrilateral",
            Shape2D::RightAngledPentagon => "right_angled_pentagon",
            Shape2D::PolarQuadrilateral => "polar_quadrilateral",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaReport<T> {
    pub area: T,
    pub shape: Shape2D,
    /// Corner angles in cyclic order, starting at `P1`.
    pub angles: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Leg01,
    Leg12,
    Polar2,
    Hypotenuse,
    Polar0,
}

impl Side {
    /// Outward unit normal of the side; the polygon is `{x : ⟨(1, x), n⟩ ≤ 0}`.
    fn normal<T: Real>(self, p: Ortho2DParams<T>) -> [T; 3] {
        let (h, r) = (p.h, p.r);
        let (z, one) = (T::zero(), T::one());
        let raw = match self {
            Side::Leg01 => [z, z, -one],
            Side::Leg12 => [z, -one, z],
            Side::Polar2 => [one, z, h],
            Side::Hypotenuse => [h * r, h, r],
            Side::Polar0 => [one, r, z],
        };
        kernel::normalize_spacelike(raw).unwrap_or(raw)
    }
}

fn sides<T: Real>(p: Ortho2DParams<T>) -> (Shape2D, Vec<Side>) {
    let eps = T::class_eps();
    let one = T::one();
    let mut out = vec![Side::Leg01, Side::Leg12];
    let cut2 = p.h > one + eps;
    let cut0 = p.r > one + eps;
    let lambert = cut2 && lambert_threshold(p.r).is_some_and(|hb| p.h >= hb - eps);
    if cut2 {
        out.push(Side::Polar2);
    }
    if !lambert {
        out.push(Side::Hypotenuse);
    }
    if cut0 {
        out.push(Side::Polar0);
    }
    let ideal = (p.h - one).abs() <= eps || (p.r - one).abs() <= eps;
    let shape = match out.len() {
        3 if ideal => Shape2D::IdealTriangle,
        3 => Shape2D::Triangle,
        5 => Shape2D::RightAngledPentagon,
        _ if lambert => Shape2D::PolarQuadrilateral,
        _ => Shape2D::Quadrilateral,
    };
    (shape, out)
}

/// Corner angles in cyclic order starting at `P1` and the angle-defect area.
pub fn area<T: Real>(p: Ortho2DParams<T>) -> AreaReport<T> {
    let (shape, sides) = sides(p);
    let normals: Vec<[T; 3]> = sides.iter().map(|s| s.normal(p)).collect();
    let n = normals.len();
    let angles: Vec<T> = (0..n).map(|i| kernel::corner_angle(normals[i], normals[(i + 1) % n])).collect();
    let sum = angles.iter().fold(T::zero(), |a, &b| a + b);
    let area = T::lit((n - 2) as f64) * T::PI() - sum;
    AreaReport { area, shape, angles }
}

/// Angle at `P0` between the leg `P0 P1` and the hypotenuse; `0` once `r ≥ 1`.
pub fn alpha0<T: Real>(p: Ortho2DParams<T>) -> T {
    if p.r >= T::one() - T::class_eps() {
        return T::zero();
    }
    kernel::corner_angle(Side::Hypotenuse.normal(p), Side::Leg01.normal(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxAreaReport<T> {
    pub r: T,
    pub value: T,
    /// Smallest maximizing height.
    pub h_lo: T,
    /// Largest maximizing height; `None` when every `h ≥ h_lo` is maximal.
    pub h_hi: Option<T>,
    pub unique: bool,
}

pub fn max_area<T: Real>(r: T) -> Result<MaxAreaReport<T>> {
    let p = Ortho2DParams::new(T::one(), r)?;
    let one = T::one();
    let half_pi = T::FRAC_PI_2();
    Ok(if r < one - T::class_eps() {
        MaxAreaReport { r, value: half_pi - alpha0(p), h_lo: one, h_hi: Some(one), unique: true }
    } else if let Some(hb) = lambert_threshold(r) {
        MaxAreaReport { r, value: half_pi, h_lo: one, h_hi: Some(hb), unique: false }
    } else {
        MaxAreaReport { r, value: half_pi, h_lo: one, h_hi: None, unique: false }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloArea {
    pub value: f64,
    pub error: f64,
    pub samples: u64,
    pub seed: u64,
}

const CHUNK: u64 = 1 << 16;

/// Hyperbolic area of the truncated polygon by uniform sampling of the box
/// `[0, min(r, 1)] × [0, min(h, 1)]` with density `(1 − ‖x‖²)^{−3/2}`.
pub fn area_montecarlo(p: Ortho2DParams<f64>, samples: u64, seed: u64) -> Result<MonteCarloArea> {
    let (_, sides) = sides(p);
    if samples == 0 {
        return Err(Error::InvalidParams("sample count must be positive".into()));
    }
    if (p.h - 1.0).abs() <= f64::class_eps() || (p.r - 1.0).abs() <= f64::class_eps() {
        return Err(Error::IdealConfiguration("polygon has an ideal vertex".into()));
    }
    let normals: Vec<[f64; 3]> = sides.iter().map(|s| s.normal(p)).collect();
    let (wx, wy) = (p.r.min(1.0), p.h.min(1.0));
    let chunks = samples.div_ceil(CHUNK);
    let sums: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let count = CHUNK.min(samples - k * CHUNK);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..count {
                let (x, y) = (wx * rng.random::<f64>(), wy * rng.random::<f64>());
                let n2 = x * x + y * y;
                if n2 >= 1.0 {
                    continue;
                }
                if normals.iter().all(|n| kernel::inner([1.0, x, y], *n) <= 0.0) {
                    let w = (1.0 - n2).powf(-1.5);
                    s += w;
                    s2 += w * w;
                }
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = sums.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = s / n;
    let var = (s2 / n - mean * mean).max(0.0);
    let box_area = wx * wy;
    Ok(MonteCarloArea { value: box_area * mean, error: box_area * (var / n).sqrt(), samples, seed })
}
