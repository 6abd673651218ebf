//! Location of the volume-maximizing height along a family.
//!
//! Outside the Lambert range `dV/dh = ½ (−dθ12/dh)(F(h) − ½ log|1 − r²|)` with
//! `−dθ12/dh > 0`, so the maximizer is the zero of the root function
//! [`schlafli::root_function`]. It tends to `+∞` as `h ↓ 1`. For `r ≤ 1` it tends
//! to `−∞` as `h → ∞`. For `r > 1` it tends to 0 at the threshold `h_b = r/√(r²−1)`;
//! if it stays positive on `(1, h_b)` the maximum is the ideal-vertex double
//! frustum at `h_b` itself, since `dV/dh < 0` on the whole Lambert range.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::orthoscheme::{classify, CombinatorialType, FamilyParams, RadiusCase};
use crate::scalar::Real;
use crate::schlafli::{aux_c, aux_g, dv_dh, root_function};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MaximumLocation {
    /// Interior zero of `dV/dh`.
    Interior,
    /// At `h = r/√(r²−1)`; `dV/dh` jumps from positive to negative there.
    IdealBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaximizerResult<T> {
    pub h_star: T,
    pub regime_at_max: CombinatorialType,
    pub location: MaximumLocation,
    /// Root function at `h_star`.
    pub residual: T,
    pub bracket: (T, T),
    pub iterations: usize,
    /// `√(1 + 1/sin²θ)` for `r = 1`.
    pub closed_form: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectionOptions<T> {
    /// Stop once the bracket is this narrow and the residual is below `f_tol`.
    pub x_tol: T,
    pub f_tol: T,
    pub max_iter: usize,
}

impl<T: Real> Default for BisectionOptions<T> {
    fn default() -> Self {
        Self { x_tol: T::lit(1e-12), f_tol: T::lit(1e-12), max_iter: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection<T> {
    pub root: T,
    pub residual: T,
    pub iterations: usize,
}

/// Bisection on a sign-changing bracket. Runs until the bracket is narrower than
/// `x_tol` with `|f| ≤ f_tol`, or until the bracket no longer shrinks in floating
/// point.
pub fn bisect<T: Real, F: FnMut(T) -> Result<T>>(
    mut f: F,
    lo: T,
    hi: T,
    opts: BisectionOptions<T>,
) -> Result<Bisection<T>> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == T::zero() {
        return Ok(Bisection { root: lo, residual: T::zero(), iterations: 0 });
    }
    if fhi == T::zero() {
        return Ok(Bisection { root: hi, residual: T::zero(), iterations: 0 });
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::BracketFailure(format!(
            "no sign change on [{}, {}]: f = {}, {}",
            lo, hi, flo, fhi
        )));
    }
    let lo_positive = flo > T::zero();
    let mut best = (if flo.abs() < fhi.abs() { lo } else { hi }, flo.abs().min(fhi.abs()));
    for it in 1..=opts.max_iter {
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            return Ok(Bisection { root: best.0, residual: best.1, iterations: it - 1 });
        }
        let fm = f(mid)?;
        if fm.abs() <= best.1 {
            best = (mid, fm.abs());
        }
        if fm == T::zero() {
            return Ok(Bisection { root: mid, residual: T::zero(), iterations: it });
        }
        if (fm > T::zero()) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= opts.x_tol && fm.abs() <= opts.f_tol {
            return Ok(Bisection { root: mid, residual: fm.abs(), iterations: it });
        }
    }
    Ok(Bisection { root: best.0, residual: best.1, iterations: opts.max_iter })
}

/// Offset from the singular endpoint `h = 1` (and from `h_b`).
pub fn endpoint_offset<T: Real>() -> T {
    T::lit(1e-9).max(T::epsilon() * T::lit(16.0))
}

pub fn find_max<T: Real>(fam: FamilyParams<T>) -> Result<MaximizerResult<T>> {
    find_max_with(fam, BisectionOptions::default())
}

pub fn find_max_with<T: Real>(
    fam: FamilyParams<T>,
    opts: BisectionOptions<T>,
) -> Result<MaximizerResult<T>> {
    let fam = FamilyParams::new(fam.r, fam.theta)?;
    let delta = endpoint_offset::<T>();
    let lo = T::one() + delta;
    let root = |h: T| root_function(fam, h);
    let closed_form = match fam.radius_case() {
        RadiusCase::Ideal => {
            let s = fam.theta.sin();
            Some((T::one() + (s * s).recip()).sqrt())
        }
        _ => None,
    };

    let hi = match fam.radius_case() {
        RadiusCase::Below | RadiusCase::Ideal => {
            let mut hi = T::lit(2.0);
            while root(hi)? > T::zero() {
                hi = hi * T::lit(2.0);
                if hi > T::lit(1e12) {
                    return Err(Error::BracketFailure(format!(
                        "root function still positive at h = {} for r = {}, theta = {}",
                        hi, fam.r, fam.theta
                    )));
                }
            }
            hi
        }
        RadiusCase::Above => {
            let hb = fam.lambert_threshold().expect("r > 1");
            let hi = hb - delta * hb;
            if hi <= lo || root(hi)? > T::zero() {
                let h_star = hb;
                return Ok(MaximizerResult {
                    h_star,
                    regime_at_max: classify(fam.at(h_star)?),
                    location: MaximumLocation::IdealBoundary,
                    residual: root(h_star)?.abs(),
                    bracket: (lo, hb),
                    iterations: 0,
                    closed_form,
                });
            }
            hi
        }
    };

    let b = bisect(root, lo, hi, opts)?;
    Ok(MaximizerResult {
        h_star: b.root,
        regime_at_max: classify(fam.at(b.root)?),
        location: MaximumLocation::Interior,
        residual: b.residual,
        bracket: (lo, hi),
        iterations: b.iterations,
        closed_form,
    })
}

/// `dV/dh` at `h* ∓ δ`.
pub fn flank_derivatives<T: Real>(fam: FamilyParams<T>, h_star: T, delta: T) -> Result<(T, T)> {
    let below = dv_dh(fam.at(h_star - delta)?)?.dv_dh;
    let above = dv_dh(fam.at(h_star + delta)?)?.dv_dh;
    Ok((below, above))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport<T> {
    pub grid_points: usize,
    /// Sign changes of `dV/dh` on the scan grid, and on the grid refined twofold.
    pub sign_changes: usize,
    pub sign_changes_refined: usize,
    /// Midpoints of the grid cells where the sign flips (coarse grid).
    pub change_locations: Vec<T>,
    /// Roots of `G` in `(1, h_b)` for `r > 1` (closed form of the quadratic).
    pub g_roots_in_range: Option<usize>,
    /// Sign changes of `G` observed on the scan grid for `r > 1`.
    pub g_sign_changes: Option<usize>,
    pub violations: Vec<String>,
}

impl<T> UniquenessReport<T> {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scan heights over the non-Lambert range: `1 + 10^u` for `u ∈ [−8, 3]` when
/// `r ≤ 1`; `1 + (h_b − 1)·10^u` for `u ∈ [−8, 0]` closed by the Lambert-side point
/// `h_b (1 + 1e-9)` when `r > 1`.
pub fn scan_grid<T: Real>(fam: FamilyParams<T>, n: usize) -> Vec<T> {
    let n = n.max(2);
    let frac = |i: usize| T::lit(i as f64 / (n - 1) as f64);
    let ten = T::lit(10.0);
    match fam.lambert_threshold() {
        None => (0..n)
            .map(|i| T::one() + ten.powf(T::lit(-8.0) + T::lit(11.0) * frac(i)))
            .collect(),
        Some(hb) => {
            let span = hb - T::one();
            let mut grid: Vec<T> = (0..n)
                .map(|i| T::one() + span * ten.powf(T::lit(-8.0) * (T::one() - frac(i))))
                .collect();
            *grid.last_mut().expect("n >= 2") = hb;
            grid.push(hb * (T::one() + T::lit(1e-9)));
            grid
        }
    }
}

fn count_sign_changes<T: Real>(hs: &[T], vals: &[T]) -> (usize, Vec<T>) {
    let mut count = 0;
    let mut at = Vec::new();
    let mut prev: Option<(T, T)> = None;
    for (&h, &v) in hs.iter().zip(vals) {
        if v == T::zero() || v.is_nan() {
            continue;
        }
        if let Some((ph, pv)) = prev {
            if pv.signum() != v.signum() {
                count += 1;
                at.push((ph + h) * T::lit(0.5));
            }
        }
        prev = Some((h, v));
    }
    (count, at)
}

pub fn verify_uniqueness<T: Real>(fam: FamilyParams<T>, grid_n: usize) -> Result<UniquenessReport<T>> {
    let fam = FamilyParams::new(fam.r, fam.theta)?;
    let dv = |grid: &[T]| -> Result<Vec<T>> {
        grid.iter().map(|&h| Ok(dv_dh(fam.at(h)?)?.dv_dh)).collect()
    };
    let grid = scan_grid(fam, grid_n);
    let (sign_changes, change_locations) = count_sign_changes(&grid, &dv(&grid)?);
    let fine = scan_grid(fam, 2 * grid_n);
    let (sign_changes_refined, _) = count_sign_changes(&fine, &dv(&fine)?);

    let mut violations = Vec::new();
    if sign_changes != 1 {
        violations.push(format!("{} sign changes of dV/dh on {} points", sign_changes, grid.len()));
    }
    if sign_changes_refined != 1 {
        violations.push(format!(
            "{} sign changes of dV/dh on refined grid of {} points",
            sign_changes_refined,
            fine.len()
        ));
    }

    let (g_roots_in_range, g_sign_changes) = match fam.lambert_threshold() {
        Some(hb) => {
            // G(h) = C(1 − r²)(h² − 1) + 1 vanishes at h² = 1 + 1/(C(r² − 1))
            let c = aux_c(fam);
            let r2m1 = fam.r * fam.r - T::one();
            let roots = if c > T::zero() {
                let h0 = (T::one() + (c * r2m1).recip()).sqrt();
                usize::from(h0 > T::one() && h0 < hb)
            } else {
                0
            };
            let inside: Vec<T> = grid.iter().copied().filter(|&h| h < hb).collect();
            let gv: Vec<T> = inside.iter().map(|&h| aux_g(fam, h)).collect();
            let (gc, _) = count_sign_changes(&inside, &gv);
            if roots > 1 || gc > 1 {
                violations.push(format!("G has {} roots ({} grid sign changes) in (1, h_b)", roots, gc));
            }
            (Some(roots), Some(gc))
        }
        None => (None, None),
    };

    Ok(UniquenessReport {
        grid_points: grid.len(),
        sign_changes,
        sign_changes_refined,
        change_locations,
        g_roots_in_range,
        g_sign_changes,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambertDecreaseReport<T> {
    pub samples: usize,
    pub range: (T, T),
    pub max_dv_dh: T,
    /// `(h, dV/dh)` at samples where `dV/dh ≥ 0`.
    pub violations: Vec<(T, T)>,
}

impl<T> LambertDecreaseReport<T> {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples `dV/dh` at log-spaced heights on `(h_b (1 + 1e-6), 10³)`.
pub fn verify_lambert_decrease<T: Real>(
    fam: FamilyParams<T>,
    samples: usize,
) -> Result<LambertDecreaseReport<T>> {
    let fam = FamilyParams::new(fam.r, fam.theta)?;
    let hb = fam.lambert_threshold().ok_or_else(|| {
        Error::RegimeMismatch(format!("Lambert cubes only occur for r > 1, got r = {}", fam.r))
    })?;
    let lo = hb * (T::one() + T::lit(1e-6));
    let hi = T::lit(1e3).max(hb * T::lit(10.0));
    let n = samples.max(2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    let mut max_dv = T::neg_infinity();
    let mut violations = Vec::new();
    for i in 0..n {
        let h = (llo + (lhi - llo) * T::lit(i as f64 / (n - 1) as f64)).exp();
        let d = dv_dh(fam.at(h)?)?;
        if d.regime != CombinatorialType::LambertCube {
            return Err(Error::RegimeMismatch(format!("sample h = {} is not a Lambert cube", h)));
        }
        max_dv = max_dv.max(d.dv_dh);
        if !(d.dv_dh < T::zero()) {
            violations.push((h, d.dv_dh));
        }
    }
    Ok(LambertDecreaseReport { samples: n, range: (lo, hi), max_dv_dh: max_dv, violations })
}
