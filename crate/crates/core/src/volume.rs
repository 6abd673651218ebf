//! Volume of `R(h, r, θ)` by two independent routes.
//!
//! * Schläfli integral: `V(h) = −∫_h^∞ dV/dt dt`, anchored at `V(∞) = 0`. Valid for
//!   `h > 1`; the range is split at the Lambert threshold where `dV/dh` jumps.
//! * Monte Carlo: uniform samples in a Euclidean box around the truncated polytope
//!   in the Klein ball, weighted by the volume element `(1 − ‖x‖²)⁻²`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::PointClass;
use crate::orthoscheme::{build, classify, CombinatorialType, FamilyParams, OrthoschemeGeometry, OrthoschemeParams};
use crate::quadrature::{integrate, integrate_to_infinity, QuadratureOptions};
use crate::schlafli::dv_dh;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VolumeMethod {
    #[serde(rename = "schlafli")]
    SchlafliIntegral,
    #[serde(rename = "montecarlo")]
    MonteCarlo,
}

impl VolumeMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            VolumeMethod::SchlafliIntegral => "schlafli",
            VolumeMethod::MonteCarlo => "montecarlo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub method: VolumeMethod,
    /// Quadrature error estimate, or the Monte-Carlo standard error.
    pub error: f64,
    /// Integrand evaluations (quadrature) or samples drawn (Monte Carlo).
    pub steps: u64,
    pub seed: Option<u64>,
    /// Bound on the neglected part of the integral beyond the last node; the
    /// integral is mapped onto a finite interval, so nothing is neglected.
    pub tail_bound: f64,
}

pub fn volume_schlafli(params: OrthoschemeParams<f64>) -> Result<VolumeEstimate> {
    volume_schlafli_with(params, QuadratureOptions::default())
}

pub fn volume_schlafli_with(
    params: OrthoschemeParams<f64>,
    opts: QuadratureOptions<f64>,
) -> Result<VolumeEstimate> {
    if classify(params) == CombinatorialType::OrdinaryOrthoscheme {
        return Err(Error::HeightTooSmall { h: params.h });
    }
    let fam = params.family();
    let deriv = |t: f64| Ok(dv_dh(fam.at(t)?)?.dv_dh);
    let mut total = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut start = params.h;
    if let Some(hb) = fam.lambert_threshold() {
        if params.h < hb {
            let piece = integrate(deriv, params.h, hb, opts)?;
            total += piece.value;
            error += piece.error;
            evaluations += piece.evaluations;
            start = hb;
        }
    }
    let tail = integrate_to_infinity(deriv, start, opts)?;
    total += tail.value;
    error += tail.error;
    evaluations += tail.evaluations;
    Ok(VolumeEstimate {
        value: -total,
        method: VolumeMethod::SchlafliIntegral,
        error,
        steps: evaluations as u64,
        seed: None,
        tail_bound: 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloOptions {
    pub samples: u64,
    pub seed: u64,
    pub parallel: bool,
}

impl MonteCarloOptions {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self { samples, seed, parallel: true }
    }
}

/// Samples per independent RNG stream; stream `k` is `ChaCha8(seed)` on stream `k`,
/// so serial and parallel runs see the same numbers and sum them in the same order.
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, Default)]
struct ChunkSums {
    sum: f64,
    sum_sq: f64,
    accepted: u64,
}

/// Linear constraints `a·x ≤ b` of the truncated polytope in Klein coordinates.
fn klein_constraints(geom: &OrthoschemeGeometry<f64>) -> Vec<([f64; 3], f64)> {
    geom.halfspaces().into_iter().map(|w| ([w.x1, w.x2, w.x3], w.x0)).collect()
}

fn solve3(m: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(m);
    if d.abs() < 1e-14 {
        return None;
    }
    let mut out = [0.0; 3];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut mc = m;
        for row in 0..3 {
            mc[row][col] = rhs[row];
        }
        *slot = det(mc) / d;
    }
    Some(out)
}

/// Vertices of the polytope `{a·x ≤ b}`: feasible intersections of constraint triples.
pub fn polytope_vertices(geom: &OrthoschemeGeometry<f64>) -> Vec<[f64; 3]> {
    let cons = klein_constraints(geom);
    let n = cons.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let m = [cons[i].0, cons[j].0, cons[k].0];
                let Some(x) = solve3(m, [cons[i].1, cons[j].1, cons[k].1]) else { continue };
                let feasible = cons.iter().all(|(a, b)| a[0] * x[0] + a[1] * x[1] + a[2] * x[2] <= b + 1e-9);
                if feasible {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Axis-aligned box around the truncated polytope, clipped to `[−1, 1]³`.
pub fn bounding_box(geom: &OrthoschemeGeometry<f64>) -> Option<([f64; 3], [f64; 3])> {
    let verts = polytope_vertices(geom);
    if verts.is_empty() {
        return None;
    }
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for v in &verts {
        for d in 0..3 {
            lo[d] = lo[d].min(v[d]);
            hi[d] = hi[d].max(v[d]);
        }
    }
    for d in 0..3 {
        lo[d] = lo[d].max(-1.0);
        hi[d] = hi[d].min(1.0);
    }
    Some((lo, hi))
}

pub fn volume_montecarlo(params: OrthoschemeParams<f64>, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    volume_montecarlo_with(params, MonteCarloOptions::new(samples, seed))
}

pub fn volume_montecarlo_with(params: OrthoschemeParams<f64>, opts: MonteCarloOptions) -> Result<VolumeEstimate> {
    let geom = build(params)?;
    if let Some(i) = geom.classes.iter().position(|c| *c == PointClass::Ideal) {
        return Err(Error::IdealConfiguration(format!("v{} is ideal", i)));
    }
    if geom.combinatorial_type == CombinatorialType::DoubleFrustumIdealVertex {
        return Err(Error::IdealConfiguration("edge v0 v3 is tangent to the ideal boundary".into()));
    }
    if opts.samples == 0 {
        return Err(Error::InvalidParams("sample count must be positive".into()));
    }
    let Some((lo, hi)) = bounding_box(&geom) else {
        return Err(Error::DegeneratePolytope { samples: 0 });
    };
    let cons = klein_constraints(&geom);
    let width = [hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]];
    let box_volume = width[0] * width[1] * width[2];

    let chunks = opts.samples.div_ceil(CHUNK);
    let run_chunk = |k: u64| -> ChunkSums {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(k);
        let count = CHUNK.min(opts.samples - k * CHUNK);
        let mut acc = ChunkSums::default();
        for _ in 0..count {
            let x = [
                lo[0] + width[0] * rng.random::<f64>(),
                lo[1] + width[1] * rng.random::<f64>(),
                lo[2] + width[2] * rng.random::<f64>(),
            ];
            let n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            if n2 >= 1.0 {
                continue;
            }
            if cons.iter().all(|(a, b)| a[0] * x[0] + a[1] * x[1] + a[2] * x[2] <= *b) {
                let w = 1.0 / ((1.0 - n2) * (1.0 - n2));
                acc.sum += w;
                acc.sum_sq += w * w;
                acc.accepted += 1;
            }
        }
        acc
    };
    let per_chunk: Vec<ChunkSums> = if opts.parallel {
        (0..chunks).into_par_iter().map(run_chunk).collect()
    } else {
        (0..chunks).map(run_chunk).collect()
    };
    let total = per_chunk.iter().fold(ChunkSums::default(), |a, c| ChunkSums {
        sum: a.sum + c.sum,
        sum_sq: a.sum_sq + c.sum_sq,
        accepted: a.accepted + c.accepted,
    });
    if total.accepted == 0 {
        return Err(Error::DegeneratePolytope { samples: opts.samples });
    }
    let n = opts.samples as f64;
    let mean = total.sum / n;
    let var = (total.sum_sq / n - mean * mean).max(0.0);
    Ok(VolumeEstimate {
        value: box_volume * mean,
        method: VolumeMethod::MonteCarlo,
        error: box_volume * (var / n).sqrt(),
        steps: opts.samples,
        seed: Some(opts.seed),
        tail_bound: 0.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub h: f64,
    pub regime: CombinatorialType,
    pub dv_dh: Option<f64>,
    pub volume: Option<f64>,
    pub method: Option<VolumeMethod>,
    pub error: Option<f64>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    /// Monte-Carlo samples for rows with `h ≤ 1`.
    pub mc_samples: u64,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { mc_samples: 200_000, seed: 0x5eed, parallel: true }
    }
}

/// Evaluates each height independently; per-row failures land in `diagnostics`.
pub fn sweep(fam: FamilyParams<f64>, h_grid: &[f64], opts: SweepOptions) -> Result<Vec<SweepRow>> {
    let fam = FamilyParams::new(fam.r, fam.theta)?;
    if h_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParams("sweep grid must be strictly increasing".into()));
    }
    let row = |(i, &h): (usize, &f64)| -> SweepRow {
        let params = match fam.at(h) {
            Ok(p) => p,
            Err(e) => {
                return SweepRow {
                    h,
                    regime: CombinatorialType::OrdinaryOrthoscheme,
                    dv_dh: None,
                    volume: None,
                    method: None,
                    error: None,
                    diagnostics: vec![e.to_string()],
                }
            }
        };
        let regime = classify(params);
        let mut diagnostics = Vec::new();
        let dv = if regime == CombinatorialType::OrdinaryOrthoscheme {
            None
        } else {
            match dv_dh(params) {
                Ok(d) => Some(d.dv_dh),
                Err(e) => {
                    diagnostics.push(format!("dv_dh: {}", e));
                    None
                }
            }
        };
        let vol = if regime == CombinatorialType::OrdinaryOrthoscheme {
            let mc = MonteCarloOptions {
                samples: opts.mc_samples,
                seed: opts.seed.wrapping_add(i as u64),
                parallel: !opts.parallel,
            };
            volume_montecarlo_with(params, mc)
        } else {
            volume_schlafli(params)
        };
        let (volume, method, error) = match vol {
            Ok(v) => (Some(v.value), Some(v.method), Some(v.error)),
            Err(e) => {
                diagnostics.push(format!("volume: {}", e));
                (None, None, None)
            }
        };
        SweepRow { h, regime, dv_dh: dv, volume, method, error, diagnostics }
    };
    Ok(if opts.parallel {
        h_grid.par_iter().enumerate().map(row).collect()
    } else {
        h_grid.iter().enumerate().map(row).collect()
    })
}
