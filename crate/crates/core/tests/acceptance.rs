//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints a PASS/FAIL line; the process exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::time::Instant;

use complete_orthoscheme::lorentz::inner;
use complete_orthoscheme::maximizer::{find_max, flank_derivatives, verify_lambert_decrease, verify_uniqueness};
use complete_orthoscheme::metrics::{angles, angles_from_poles, metrics, metrics_from_lifts};
use complete_orthoscheme::ortho2d::{area, area_montecarlo};
use complete_orthoscheme::orthoscheme::{build, classify};
use complete_orthoscheme::schlafli::{aux_df_dh, aux_f, dtheta12_dh, dtheta23_dh, dv_dh, dv_dh_scaled, root_function};
use complete_orthoscheme::volume::{volume_montecarlo, volume_schlafli};
use complete_orthoscheme::{CombinatorialType, Family64, FamilyParams, Ortho2D64, Params64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

mod support;
use support::dd::Dd;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn first(bad: &[String]) -> String {
    bad.first().map(|b| format!(", first: {b}")).unwrap_or_default()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Valid θ for radius `r`: `r cos θ < 1`.
fn theta_min(r: f64) -> f64 {
    if r > 1.0 {
        (1.0 / r).acos()
    } else {
        0.0
    }
}

fn random_family(rng: &mut ChaCha8Rng, r_lo: f64, r_hi: f64) -> Family64 {
    loop {
        let r = rng.random_range(r_lo..r_hi);
        let lo = theta_min(r) + 1e-3;
        if lo >= FRAC_PI_2 - 1e-3 {
            continue;
        }
        let t = rng.random_range(lo..FRAC_PI_2 - 1e-3);
        if let Ok(f) = Family64::new(r, t) {
            return f;
        }
    }
}

fn ideal_radius_family(rng: &mut ChaCha8Rng) -> Family64 {
    Family64::new(1.0, rng.random_range(1e-3..FRAC_PI_2 - 1e-3)).unwrap()
}

fn hb(f: Family64) -> f64 {
    f.lambert_threshold().unwrap()
}

fn crit1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let f = random_family(&mut rng, 0.05, 5.0);
        let h = rng.random_range(0.05..10.0);
        let g = build(f.at(h).unwrap()).unwrap();
        let w = g.face_poles;
        let mut errs = vec![inner(w[0], w[2]), inner(w[0], w[3]), inner(w[1], w[3])];
        for (i, wi) in w.iter().enumerate() {
            for (j, &v) in g.lifts.iter().enumerate() {
                if i != j {
                    // pole/vertex incidence is scale-free; normalize the lift
                    let s = v.x0.abs().max(1.0);
                    errs.push(inner(*wi, v) / s);
                }
            }
        }
        worst = errs.into_iter().fold(worst, |m, e| m.max(e.abs()));
    }
    outcome(worst <= 1e-10, format!("1000 members, max |inner| = {worst:.2e}"))
}

/// The family evaluated in double-double arithmetic.
fn dd_family(f: Family64) -> FamilyParams<Dd> {
    FamilyParams::new(Dd::new(f.r), Dd::new(f.theta)).unwrap()
}

/// Central difference `(g(x + δ) − g(x − δ)) / 2δ` with `g` evaluated in
/// double-double, so the quotient carries no cancellation error.
fn central_dd(g: impl Fn(Dd) -> Dd, x: f64, delta: f64) -> f64 {
    let (x, d) = (Dd::new(x), Dd::new(delta));
    ((g(x + d) - g(x - d)) / Dd::new(2.0 * delta)).hi
}

fn crit2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let regimes = [
        CombinatorialType::SimpleFrustum,
        CombinatorialType::SimpleFrustumIdealV0,
        CombinatorialType::DoubleFrustum,
        CombinatorialType::LambertCube,
    ];
    let mut lines = Vec::new();
    let mut pass = true;
    for regime in regimes {
        let (mut len_err, mut ang_err, mut der_err) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..1000 {
            let (f, h, gap) = match regime {
                CombinatorialType::SimpleFrustum => {
                    let f = random_family(&mut rng, 0.05, 0.95);
                    (f, 1.0 + 10f64.powf(rng.random_range(-2.0..1.5)), f64::INFINITY)
                }
                CombinatorialType::SimpleFrustumIdealV0 => {
                    let f = ideal_radius_family(&mut rng);
                    (f, 1.0 + 10f64.powf(rng.random_range(-2.0..1.5)), f64::INFINITY)
                }
                CombinatorialType::DoubleFrustum => {
                    let f = random_family(&mut rng, 1.05, 5.0);
                    let b = hb(f);
                    let h = 1.0 + (b - 1.0) * rng.random_range(0.02..0.98);
                    (f, h, (b - h).min(h - 1.0))
                }
                _ => {
                    let f = random_family(&mut rng, 1.05, 5.0);
                    let b = hb(f);
                    let h = b * (1.0 + 10f64.powf(rng.random_range(-2.0..1.0)));
                    (f, h, h - b)
                }
            };
            let p = f.at(h).unwrap();
            assert_eq!(classify(p), regime);
            let g = build(p).unwrap();
            let closed = metrics(p).unwrap();
            let kernel = metrics_from_lifts(&g).unwrap();
            for (a, b) in closed.lengths().iter().zip(kernel.lengths()) {
                len_err = len_err.max(rel(a.length, b.length));
            }
            for (a, b) in closed.angles.to_array().iter().zip(kernel.angles.to_array()) {
                ang_err = ang_err.max((a - b).abs());
            }
            {
                // angle derivatives against the kernel angles, differentiated in double-double
                let s = 1e-6 * gap.min(h - 1.0).min(1.0);
                let fd = dd_family(f);
                let kernel_angles = |x: Dd| angles_from_poles(&build(fd.at(x).unwrap()).unwrap()).unwrap();
                let n12 = central_dd(|x| kernel_angles(x).theta12, h, s);
                let n23 = central_dd(|x| kernel_angles(x).theta23, h, s);
                let d12 = dtheta12_dh(p).unwrap();
                let d23 = dtheta23_dh(p).unwrap();
                der_err = der_err.max(rel(d12, n12)).max(rel(d23, n23));
                let dv = dv_dh(p).unwrap().dv_dh;
                let kdv = -0.5 * (kernel.l03.length * n12 + kernel.l01.length * n23);
                der_err = der_err.max(rel(dv, kdv));
            }
        }
        let ok = len_err <= 1e-10 && ang_err <= 1e-10 && der_err <= 1e-10;
        pass &= ok;
        lines.push(format!("{}: len {len_err:.1e} ang {ang_err:.1e} deriv {der_err:.1e}", regime.as_str()));
    }
    outcome(pass, lines.join("; "))
}

fn crit3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r_ok = |a: f64, n: f64| (a - n).abs() <= 1e-7 * a.abs().max(n.abs());
    let mut worst = 0.0f64;
    let mut fails = 0;
    for i in 0..500 {
        let (f, h) = match i % 4 {
            0 => (random_family(&mut rng, 0.05, 0.95), rng.random_range(1.05..8.0)),
            1 => (ideal_radius_family(&mut rng), rng.random_range(1.05..8.0)),
            2 => {
                let f = random_family(&mut rng, 1.05, 5.0);
                let b = hb(f);
                (f, 1.0 + (b - 1.0) * rng.random_range(0.1..0.9))
            }
            _ => {
                let f = random_family(&mut rng, 1.05, 5.0);
                (f, hb(f) * rng.random_range(1.1..4.0))
            }
        };
        let fd = dd_family(f);
        let t12 = |x: Dd| angles(fd.at(x).unwrap()).unwrap().theta12;
        let t23 = |x: Dd| angles(fd.at(x).unwrap()).unwrap().theta23;
        let p = f.at(h).unwrap();
        let mut pairs = vec![
            (dtheta12_dh(p).unwrap(), central_dd(t12, h, 1e-6)),
            (dtheta23_dh(p).unwrap(), central_dd(t23, h, 1e-6)),
        ];
        if classify(p) != CombinatorialType::LambertCube {
            pairs.push((aux_df_dh(f, h).unwrap(), central_dd(|x| aux_f(fd, x).unwrap(), h, 1e-6)));
        }
        for (a, n) in pairs {
            worst = worst.max((a - n).abs() / a.abs().max(n.abs()));
            if !r_ok(a, n) {
                fails += 1;
            }
        }
    }
    outcome(fails == 0, format!("500 points, max relative deviation {worst:.2e}, {fails} over 1e-7"))
}

fn grid() -> Vec<Family64> {
    let rs = [
        0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95, 1.0, 1.05, 1.1, 1.25, 1.5, 1.75, 2.0, 2.5, 3.5,
        5.0,
    ];
    let mut out = Vec::new();
    for r in rs {
        let lo = theta_min(r);
        for j in 0..20 {
            let t = lo + (FRAC_PI_2 - lo) * (j as f64 + 0.5) / 20.0;
            out.push(Family64::new(r, t).unwrap());
        }
    }
    out
}

fn crit4() -> Outcome {
    let start = Instant::now();
    let bad: Vec<String> = grid()
        .par_iter()
        .filter_map(|&f| {
            let m = match find_max(f) {
                Ok(m) => m,
                Err(e) => return Some(format!("r={} t={}: {e}", f.r, f.theta)),
            };
            let (lo, hi) = flank_derivatives(f, m.h_star, 1e-6).ok()?;
            (!(m.h_star > 1.0 && lo > 0.0 && hi < 0.0)).then(|| format!("r={} t={}: h*={} flanks {lo} {hi}", f.r, f.theta, m.h_star))
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    outcome(bad.is_empty() && secs < 10.0, format!("400 cells in {secs:.2} s, {} failures{}", bad.len(), first(&bad)))
}

fn crit5() -> Outcome {
    let mut boundary = 0;
    let mut checked = 0;
    let bad: Vec<String> = grid()
        .into_iter()
        .filter(|f| f.r > 1.0)
        .filter_map(|f| {
            checked += 1;
            let m = find_max(f).unwrap();
            if m.regime_at_max == CombinatorialType::DoubleFrustumIdealVertex {
                boundary += 1;
            }
            (m.regime_at_max == CombinatorialType::LambertCube || m.h_star > hb(f) + 1e-9)
                .then(|| format!("r={} t={}: {:?}", f.r, f.theta, m.regime_at_max))
        })
        .collect();
    outcome(
        bad.is_empty(),
        format!("{checked} cells with r > 1, {boundary} maxima on the ideal-vertex boundary, {} violations", bad.len()),
    )
}

fn crit6() -> Outcome {
    let bad: Vec<String> = grid()
        .par_iter()
        .filter_map(|&f| {
            let rep = verify_uniqueness(f, 10_000).unwrap();
            (rep.sign_changes != 1).then(|| format!("r={} t={}: {}", f.r, f.theta, rep.sign_changes))
        })
        .collect();
    outcome(bad.is_empty(), format!("400 cells, 10^4-point scans, {} without exactly one sign change{}", bad.len(), first(&bad)))
}

fn crit7() -> Outcome {
    let mut worst = 0.0f64;
    for t in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, 1.3] {
        let m = find_max(Family64::new(1.0, t).unwrap()).unwrap();
        let exact = (1.0 + 1.0 / (t.sin() * t.sin())).sqrt();
        worst = worst.max((m.h_star - exact).abs());
    }
    outcome(worst <= 1e-10, format!("max |h* - sqrt(1 + 1/sin^2)| = {worst:.2e}"))
}

fn crit8() -> Outcome {
    let mut worst = 0.0f64;
    for r in [1.1f64, 1.5, 2.0, 5.0] {
        let lo = theta_min(r);
        for k in 1..10 {
            let f = Family64::new(r, lo + (FRAC_PI_2 - lo) * k as f64 / 10.0).unwrap();
            worst = worst.max(root_function(f, hb(f)).unwrap().abs());
        }
    }
    outcome(worst <= 1e-10, format!("max |F(h_b) - log(r^2-1)/2| = {worst:.2e}"))
}

fn crit9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut max_dv = f64::NEG_INFINITY;
    let mut violations = 0;
    for _ in 0..10 {
        let f = random_family(&mut rng, 1.01, 5.0);
        let rep = verify_lambert_decrease(f, 100).unwrap();
        max_dv = max_dv.max(rep.max_dv_dh);
        violations += rep.violations.len();
    }
    outcome(violations == 0, format!("1000 samples, max dV/dh = {max_dv:.3e}"))
}

fn crit10() -> Outcome {
    let start = Instant::now();
    let configs = [(2.0, 0.5, FRAC_PI_4), (3.0, 0.5, FRAC_PI_4), (1.3, 2.0, 1.3), (2.0, 2.0, 1.3), (1.05, 1.5, 1.0)];
    let mut lines = Vec::new();
    let mut pass = true;
    for (k, &(h, r, t)) in configs.iter().enumerate() {
        let p = Params64::new(h, r, t).unwrap();
        let s = volume_schlafli(p).unwrap();
        let mc = volume_montecarlo(p, 10_000_000, 1000 + k as u64).unwrap();
        let z = (s.value - mc.value).abs() / mc.error;
        pass &= z <= 3.0;
        lines.push(format!("({h}, {r}, {t:.4}) {:.6} vs {:.6} z={z:.2}", s.value, mc.value));
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 300.0;
    outcome(pass, format!("{}; {secs:.1} s", lines.join("; ")))
}

fn crit11() -> Outcome {
    let mut bad = Vec::new();
    for (r, t) in [(0.5, FRAC_PI_4), (1.0, FRAC_PI_4), (2.0, 1.3), (1.5, 1.0)] {
        let f = Family64::new(r, t).unwrap();
        let vals: Vec<f64> = (3..=8).map(|k| dv_dh(f.at(1.0 + 10f64.powi(-k)).unwrap()).unwrap().dv_dh).collect();
        let ok = vals.iter().all(|&v| v > 0.0) && vals.windows(2).all(|w| w[1] > w[0]);
        if !ok {
            bad.push(format!("r={r} t={t}: {vals:?}"));
        }
    }
    outcome(bad.is_empty(), format!("4 families, k = 3..8, {} failures{}", bad.len(), first(&bad)))
}

fn crit12() -> Outcome {
    let mut plateau = 0.0f64;
    for r in [1.0f64, 1.5, 2.0] {
        let top = if r > 1.0 { r / (r * r - 1.0).sqrt() } else { 100.0 };
        for i in 1..=100 {
            let h = 1.0 + (top - 1.0) * i as f64 / 101.0;
            plateau = plateau.max((area(Ortho2D64::new(h, r).unwrap()).area - FRAC_PI_2).abs());
        }
    }
    let mut decreasing = true;
    for r in [0.2, 0.5, 0.9] {
        let a: Vec<f64> = (0..=100).map(|i| area(Ortho2D64::new(1.0 + 0.04 * i as f64, r).unwrap()).area).collect();
        decreasing &= a.windows(2).all(|w| w[1] < w[0]);
    }
    let mut zs = Vec::new();
    for (k, (h, r)) in [(0.6, 0.7), (2.0, 0.5), (1.1, 2.0)].into_iter().enumerate() {
        let p = Ortho2D64::new(h, r).unwrap();
        let mc = area_montecarlo(p, 10_000_000, 1200 + k as u64).unwrap();
        zs.push((area(p).area - mc.value).abs() / mc.error);
    }
    let mc_ok = zs.iter().all(|&z| z <= 3.0);
    outcome(
        plateau <= 1e-12 && decreasing && mc_ok,
        format!("plateau deviation {plateau:.1e}, r < 1 decreasing: {decreasing}, MC z-scores {zs:.2?}"),
    )
}

fn crit13() -> Outcome {
    let mut worst = 0.0f64;
    for t in [0.3, FRAC_PI_4, 1.2] {
        for h in [1.01, 1.5, 3.0, 20.0] {
            let p = Params64::new(h, 1.0, t).unwrap();
            let base = dv_dh(p).unwrap().dv_dh;
            for lambda in [0.5, 2.0, 10.0] {
                worst = worst.max((dv_dh_scaled(p, lambda).unwrap().dv_dh - base).abs());
            }
        }
    }
    outcome(worst <= 1e-12, format!("max |dV/dh(lambda) - dV/dh(1)| = {worst:.1e}"))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("orthogonality of poles and lifts", crit1),
        ("closed forms agree with the Lorentzian kernel", crit2),
        ("derivatives agree with central differences", crit3),
        ("maximizer exists with opposite flank signs", crit4),
        ("maximum precedes the Lambert cube", crit5),
        ("dV/dh changes sign exactly once", crit6),
        ("r = 1 closed-form maximizer", crit7),
        ("boundary identity of the root function", crit8),
        ("volume decreases on the Lambert range", crit9),
        ("Schlafli integral agrees with Monte Carlo", crit10),
        ("dV/dh diverges as h decreases to 1", crit11),
        ("two-dimensional area theorem", crit12),
        ("horosphere rescaling invariance at r = 1", crit13),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!("{tag} [{:>2}] {name} ({:.2} s): {}", i + 1, start.elapsed().as_secs_f64(), o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
