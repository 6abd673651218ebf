use complete_orthoscheme::maximizer::{find_max, flank_derivatives, verify_lambert_decrease, verify_uniqueness};
use complete_orthoscheme::metrics::metrics;
use complete_orthoscheme::ortho2d::{alpha0, area, area_montecarlo, max_area};
use complete_orthoscheme::orthoscheme::classify;
use complete_orthoscheme::schlafli::{aux_functions, dv_dh};
use complete_orthoscheme::volume::{sweep, volume_montecarlo, volume_schlafli, SweepOptions};
use complete_orthoscheme::{CombinatorialType, Family64, Ortho2D64, Params64};
use serde_json::{json, Value};

use crate::output::{emit, sweep_csv, sweep_diagnostics, to_json_line, CliError, OutputRecord};
use crate::{Command, Family, Format, Member, Method};

pub fn run(cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::Classify(m) => classify_cmd(m),
        Command::Metrics(m) => metrics_cmd(m),
        Command::Dvdh(m) => dvdh_cmd(m),
        Command::Volume { member, method, samples, seed } => volume_cmd(member, *method, *samples, *seed),
        Command::Maximize { family, verify, grid } => maximize_cmd(family, *verify, *grid),
        Command::Sweep { family, h_min, h_max, steps, format, out, samples, seed } => {
            let grid = linspace(*h_min, *h_max, *steps)?;
            if *samples == 0 {
                return Err(CliError::Domain("--samples must be positive".into()));
            }
            let fam = family_params(family)?;
            let opts = SweepOptions { mc_samples: *samples, seed: *seed, parallel: true };
            let rows = sweep(fam, &grid, opts)?;
            let text = match format {
                Format::Csv => {
                    eprint!("{}", sweep_diagnostics(&rows));
                    sweep_csv(&rows)?
                }
                Format::Json => to_json_line(&rows)?,
            };
            emit(&text, out.as_deref())
        }
        Command::Area2d { h, r, samples, seed } => area2d_cmd(*h, *r, *samples, *seed),
    }
}

fn member_params(m: &Member) -> Result<Params64, CliError> {
    Ok(Params64::new(m.h, m.r, m.angle.radians())?)
}

fn family_params(f: &Family) -> Result<Family64, CliError> {
    Ok(Family64::new(f.r, f.angle.radians())?)
}

fn print_record<P: serde::Serialize>(rec: &OutputRecord<P>) -> Result<(), CliError> {
    emit(&to_json_line(rec)?, None)
}

fn regime_warnings(regime: CombinatorialType) -> Vec<String> {
    match regime {
        CombinatorialType::DoubleFrustumIdealVertex => {
            vec!["edge v0v3 is tangent to the ideal boundary; lengths measured from a horosphere".into()]
        }
        CombinatorialType::SimpleFrustumIdealV0 => {
            vec!["v0 is ideal; lengths at v0 are signed horosphere distances".into()]
        }
        _ => Vec::new(),
    }
}

fn classify_cmd(m: &Member) -> Result<(), CliError> {
    let p = member_params(m)?;
    let regime = classify(p);
    let payload = json!({
        "type": regime,
        "radius_case": p.radius_case(),
        "lambert_threshold": p.lambert_threshold(),
        "vertex_classes": p.vertex_classes(),
        "vertices": p.vertices(),
    });
    let mut rec = OutputRecord::new("classify", p, payload);
    rec.warnings = regime_warnings(regime);
    print_record(&rec)
}

fn metrics_cmd(m: &Member) -> Result<(), CliError> {
    let p = member_params(m)?;
    let regime = classify(p);
    let data = metrics(p)?;
    let payload = json!({
        "type": regime,
        "lengths": {
            "l01": data.l01, "l02": data.l02, "l03": data.l03,
            "l12": data.l12, "l13": data.l13, "l23": data.l23,
        },
        "angles": data.angles,
    });
    let mut rec = OutputRecord::new("metrics", p, payload);
    rec.warnings = regime_warnings(regime);
    print_record(&rec)
}

fn dvdh_cmd(m: &Member) -> Result<(), CliError> {
    let p = member_params(m)?;
    let report = dv_dh(p)?;
    let aux = aux_functions(p.family(), p.h).ok();
    let mut payload = serde_json::to_value(report).map_err(std::io::Error::other)?;
    payload["aux"] = serde_json::to_value(aux).map_err(std::io::Error::other)?;
    let mut rec = OutputRecord::new("dvdh", p, payload);
    rec.warnings = regime_warnings(report.regime);
    print_record(&rec)
}

fn volume_cmd(m: &Member, method: Method, samples: u64, seed: u64) -> Result<(), CliError> {
    let p = member_params(m)?;
    let regime = classify(p);
    let est = match method {
        Method::Schlafli => volume_schlafli(p)?,
        Method::Montecarlo => {
            if samples == 0 {
                return Err(CliError::Domain("--samples must be positive".into()));
            }
            volume_montecarlo(p, samples, seed)?
        }
    };
    let mut payload = serde_json::to_value(est).map_err(std::io::Error::other)?;
    payload["type"] = json!(regime);
    let rec = OutputRecord::new("volume", p, payload);
    print_record(&rec)
}

fn maximize_cmd(f: &Family, verify: bool, grid: usize) -> Result<(), CliError> {
    let fam = family_params(f)?;
    let res = find_max(fam)?;
    let mut warnings = Vec::new();
    let delta = 1e-6 * res.h_star;
    let flank = match flank_derivatives(fam, res.h_star, delta) {
        Ok((below, above)) => json!({ "delta": delta, "below": below, "above": above }),
        Err(e) => {
            warnings.push(format!("flank derivatives unavailable: {e}"));
            Value::Null
        }
    };
    let mut payload = serde_json::to_value(res).map_err(std::io::Error::other)?;
    payload["lambert_threshold"] = json!(fam.lambert_threshold());
    payload["flank"] = flank;
    if verify {
        let uniq = verify_uniqueness(fam, grid)?;
        warnings.extend(uniq.violations.iter().map(|v| format!("uniqueness: {v}")));
        let mut verified = uniq.ok();
        payload["uniqueness"] = serde_json::to_value(&uniq).map_err(std::io::Error::other)?;
        payload["lambert_decrease"] = if fam.lambert_threshold().is_some() {
            let dec = verify_lambert_decrease(fam, 100)?;
            for (h, d) in &dec.violations {
                warnings.push(format!("lambert decrease: dV/dh = {d:e} at h = {h}"));
            }
            verified &= dec.ok();
            serde_json::to_value(&dec).map_err(std::io::Error::other)?
        } else {
            Value::Null
        };
        payload["verified"] = json!(verified);
    }
    let mut rec = OutputRecord::new("maximize", fam, payload);
    rec.warnings = warnings;
    print_record(&rec)
}

fn area2d_cmd(h: f64, r: f64, samples: Option<u64>, seed: u64) -> Result<(), CliError> {
    let p = Ortho2D64::new(h, r)?;
    let report = area(p);
    let mut payload = serde_json::to_value(&report).map_err(std::io::Error::other)?;
    payload["alpha0"] = json!(alpha0(p));
    payload["lambert_threshold"] = json!(p.lambert_threshold());
    payload["max_area"] = serde_json::to_value(max_area(r)?).map_err(std::io::Error::other)?;
    if let Some(n) = samples {
        if n == 0 {
            return Err(CliError::Domain("--samples must be positive".into()));
        }
        payload["montecarlo"] = serde_json::to_value(area_montecarlo(p, n, seed)?).map_err(std::io::Error::other)?;
    }
    let rec = OutputRecord::new("area2d", p, payload);
    print_record(&rec)
}

/// `steps` evenly spaced heights from `lo` to `hi`, both included.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0) {
        return Err(CliError::Domain(format!("heights must be positive and finite, got [{lo}, {hi}]")));
    }
    if hi <= lo {
        return Err(CliError::Domain(format!("--h-max ({hi}) must exceed --h-min ({lo})")));
    }
    if steps < 2 {
        return Err(CliError::Domain(format!("--steps must be at least 2, got {steps}")));
    }
    let n = (steps - 1) as f64;
    let mut grid: Vec<f64> = (0..steps).map(|i| lo + (hi - lo) * (i as f64 / n)).collect();
    grid[steps - 1] = hi;
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Domain(format!("{steps} steps do not resolve [{lo}, {hi}] in f64")));
    }
    Ok(grid)
}
