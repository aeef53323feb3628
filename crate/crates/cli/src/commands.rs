use std::path::Path as FsPath;

use chl_core::barwords::word_from_json;
use chl_core::mzv::{mzv_iterint, mzv_series, MzvIndex};
use chl_core::pairing::{cycles_from_json, pair as pair_value};
use chl_core::pathcalc::{path_from_json, Path};
use chl_core::periods::{gauss_2f1, gm_transport, period_values, HypergeometricParams, PeriodFrame};
use chl_core::report::{json_complex, json_f64};
use chl_core::{Config, Error, Result};
use num_complex::Complex64;
use serde_json::json;

use crate::{Method, Outcome, Which};

const PI: f64 = std::f64::consts::PI;
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn mzv(indices: Vec<u32>, method: Method, cfg: &Config) -> Result<Outcome> {
    let k = MzvIndex::new(indices)?;
    let entries = k.entries().to_vec();
    let mut record = json!({ "command": "mzv", "index": entries, "method": format!("{method:?}").to_lowercase() });
    let series = matches!(method, Method::Series | Method::Both).then(|| mzv_series(&k, cfg.tol)).transpose()?;
    let integral = matches!(method, Method::Integral | Method::Both).then(|| mzv_iterint(&k, cfg)).transpose()?;
    let mut pass = true;
    if let Some(v) = series {
        record["series"] = json_f64(v);
    }
    if let Some(v) = integral {
        record["integral"] = json_f64(v);
    }
    if let (Some(a), Some(b)) = (series, integral) {
        let d = (a - b).abs();
        pass = d < cfg.tol;
        record["discrepancy"] = json_f64(d);
        record["tol"] = json_f64(cfg.tol);
        record["pass"] = json!(pass);
    }
    Ok(Outcome { record, pass })
}

/// `dch` or a path file.
pub fn load_path(arg: &str) -> Result<Path> {
    if arg.trim() == "dch" {
        return Ok(Path::dch());
    }
    path_from_json(&read(FsPath::new(arg))?)
}

fn read(file: &FsPath) -> Result<String> {
    std::fs::read_to_string(file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))
}

fn in_file<T>(file: &FsPath, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", file.display())),
        other => other,
    })
}

pub fn period(lambda: Option<Complex64>, which: Which, via: Option<&str>, cfg: &Config) -> Result<Outcome> {
    let tol = cfg.tol.min(1e-15);
    let (lambda, frame) = match via {
        Some(arg) => {
            let path = load_path(arg)?;
            if let Some(l) = lambda {
                if (l - path.end()).norm() > 1e-9 {
                    return Err(Error::Domain(format!("the path ends at {} but λ = {l} was requested", path.end())));
                }
            }
            let start = period_values(path.start(), tol)?;
            (path.end(), Some(gm_transport(&path, &start, cfg.ode_tol)?))
        }
        None => (lambda.ok_or_else(|| Error::Domain("--lambda is required without --via".into()))?, None),
    };
    let mut record = json!({ "command": "period", "lambda": json_complex(lambda) });
    let value = |row: usize, col: usize, frame: &Option<PeriodFrame>| -> Result<Complex64> {
        match frame {
            Some(f) => Ok(f.matrix[row][col]),
            None => series_entry(lambda, row, col, tol),
        }
    };
    match which {
        Which::Frame => {
            let f = match frame {
                Some(f) => f,
                None => period_values(lambda, tol)?,
            };
            record["frame"] = f.to_json();
        }
        Which::F0 => record["f0"] = json_complex(value(0, 0, &frame)?),
        Which::F1 => record["f1"] = json_complex(value(1, 0, &frame)?),
        Which::G0 => record["g0"] = json_complex(value(0, 1, &frame)?),
        Which::G1 => record["g1"] = json_complex(value(1, 1, &frame)?),
    }
    Ok(Outcome { record, pass: true })
}

/// One entry of the series frame; the α̃ column needs only `|λ| < 1`, the β̃ column only
/// `|1 − λ| < 1`.
fn series_entry(lambda: Complex64, row: usize, col: usize, tol: f64) -> Result<Complex64> {
    let k = HypergeometricParams::k_series();
    match (row, col) {
        (0, 0) => Ok(PI * gauss_2f1(&k, lambda, tol)?),
        (1, 0) => Ok(PI * gauss_2f1(&HypergeometricParams::e_series(), lambda, tol)?),
        (0, 1) => Ok(I * PI * gauss_2f1(&k, 1.0 - lambda, tol)?),
        _ => {
            let mu = 1.0 - lambda;
            let kd = HypergeometricParams::k_derivative_series();
            Ok(I * PI * (2.0 * gauss_2f1(&k, mu, tol)? + mu * gauss_2f1(&kd, mu, tol)?))
        }
    }
}

pub fn pair(word: &FsPath, cycles: &FsPath, path: &str, cfg: &Config) -> Result<Outcome> {
    let w = in_file(word, word_from_json(&read(word)?))?;
    let c = in_file(cycles, cycles_from_json(&read(cycles)?))?;
    let p = load_path(path)?;
    let v = pair_value(&w, &c, &p, cfg)?;
    Ok(Outcome { record: json!({ "command": "pair", "value": json_complex(v) }), pass: true })
}
