use num_complex::Complex64;

use super::engine::{snap_frame, Engine, Stretch, TailFrame};
use super::fit::fit_log_expansion;
use super::forms::{Weight, WeightedForm};
use super::path::{Path, PathSample};
use super::table::SubwordTable;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::periods::{mat_inverse, mat_mul, reference_frame, Mat2};

/// Regularized value with the worst fit residual among its one-sided limits.
#[derive(Clone, Debug, PartialEq)]
pub struct RegValue {
    pub value: Complex64,
    pub residual: f64,
    pub table: SubwordTable,
}

/// Splits `[0, 1]` into start tail, middle, end tail. Tails stay inside the end segments.
fn split_points(path: &Path) -> (f64, f64) {
    let n = path.num_segments() as f64;
    let a = if path.cuspidal_start() { (1.0 / n).min(0.5) } else { 0.0 };
    let b = if path.cuspidal_end() { (1.0 - 1.0 / n).max(0.5) } else { 1.0 };
    (a, b)
}

fn normalization_sample(path: &Path, b: f64) -> PathSample {
    if path.cuspidal_end() {
        path.sample_from_end(1.0 - b)
    } else {
        let n = path.num_segments();
        path.sample_in_segment(n - 1, 1.0)
    }
}

/// Frames at `a` and `b` with the lift normalized to the reference frame at `b`.
fn boundary_frames(path: &Path, a: f64, b: f64, tol: f64) -> Result<(Mat2, Mat2)> {
    let s = normalization_sample(path, b);
    let p_b = reference_frame(s.point.lambda, s.point.one_minus, tol.min(1e-15))?.matrix;
    let transport = Engine { path, forms: &[], with_frame: true, tol };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let phi = transport.forward(a, b, Some(&[[one, zero], [zero, one]]))?.frame.expect("frame carried");
    let start = if path.cuspidal_start() { path.sample_from_start(a) } else { path.sample_in_segment(0, 0.0) };
    let p_a = snap_frame(&start, &mat_mul(&mat_inverse(&phi)?, &p_b));
    Ok((p_a, p_b))
}

fn needs_frame(forms: &[WeightedForm]) -> bool {
    forms.iter().any(WeightedForm::needs_frame)
}

/// Iterated integral `∫_γ w₁ω₁ ∘ ⋯ ∘ w_rω_r` along a path with interior endpoints.
///
/// Period weights use cycle lifts normalized to the series frame at `γ(1)`. The empty word
/// integrates to 1.
pub fn iterint(path: &Path, forms: &[WeightedForm], cfg: &Config) -> Result<Complex64> {
    Ok(iterint_table(path, forms, cfg)?.full())
}

/// All contiguous subword integrals of `forms` along `path`.
pub fn iterint_table(path: &Path, forms: &[WeightedForm], cfg: &Config) -> Result<SubwordTable> {
    if path.is_cuspidal() {
        return Err(Error::Domain("path has a cuspidal endpoint; use reg_iterint".into()));
    }
    let with_frame = needs_frame(forms);
    let frame = if with_frame { Some(boundary_frames(path, 0.0, 1.0, cfg.ode_tol)?.0) } else { None };
    let engine = Engine { path, forms, with_frame, tol: cfg.ode_tol };
    Ok(engine.forward(0.0, 1.0, frame.as_ref())?.table)
}

/// Regularized limit of `ε ↦ iterint(shrink(γ, ε))`; equals [`iterint`] on non-cuspidal paths.
pub fn reg_iterint(path: &Path, forms: &[WeightedForm], cfg: &Config) -> Result<Complex64> {
    Ok(reg_iterint_detailed(path, forms, cfg)?.value)
}

pub fn reg_iterint_detailed(path: &Path, forms: &[WeightedForm], cfg: &Config) -> Result<RegValue> {
    cfg.validate()?;
    let r = forms.len();
    if !path.is_cuspidal() {
        let table = iterint_table(path, forms, cfg)?;
        return Ok(RegValue { value: table.full(), residual: 0.0, table });
    }
    let (a, b) = split_points(path);
    let with_frame = needs_frame(forms);
    let (p_a, p_b) = if with_frame {
        let (pa, pb) = boundary_frames(path, a, b, cfg.ode_tol)?;
        (Some(pa), Some(pb))
    } else {
        (None, None)
    };
    let engine = Engine { path, forms, with_frame, tol: cfg.ode_tol };
    let middle = engine.forward(a, b, p_a.as_ref())?.table;
    let mut residual: f64 = 0.0;
    let mut total = SubwordTable::identity(r);
    if path.cuspidal_start() {
        let (t, res) = regularized_tail(&engine, Stretch::StartTail, a, p_a.as_ref(), cfg)?;
        residual = residual.max(res);
        total = t;
    }
    total = total.then(&middle);
    if path.cuspidal_end() {
        let (t, res) = regularized_tail(&engine, Stretch::EndTail, 1.0 - b, p_b.as_ref(), cfg)?;
        residual = residual.max(res);
        total = total.then(&t);
    }
    Ok(RegValue { value: total.full(), residual, table: total })
}

/// Number of period factors of each form that can carry a logarithm at the tail's puncture.
///
/// The cycle fixed by the local monodromy has an analytic period there, so only factors
/// with a component along the other cycle count. Without the local expansion every factor
/// is counted.
fn log_counts(engine: &Engine<'_>, source: &TailFrame) -> Vec<usize> {
    engine
        .forms
        .iter()
        .map(|f| match (&f.weight, source) {
            (Weight::Periods(factors), TailFrame::Local(local)) => {
                let t = local.transfer();
                let moving = 1 - local.puncture().invariant_column();
                factors
                    .iter()
                    .filter(|(_, class)| {
                        let c = class.to_complex();
                        (t[moving][0] * c[0] + t[moving][1] * c[1]).norm() > 0.5
                    })
                    .count()
            }
            _ => f.period_degree(),
        })
        .collect()
}

/// Regularized table of one tail.
///
/// In the tail variable `s = log τ` each letter is `h_j(s) ds` with
/// `h_j = p_j(s) + O(e^s·poly(s))`. The polynomials `p_j` come from fitting `h_j` at
/// `τ = ε_j`; their iterated integrals are polynomials in the endpoint `log ε` whose
/// constant terms are exact. Below `δ = min ε_j` the tail is replaced by that model, above
/// it the table is integrated directly.
fn regularized_tail(engine: &Engine<'_>, stretch: Stretch, tau_hi: f64, frame: Option<&Mat2>, cfg: &Config) -> Result<(SubwordTable, f64)> {
    let taus: Vec<f64> = cfg.eps_samples().into_iter().filter(|&e| e < tau_hi).collect();
    let tau_lo = *taus.last().ok_or_else(|| Error::Domain("no regularization samples below the split point".into()))?;
    let source = match frame {
        None => TailFrame::None,
        Some(p) => engine.local_tail_frame(stretch, tau_hi, tau_lo, p).map_or(TailFrame::Carried(*p), TailFrame::Local),
    };
    let logs = log_counts(engine, &source);
    let run = engine.tail(stretch, tau_hi, &taus, &source)?;
    let mut polys = Vec::with_capacity(engine.forms.len());
    let mut worst: f64 = 0.0;
    for (j, &degree) in logs.iter().enumerate() {
        let samples: Vec<(f64, Complex64)> = taus.iter().zip(&run.letters).map(|(&e, h)| (e, h[j])).collect();
        let fit = fit_log_expansion(&samples, degree, cfg.reglim_eps_order as usize)?;
        let scale = samples.iter().map(|s| s.1.norm()).fold(1.0, f64::max);
        if fit.residual > 10.0 * cfg.tol * scale {
            return Err(Error::Regularization { residual: fit.residual, samples });
        }
        worst = worst.max(fit.residual / scale);
        polys.push(fit.log_coeffs);
    }
    let s_lo = tau_lo.ln();
    Ok(match stretch {
        Stretch::StartTail => (polynomial_table(&polys, 0.0, s_lo).then(&run.table), worst),
        _ => (run.table.then(&polynomial_table(&polys, s_lo, 0.0)), worst),
    })
}

/// Iterated integrals of the letters `p_j(s) ds` from `x0` to `x1`, `p_j` given by coefficients.
fn polynomial_table(polys: &[Vec<Complex64>], x0: f64, x1: f64) -> SubwordTable {
    let r = polys.len();
    let mut table = SubwordTable::identity(r);
    for j in 0..r {
        let mut cur = vec![Complex64::new(1.0, 0.0)];
        for k in j..r {
            let prod = poly_mul(&cur, &polys[k]);
            let mut anti = vec![Complex64::new(0.0, 0.0)];
            anti.extend(prod.iter().enumerate().map(|(q, c)| c / (q + 1) as f64));
            let base = poly_eval(&anti, x0);
            anti[0] -= base;
            table.set(j, k, poly_eval(&anti, x1));
            cur = anti;
        }
    }
    table
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(p: &[Complex64], x: f64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}
