use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Result of fitting `Σ c_{m,q} ε^m log^q ε` to samples; `value` is `c_{0,0}` and
/// `log_coeffs[q]` is `c_{0,q}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogFit {
    pub value: Complex64,
    pub log_coeffs: Vec<Complex64>,
    pub residual: f64,
}

/// Least-squares fit of samples `(ε, f(ε))` by `ε^m log^q ε`, `m ≤ eps_order`, `q ≤ log_degree`.
pub fn fit_log_expansion(samples: &[(f64, Complex64)], log_degree: usize, eps_order: usize) -> Result<LogFit> {
    let cols: Vec<(i32, i32)> = (0..=eps_order as i32)
        .flat_map(|m| (0..=log_degree as i32).map(move |q| (m, q)))
        .collect();
    let rows = samples.len();
    if rows < cols.len() + 2 {
        return Err(Error::Domain(format!(
            "{rows} samples cannot determine {} expansion coefficients; widen the sample range",
            cols.len()
        )));
    }
    let mut a = DMatrix::<f64>::zeros(rows, cols.len());
    for (i, &(eps, _)) in samples.iter().enumerate() {
        let l = eps.ln();
        for (c, &(m, q)) in cols.iter().enumerate() {
            a[(i, c)] = eps.powi(m) * l.powi(q);
        }
    }
    // equilibrate columns before the SVD
    let norms: Vec<f64> = (0..cols.len()).map(|c| a.column(c).norm().max(f64::MIN_POSITIVE)).collect();
    for (c, n) in norms.iter().enumerate() {
        a.column_mut(c).scale_mut(1.0 / n);
    }
    let svd = a.clone().svd(true, true);
    let solve = |b: DVector<f64>| -> Result<DVector<f64>> {
        svd.solve(&b, 1e-14).map_err(|e| Error::Precision(format!("least squares failed: {e}")))
    };
    let re = solve(DVector::from_iterator(rows, samples.iter().map(|s| s.1.re)))?;
    let im = solve(DVector::from_iterator(rows, samples.iter().map(|s| s.1.im)))?;
    let fitted_re = &a * &re;
    let fitted_im = &a * &im;
    let mut residual: f64 = 0.0;
    for (i, s) in samples.iter().enumerate() {
        residual = residual.max((s.1 - Complex64::new(fitted_re[i], fitted_im[i])).norm());
    }
    // the first log_degree + 1 columns are the m = 0 ones
    let log_coeffs: Vec<Complex64> =
        (0..=log_degree).map(|q| Complex64::new(re[q] / norms[q], im[q] / norms[q])).collect();
    Ok(LogFit { value: log_coeffs[0], log_coeffs, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(f: impl Fn(f64) -> Complex64) -> Vec<(f64, Complex64)> {
        (4..=40).map(|j| (-(j as f64)).exp2()).map(|e| (e, f(e))).collect()
    }

    #[test]
    fn recovers_constant_term() {
        let s = samples(|e| {
            let l = e.ln();
            Complex64::new(1.25 - 0.5 * l + 0.1 * l * l + e * (2.0 - l), 0.3 + 3.0 * e * e)
        });
        let fit = fit_log_expansion(&s, 2, 3).unwrap();
        assert!((fit.value - Complex64::new(1.25, 0.3)).norm() < 1e-10);
        assert!(fit.residual < 1e-11);
    }

    #[test]
    fn too_few_samples() {
        let s = samples(|_| Complex64::new(1.0, 0.0));
        assert!(fit_log_expansion(&s[..5], 2, 3).is_err());
    }
}
