use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// Upper parameters `a`, `b` and lower parameter `c` of ₂F₁.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

pub const MAX_TERMS: usize = 1_000_000;

impl HypergeometricParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if c.is_integer() && c.to_f64() <= 0.0 {
            return Err(Error::Domain(format!("lower parameter c = {c} is a nonpositive integer")));
        }
        Ok(HypergeometricParams { a, b, c })
    }

    fn half(p: i64) -> Rational {
        Rational::new(p, 2).expect("nonzero")
    }

    /// ₂F₁(½, ½; 1; ·), the series of K̃/π.
    pub fn k_series() -> Self {
        Self::new(Self::half(1), Self::half(1), Rational::one()).expect("valid")
    }

    /// ₂F₁(½, 3/2; 2; ·), the series of Ẽ/π.
    pub fn e_series() -> Self {
        Self::new(Self::half(1), Self::half(3), Rational::from_int(2)).expect("valid")
    }

    /// ₂F₁(3/2, 3/2; 2; ·) = 4·d/dz ₂F₁(½, ½; 1; ·).
    pub fn k_derivative_series() -> Self {
        Self::new(Self::half(3), Self::half(3), Rational::from_int(2)).expect("valid")
    }
}

/// Partial sum of `Σ (a)_n (b)_n / ((c)_n n!) z^n` until a ratio-bound tail estimate
/// drops below `tol·max(1, |partial sum|)`.
///
/// The series is accepted for `|z| < 1`; the sum diverges or converges too slowly
/// elsewhere and callers must transport from the interior instead.
pub fn gauss_2f1(p: &HypergeometricParams, z: Complex64, tol: f64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "₂F₁ series requested at |z| = {} ≥ 1; use transport from the interior",
            z.norm()
        )));
    }
    let (a, b, c) = (p.a.to_f64(), p.b.to_f64(), p.c.to_f64());
    let r = z.norm();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        term *= z * ratio;
        sum += term;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        // later ratios are bounded by max(current, |z|) once the coefficient ratio is monotone
        let next = ((a + nf + 1.0) * (b + nf + 1.0) / ((c + nf + 1.0) * (nf + 2.0))).abs() * r;
        let rho = next.max(r);
        if rho < 1.0 && n > 2 {
            let tail = term.norm() * rho / (1.0 - rho);
            if tail <= tol * sum.norm().max(1.0) {
                return Ok(sum);
            }
        }
    }
    Err(Error::IterationLimit { terms: MAX_TERMS })
}
