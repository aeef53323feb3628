use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::report::json_complex;

use super::hypergeometric::{gauss_2f1, HypergeometricParams};
use super::local::{local_frame, Puncture};
use crate::error::{Error, Result};
use crate::exactalg::Rational;

pub type Mat2 = [[Complex64; 2]; 2];

const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn mat_inverse(a: &Mat2) -> Result<Mat2> {
    let det = mat_det(a);
    if det.norm() == 0.0 || !det.is_finite() {
        return Err(Error::DivisionByZero);
    }
    Ok([[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]])
}

pub fn mat_identity() -> Mat2 {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    [[one, zero], [zero, one]]
}

/// Max-entry distance between two matrices.
pub fn mat_dist(a: &Mat2, b: &Mat2) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            d = d.max((a[i][j] - b[i][j]).norm());
        }
    }
    d
}

/// Integer combination `c_α·α + c_β·β` of the fiber cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyClass {
    pub c_alpha: Rational,
    pub c_beta: Rational,
}

impl HomologyClass {
    pub fn new(c_alpha: Rational, c_beta: Rational) -> Self {
        HomologyClass { c_alpha, c_beta }
    }

    pub fn alpha() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    pub fn beta() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn to_complex(&self) -> [Complex64; 2] {
        [Complex64::new(self.c_alpha.to_f64(), 0.0), Complex64::new(self.c_beta.to_f64(), 0.0)]
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c_alpha.is_zero(), self.c_beta.is_zero()) {
            (false, true) if self.c_alpha.is_one() => write!(f, "alpha"),
            (true, false) if self.c_beta.is_one() => write!(f, "beta"),
            _ => write!(f, "{}*alpha+{}*beta", self.c_alpha, self.c_beta),
        }
    }
}

/// Period matrix at a point: rows θ₀, θ₁; columns the lifted cycles α̃, β̃.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodFrame {
    pub matrix: Mat2,
    pub basepoint: Complex64,
}

impl PeriodFrame {
    pub fn new(matrix: Mat2, basepoint: Complex64) -> Result<Self> {
        let det = mat_det(&matrix);
        if !det.is_finite() || det.norm() == 0.0 {
            return Err(Error::Domain(format!("degenerate period frame at λ = {basepoint}")));
        }
        Ok(PeriodFrame { matrix, basepoint })
    }

    pub fn det(&self) -> Complex64 {
        mat_det(&self.matrix)
    }

    /// `∫_σ θ_row` for the lift of `class` carried by this frame.
    pub fn period(&self, row: usize, class: &HomologyClass) -> Complex64 {
        let c = class.to_complex();
        self.matrix[row][0] * c[0] + self.matrix[row][1] * c[1]
    }

    /// Right action by a change of cycle basis.
    pub fn with_basis_change(&self, m: &Mat2) -> PeriodFrame {
        PeriodFrame { matrix: mat_mul(&self.matrix, m), basepoint: self.basepoint }
    }

    pub fn to_json(&self) -> Value {
        let cell = json_complex;
        json!({
            "basepoint": cell(self.basepoint),
            "matrix": [
                [cell(self.matrix[0][0]), cell(self.matrix[0][1])],
                [cell(self.matrix[1][0]), cell(self.matrix[1][1])],
            ],
        })
    }
}

impl Mul<&Mat2> for &PeriodFrame {
    type Output = PeriodFrame;
    fn mul(self, m: &Mat2) -> PeriodFrame {
        self.with_basis_change(m)
    }
}

fn in_lens(lambda: Complex64) -> bool {
    lambda.norm() < 1.0 && (1.0 - lambda).norm() < 1.0
}

fn zone_error(lambda: Complex64) -> Error {
    Error::Domain(format!(
        "λ = {lambda} lies outside |λ| < 1, |1−λ| < 1; transport the frame from the interior with gm_transport"
    ))
}

/// The four period functions as printed: `(f₀, f₁, g₀, g₁) = (K̃(λ), Ẽ(λ), √−1·K̃(1−λ), √−1·Ẽ(1−λ))`.
///
/// `g₁` in this form is not a solution of the Gauss–Manin system, so it is not the
/// second column of [`period_values`]; it is kept for the reflection identity.
pub fn legendre_period_functions(lambda: Complex64, tol: f64) -> Result<[Complex64; 4]> {
    if !in_lens(lambda) {
        return Err(zone_error(lambda));
    }
    let pi = std::f64::consts::PI;
    let k = HypergeometricParams::k_series();
    let e = HypergeometricParams::e_series();
    let mu = 1.0 - lambda;
    Ok([
        pi * gauss_2f1(&k, lambda, tol)?,
        pi * gauss_2f1(&e, lambda, tol)?,
        I * pi * gauss_2f1(&k, mu, tol)?,
        I * pi * gauss_2f1(&e, mu, tol)?,
    ])
}

/// Horizontal period frame from the series at λ in the lens.
///
/// Column α̃ is `(K̃(λ), Ẽ(λ))`. Column β̃ starts from `g₀ = √−1·K̃(1−λ)` and completes it
/// with the companion `g₁ = 2g₀ − 4(1−λ)·dg₀/dλ`, which is what the connection forces on
/// the θ₁-period once the θ₀-period is fixed.
pub fn period_values(lambda: Complex64, tol: f64) -> Result<PeriodFrame> {
    period_values_split(lambda, 1.0 - lambda, tol)
}

/// [`period_values`] with `1 − λ` supplied separately, for points very close to λ = 1.
pub fn period_values_split(lambda: Complex64, one_minus: Complex64, tol: f64) -> Result<PeriodFrame> {
    if !in_lens(lambda) || one_minus.norm() >= 1.0 {
        return Err(zone_error(lambda));
    }
    let pi = std::f64::consts::PI;
    let k = HypergeometricParams::k_series();
    let e = HypergeometricParams::e_series();
    let kd = HypergeometricParams::k_derivative_series();
    let mu = one_minus;
    let f0 = pi * gauss_2f1(&k, lambda, tol)?;
    let f1 = pi * gauss_2f1(&e, lambda, tol)?;
    let k_mu = gauss_2f1(&k, mu, tol)?;
    let g0 = I * pi * k_mu;
    // d/dλ K(1−λ) = −¼·₂F₁(3/2,3/2;2;1−λ)
    let g1 = I * pi * (2.0 * k_mu + mu * gauss_2f1(&kd, mu, tol)?);
    PeriodFrame::new([[f0, g0], [f1, g1]], lambda)
}

/// Frame used to normalize cycle lifts at `λ`: [`period_values_split`], evaluated through
/// the expansion at the nearer puncture so that it stays accurate next to 0 and 1.
pub fn reference_frame(lambda: Complex64, one_minus: Complex64, tol: f64) -> Result<PeriodFrame> {
    if !in_lens(lambda) || one_minus.norm() >= 1.0 {
        return Err(zone_error(lambda));
    }
    let p = if lambda.norm() <= one_minus.norm() { Puncture::Zero } else { Puncture::One };
    let z = p.coordinate(lambda, one_minus);
    PeriodFrame::new(local_frame(p, z, z.ln(), tol)?, lambda)
}
