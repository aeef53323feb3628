use num_complex::Complex64;

use super::frame::{mat_inverse, mat_mul, reference_frame, Mat2};
use super::transport::transport_matrix;
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::pathcalc::Path;

pub const MAX_DENOMINATOR: u32 = 8;
pub const MAX_RESIDUAL: f64 = 1e-6;

/// Action of a loop on the cycle basis `(α̃, β̃)`: the frame `P` returns as `P·V`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monodromy {
    pub matrix: [[Rational; 2]; 2],
    pub numeric: Mat2,
    pub residual: f64,
}

impl Monodromy {
    pub fn det(&self) -> Rational {
        &(&self.matrix[0][0] * &self.matrix[1][1]) - &(&self.matrix[0][1] * &self.matrix[1][0])
    }

    pub fn trace(&self) -> Rational {
        &self.matrix[0][0] + &self.matrix[1][1]
    }

    pub fn is_identity(&self) -> bool {
        self.matrix[0][0].is_one() && self.matrix[1][1].is_one() && self.matrix[0][1].is_zero() && self.matrix[1][0].is_zero()
    }
}

pub fn monodromy(loop_path: &Path, tol: f64) -> Result<Monodromy> {
    if !loop_path.is_closed() {
        return Err(Error::InvalidPath("monodromy needs a closed loop".into()));
    }
    let base = loop_path.start();
    let p0 = reference_frame(base, 1.0 - base, tol)?;
    let phi = transport_matrix(loop_path, tol)?;
    let numeric = mat_mul(&mat_inverse(&p0.matrix)?, &mat_mul(&phi, &p0.matrix));
    let mut residual: f64 = 0.0;
    let mut matrix: [[Rational; 2]; 2] = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            let z = numeric[i][j];
            let r = Rational::approximate(z.re, MAX_DENOMINATOR);
            residual = residual.max((z - Complex64::new(r.to_f64(), 0.0)).norm());
            matrix[i][j] = r;
        }
    }
    if residual >= MAX_RESIDUAL {
        return Err(Error::Precision(format!(
            "monodromy is not rational with denominator ≤ {MAX_DENOMINATOR}: residual {residual:e}"
        )));
    }
    Ok(Monodromy { matrix, numeric, residual })
}

/// Counterclockwise circle of radius ½ about 0, based at ½.
pub fn loop_around_zero() -> Path {
    Path::circle(Complex64::new(0.0, 0.0), 0.5, 0.0).expect("valid loop")
}

/// Counterclockwise circle of radius ½ about 1, based at ½.
pub fn loop_around_one() -> Path {
    Path::circle(Complex64::new(1.0, 0.0), 0.5, std::f64::consts::PI).expect("valid loop")
}
