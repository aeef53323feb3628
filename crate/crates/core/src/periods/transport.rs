use num_complex::Complex64;

use super::frame::{mat_dist, mat_identity, mat_mul, Mat2, PeriodFrame};
use crate::barwords::GaussManinMatrix;
use crate::error::{Error, Result};
use crate::ode::{integrate, Tolerance};
use crate::pathcalc::Path;

/// Points closer than this to a puncture are treated as lying on the singular fiber.
pub const SINGULAR_DISTANCE: f64 = 1e-300;

/// `dP/dt` for the period ODE `dP = M(λ)·P·dλ` at parameter `t`.
pub(crate) fn frame_rhs(m: &Mat2, p: &[Complex64], velocity: Complex64, out: &mut [Complex64]) {
    for i in 0..2 {
        for j in 0..2 {
            out[2 * i + j] = (m[i][0] * p[j] + m[i][1] * p[2 + j]) * velocity;
        }
    }
}

pub(crate) fn flatten(m: &Mat2) -> [Complex64; 4] {
    [m[0][0], m[0][1], m[1][0], m[1][1]]
}

pub(crate) fn unflatten(v: &[Complex64]) -> Mat2 {
    [[v[0], v[1]], [v[2], v[3]]]
}

/// Fundamental solution `Φ` with `P(1) = Φ·P(0)` for every horizontal frame `P`.
pub fn transport_matrix(path: &Path, tol: f64) -> Result<Mat2> {
    if path.is_cuspidal() {
        let t = if path.cuspidal_start() { 0.0 } else { 1.0 };
        return Err(Error::Singularity { t });
    }
    let mut state = flatten(&mat_identity()).to_vec();
    let n = path.num_segments();
    for k in 0..n {
        // each smooth piece gets its own solve so kinks never sit inside a step
        let (t0, t1) = (k as f64 / n as f64, (k + 1) as f64 / n as f64);
        let mut rhs = |t: f64, y: &[Complex64], dy: &mut [Complex64]| -> Result<()> {
            let sample = path.sample_in_segment(k, t * n as f64 - k as f64);
            if sample.point.distance_to_punctures() <= SINGULAR_DISTANCE {
                return Err(Error::Singularity { t });
            }
            let m = GaussManinMatrix::legendre_ode_matrix_at(sample.point.lambda, sample.point.one_minus);
            frame_rhs(&m, y, sample.velocity, dy);
            Ok(())
        };
        let (out, _) = integrate(&mut rhs, &state, t0, t1, &[], Tolerance::uniform(tol))?;
        state = out.into_iter().last().expect("final state");
    }
    Ok(unflatten(&state))
}

/// Frame at the end of `path` obtained by solving the connection ODE from `frame_at_start`.
pub fn gm_transport(path: &Path, frame_at_start: &PeriodFrame, tol: f64) -> Result<PeriodFrame> {
    if (frame_at_start.basepoint - path.start()).norm() > 1e-9 {
        return Err(Error::Domain(format!(
            "frame is based at {} but the path starts at {}",
            frame_at_start.basepoint,
            path.start()
        )));
    }
    let phi = transport_matrix(path, tol)?;
    PeriodFrame::new(mat_mul(&phi, &frame_at_start.matrix), path.end())
}

/// [`gm_transport`] together with a global error estimate from a second solve at `tol/32`.
pub fn gm_transport_estimated(path: &Path, frame_at_start: &PeriodFrame, tol: f64) -> Result<(PeriodFrame, f64)> {
    let coarse = gm_transport(path, frame_at_start, tol)?;
    let fine = gm_transport(path, frame_at_start, tol / 32.0)?;
    let err = mat_dist(&coarse.matrix, &fine.matrix);
    Ok((fine, err))
}
