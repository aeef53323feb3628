//! Adaptive Dormand–Prince 5(4) integrator for complex linear-ish systems along a
//! real parameter.

use num_complex::Complex64;

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// 5th-order weights equal the last row of A (FSAL); E = b5 − b4.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const MAX_STEPS: usize = 2_000_000;

/// Right-hand side `dy/ds = f(s, y)`; writes into the output slice.
pub trait Rhs {
    fn eval(&mut self, s: f64, y: &[Complex64], dy: &mut [Complex64]) -> Result<()>;
}

impl<F> Rhs for F
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]) -> Result<()>,
{
    fn eval(&mut self, s: f64, y: &[Complex64], dy: &mut [Complex64]) -> Result<()> {
        self(s, y, dy)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub atol: f64,
    pub rtol: f64,
}

impl Tolerance {
    pub fn uniform(tol: f64) -> Self {
        Tolerance { atol: tol, rtol: tol }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrates from `s0` to `s1` (either direction). Returns the state at each of the
/// `stops`, which must lie between `s0` and `s1` ordered in the direction of
/// integration; the final entry of the result is the state at `s1`.
pub fn integrate<R: Rhs>(
    rhs: &mut R,
    y0: &[Complex64],
    s0: f64,
    s1: f64,
    stops: &[f64],
    tol: Tolerance,
) -> Result<(Vec<Vec<Complex64>>, Stats)> {
    let n = y0.len();
    let mut out = Vec::with_capacity(stops.len() + 1);
    let mut stats = Stats::default();
    let dir = if s1 >= s0 { 1.0 } else { -1.0 };
    let mut targets: Vec<f64> = stops.to_vec();
    targets.push(s1);
    for w in targets.windows(2) {
        if (w[1] - w[0]) * dir < 0.0 {
            return Err(Error::Domain("integration stops are not monotone".into()));
        }
    }

    let mut y = y0.to_vec();
    let mut s = s0;
    if s0 == s1 {
        for _ in &targets {
            out.push(y.clone());
        }
        return Ok((out, stats));
    }

    let mut k: Vec<Vec<Complex64>> = vec![vec![Complex64::new(0.0, 0.0); n]; 7];
    let mut ytmp = vec![Complex64::new(0.0, 0.0); n];
    let mut ynew = vec![Complex64::new(0.0, 0.0); n];
    let mut delta = vec![Complex64::new(0.0, 0.0); n];
    let mut comp = vec![Complex64::new(0.0, 0.0); n];
    let mut comp_next = vec![Complex64::new(0.0, 0.0); n];
    rhs.eval(s, &y, &mut k[0])?;

    let span = (s1 - s0).abs();
    let mut h = initial_step(&y, &k[0], span, tol);

    for &target in &targets {
        while (target - s) * dir > 0.0 {
            if stats.accepted + stats.rejected > MAX_STEPS {
                return Err(Error::Precision(format!("step limit exceeded at s = {s}")));
            }
            let remaining = (target - s).abs();
            let last = h >= remaining;
            let step = if last { remaining } else { h } * dir;

            for stage in 1..7 {
                for i in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, kj) in k.iter().enumerate().take(stage) {
                        acc += kj[i] * (A[stage][j] * step);
                    }
                    delta[i] = acc;
                    ytmp[i] = y[i] + acc;
                }
                rhs.eval(s + C[stage] * step, &ytmp, &mut k[stage])?;
            }
            // stage 6 evaluated at ytmp = 5th-order solution; the accepted state is
            // accumulated with Kahan compensation since tails take thousands of steps
            for i in 0..n {
                let d = delta[i] - comp[i];
                ynew[i] = y[i] + d;
                comp_next[i] = (ynew[i] - y[i]) - d;
            }

            let mut err: f64 = 0.0;
            for i in 0..n {
                let mut e = Complex64::new(0.0, 0.0);
                for (j, kj) in k.iter().enumerate() {
                    e += kj[i] * (E[j] * step);
                }
                let scale = tol.atol + tol.rtol * y[i].norm().max(ynew[i].norm());
                err = err.max(e.norm() / scale);
            }
            if !err.is_finite() {
                err = 1e10;
            }

            if err <= 1.0 {
                stats.accepted += 1;
                s = if last { target } else { s + step };
                std::mem::swap(&mut y, &mut ynew);
                std::mem::swap(&mut comp, &mut comp_next);
                let (first, rest) = k.split_at_mut(1);
                first[0].copy_from_slice(&rest[5]);
                let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                if !last || fac < 1.0 {
                    h = step.abs() * fac;
                }
            } else {
                stats.rejected += 1;
                h = step.abs() * (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
            }
            if h < 1e-15 * s.abs().max(1e-300) || h < 1e-300 {
                return Err(Error::StepUnderflow { t: s });
            }
        }
        out.push(y.clone());
    }
    Ok((out, stats))
}

fn initial_step(y: &[Complex64], dy: &[Complex64], span: f64, tol: Tolerance) -> f64 {
    let mut d0: f64 = 0.0;
    let mut d1: f64 = 0.0;
    for (yi, di) in y.iter().zip(dy) {
        let sc = tol.atol + tol.rtol * yi.norm();
        d0 = d0.max(yi.norm() / sc);
        d1 = d1.max(di.norm() / sc);
    }
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h.min(span * 0.1).max(span * 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let mut f = |_s: f64, y: &[Complex64], dy: &mut [Complex64]| {
            dy[0] = y[0] * Complex64::new(0.0, 1.0);
            Ok(())
        };
        let (out, _) = integrate(
            &mut f,
            &[Complex64::new(1.0, 0.0)],
            0.0,
            std::f64::consts::PI,
            &[std::f64::consts::FRAC_PI_2],
            Tolerance::uniform(1e-12),
        )
        .unwrap();
        assert!((out[0][0] - Complex64::new(0.0, 1.0)).norm() < 1e-10);
        assert!((out[1][0] - Complex64::new(-1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn backward_integration() {
        let mut f = |s: f64, _y: &[Complex64], dy: &mut [Complex64]| {
            dy[0] = Complex64::new(3.0 * s * s, 0.0);
            Ok(())
        };
        let (out, _) =
            integrate(&mut f, &[Complex64::new(1.0, 0.0)], 1.0, 0.0, &[0.5], Tolerance::uniform(1e-12))
                .unwrap();
        assert!((out[0][0].re - (1.0 - 1.0 + 0.125)).abs() < 1e-12);
        assert!(out[1][0].re.abs() < 1e-12);
    }

    #[test]
    fn rhs_errors_propagate() {
        let mut f = |s: f64, _y: &[Complex64], _dy: &mut [Complex64]| {
            if s > 0.5 {
                Err(Error::Singularity { t: s })
            } else {
                Ok(())
            }
        };
        let r = integrate(&mut f, &[Complex64::new(0.0, 0.0)], 0.0, 1.0, &[], Tolerance::uniform(1e-9));
        assert!(matches!(r, Err(Error::Singularity { .. })));
    }

    #[test]
    fn non_monotone_stops_rejected() {
        let mut f = |_s: f64, _y: &[Complex64], _dy: &mut [Complex64]| Ok(());
        let r = integrate(&mut f, &[Complex64::new(0.0, 0.0)], 0.0, 1.0, &[0.6, 0.3], Tolerance::uniform(1e-9));
        assert!(r.is_err());
    }
}
