//! Joint ODE for the period frame and all subword integrals along one stretch of a path.

use num_complex::Complex64;

use super::forms::WeightedForm;
use super::path::{Path, PathSample};
use super::table::{table_index, table_len, SubwordTable};
use crate::barwords::{BaseForm, GaussManinMatrix};
use crate::error::{Error, Result};
use crate::ode::{integrate, Tolerance};
use crate::periods::{
    flatten, frame_rhs, local_frame, mat_identity, mat_inverse, mat_mul, unflatten, Mat2, Puncture, SINGULAR_DISTANCE,
};

/// How the integration variable relates to the path parameter `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Stretch {
    /// `t` itself, increasing.
    Forward,
    /// Lower limit `a = e^s` of `∫_a^{a_hi}` near the start, `s` decreasing.
    StartTail,
    /// Upper limit `1 − e^s` of `∫_{b_lo}^{1−τ}` near the end, `s` decreasing.
    EndTail,
}

pub(crate) struct Engine<'a> {
    pub path: &'a Path,
    pub forms: &'a [WeightedForm],
    pub with_frame: bool,
    pub tol: f64,
}

/// State after integrating: frame (if carried) and subword table.
#[derive(Clone, Debug)]
pub(crate) struct Snapshot {
    pub frame: Option<Mat2>,
    pub table: SubwordTable,
}

fn form_value(omega: BaseForm, s: &PathSample) -> Complex64 {
    match omega {
        BaseForm::Chi0 => s.velocity / s.point.lambda,
        BaseForm::Chi1 => s.velocity / s.point.one_minus,
    }
}

impl<'a> Engine<'a> {
    fn offset(&self) -> usize {
        if self.with_frame {
            4
        } else {
            0
        }
    }

    fn r(&self) -> usize {
        self.forms.len()
    }

    fn initial_state(&self, frame: Option<&Mat2>) -> Vec<Complex64> {
        let mut y = Vec::with_capacity(self.offset() + table_len(self.r()));
        if self.with_frame {
            y.extend_from_slice(&flatten(frame.expect("frame required")));
        }
        y.resize(self.offset() + table_len(self.r()), Complex64::new(0.0, 0.0));
        y
    }

    fn snapshot(&self, y: &[Complex64]) -> Snapshot {
        let off = self.offset();
        Snapshot {
            frame: self.with_frame.then(|| unflatten(&y[..4])),
            table: SubwordTable::from_entries(self.r(), y[off..].to_vec()),
        }
    }

    /// Right-hand side in the stretch variable. `t` is the path parameter of `sample` and
    /// `scale` is `dt/ds` up to the sign conventions of the stretch.
    fn rhs(&self, stretch: Stretch, t: f64, sample: &PathSample, scale: f64, y: &[Complex64], dy: &mut [Complex64], h: &mut [Complex64]) -> Result<()> {
        check_regular(t, sample)?;
        let frame = self.with_frame.then(|| unflatten(&y[..4]));
        if self.with_frame {
            let m = GaussManinMatrix::legendre_ode_matrix_at(sample.point.lambda, sample.point.one_minus);
            frame_rhs(&m, &y[..4], sample.velocity * scale, &mut dy[..4]);
        }
        let off = self.offset();
        self.letters(t, sample, scale, frame.as_ref(), h);
        self.table_rhs(stretch, h, &y[off..], &mut dy[off..]);
        Ok(())
    }

    /// Letter values `h_j = w_j·ω_j·dt/ds` at one sample.
    fn letters(&self, t: f64, sample: &PathSample, scale: f64, frame: Option<&Mat2>, h: &mut [Complex64]) {
        for (j, f) in self.forms.iter().enumerate() {
            h[j] = f.weight_value(t, sample.point.lambda, frame) * form_value(f.omega, sample) * scale;
        }
    }

    fn table_rhs(&self, stretch: Stretch, h: &[Complex64], y: &[Complex64], dy: &mut [Complex64]) {
        let r = self.r();
        let one = Complex64::new(1.0, 0.0);
        for k in 0..r {
            for j in 0..=k {
                let v = match stretch {
                    // d/d(upper limit): last letter evaluated at the moving end
                    Stretch::Forward | Stretch::EndTail => {
                        let prev = if j == k { one } else { y[table_index(j, k - 1)] };
                        prev * h[k]
                    }
                    // d/d(lower limit): first letter evaluated at the moving end, with a minus sign
                    Stretch::StartTail => {
                        let rest = if j == k { one } else { y[table_index(j + 1, k)] };
                        -h[j] * rest
                    }
                };
                dy[table_index(j, k)] = v;
            }
        }
    }

    /// Integrates forward in `t` over `[t0, t1]`, segment by segment.
    pub fn forward(&self, t0: f64, t1: f64, frame: Option<&Mat2>) -> Result<Snapshot> {
        let mut y = self.initial_state(frame);
        let n = self.path.num_segments();
        let nf = n as f64;
        let tol = Tolerance::uniform(self.tol);
        let mut h = vec![Complex64::new(0.0, 0.0); self.r()];
        for k in 0..n {
            let mut lo = (k as f64 / nf).max(t0);
            let mut hi = ((k + 1) as f64 / nf).min(t1);
            if hi <= lo {
                continue;
            }
            // an endpoint next to a puncture gets a logarithmic variable on its half
            let mid = 0.5 * (lo + hi);
            if k == 0 && t0 == 0.0 {
                if let Some(kappa) = self.log_anchor(self.path.sample_from_start(0.0)) {
                    let mut f = |sigma: f64, y: &[Complex64], dy: &mut [Complex64]| -> Result<()> {
                        let e = sigma.exp();
                        let sample = self.path.sample_from_start(e - kappa);
                        self.rhs(Stretch::Forward, e - kappa, &sample, e, y, dy, &mut h)
                    };
                    let (out, _) = integrate(&mut f, &y, kappa.ln(), (kappa + mid).ln(), &[], tol)?;
                    y = out.into_iter().last().expect("final state");
                    lo = mid;
                }
            }
            let mut tail = None;
            if k == n - 1 && t1 == 1.0 {
                if let Some(kappa) = self.log_anchor(self.path.sample_from_end(0.0)) {
                    tail = Some((kappa, 1.0 - mid));
                    hi = mid;
                }
            }
            let mut f = |t: f64, y: &[Complex64], dy: &mut [Complex64]| -> Result<()> {
                let sample = self.path.sample_in_segment(k, t * nf - k as f64);
                self.rhs(Stretch::Forward, t, &sample, 1.0, y, dy, &mut h)
            };
            let (out, _) = integrate(&mut f, &y, lo, hi, &[], tol)?;
            y = out.into_iter().last().expect("final state");
            if let Some((kappa, span)) = tail {
                // t = 1 + κ − e^σ, σ decreasing
                let mut f = |sigma: f64, y: &[Complex64], dy: &mut [Complex64]| -> Result<()> {
                    let e = sigma.exp();
                    let sample = self.path.sample_from_end(e - kappa);
                    self.rhs(Stretch::Forward, 1.0 - (e - kappa), &sample, -e, y, dy, &mut h)
                };
                let (out, _) = integrate(&mut f, &y, (kappa + span).ln(), kappa.ln(), &[], tol)?;
                y = out.into_iter().last().expect("final state");
            }
        }
        Ok(self.snapshot(&y))
    }

    /// Parameter distance `κ` from an endpoint to the puncture it nearly touches, when the
    /// endpoint is close enough for the integrand to vary on that scale.
    fn log_anchor(&self, end: PathSample) -> Option<f64> {
        let d = end.point.distance_to_punctures();
        let speed = end.velocity.norm();
        (d < NEAR_PUNCTURE && d > 0.0 && speed > 0.0).then(|| d / speed)
    }

    /// Integrates a tail stretch from parameter distance `tau_hi` down through `taus`
    /// (decreasing, all below `tau_hi`). Returns the letter values `h_j` at every stop and
    /// the subword table between the last stop and `tau_hi`.
    pub fn tail(&self, stretch: Stretch, tau_hi: f64, taus: &[f64], source: &TailFrame) -> Result<TailRun> {
        let stops: Vec<f64> = taus.iter().map(|t| t.ln()).collect();
        let s_end = *stops.last().ok_or_else(|| Error::Domain("no tail samples".into()))?;
        let mut h = vec![Complex64::new(0.0, 0.0); self.r()];
        let carried = matches!(source, TailFrame::Carried(_));
        let off = if carried { 4 } else { 0 };
        let mut y0 = match source {
            TailFrame::Carried(p) => flatten(p).to_vec(),
            _ => Vec::new(),
        };
        y0.resize(off + table_len(self.r()), Complex64::new(0.0, 0.0));
        let frame_at = |tau: f64, sample: &PathSample, y: &[Complex64]| -> Result<Option<Mat2>> {
            match source {
                TailFrame::None => Ok(None),
                TailFrame::Carried(_) => Ok(Some(unflatten(&y[..4]))),
                TailFrame::Local(l) => l.at(tau, sample).map(Some),
            }
        };
        let mut f = |s: f64, y: &[Complex64], dy: &mut [Complex64]| -> Result<()> {
            let (t, sample, scale) = self.tail_sample(stretch, s.exp());
            check_regular(t, &sample)?;
            if carried {
                let m = GaussManinMatrix::legendre_ode_matrix_at(sample.point.lambda, sample.point.one_minus);
                frame_rhs(&m, &y[..4], sample.velocity * scale, &mut dy[..4]);
            }
            let frame = frame_at(s.exp(), &sample, y)?;
            self.letters(t, &sample, scale, frame.as_ref(), &mut h);
            self.table_rhs(stretch, &h, &y[off..], &mut dy[off..]);
            Ok(())
        };
        let (mut out, _) = integrate(&mut f, &y0, tau_hi.ln(), s_end, &stops[..stops.len() - 1], Tolerance::uniform(self.tol))?;
        out.truncate(stops.len());
        let mut letters = Vec::with_capacity(taus.len());
        for (y, &tau) in out.iter().zip(taus) {
            let (t, sample, scale) = self.tail_sample(stretch, tau);
            let frame = frame_at(tau, &sample, y)?;
            let mut v = vec![Complex64::new(0.0, 0.0); self.r()];
            self.letters(t, &sample, scale, frame.as_ref(), &mut v);
            letters.push(v);
        }
        let last = out.last().expect("at least one stop");
        Ok(TailRun { letters, table: SubwordTable::from_entries(self.r(), last[off..].to_vec()) })
    }

    /// Path parameter, sample and `dt/ds` at distance `tau` from the tail's endpoint.
    fn tail_sample(&self, stretch: Stretch, tau: f64) -> (f64, PathSample, f64) {
        match stretch {
            Stretch::StartTail => (tau, self.path.sample_from_start(tau), tau),
            Stretch::EndTail => (1.0 - tau, self.path.sample_from_end(tau), -tau),
            Stretch::Forward => unreachable!("forward stretches use `forward`"),
        }
    }

    /// Expresses the frame `p` at distance `tau_hi` from the tail's endpoint through the
    /// expansion at that puncture, with the branch of the logarithm continued along the tail.
    /// `tau_lo` fixes the branch near the endpoint.
    pub fn local_tail_frame(&self, stretch: Stretch, tau_hi: f64, tau_lo: f64, p: &Mat2) -> Option<LocalFrame> {
        let end = match stretch {
            Stretch::StartTail => self.path.start(),
            Stretch::EndTail => self.path.end(),
            Stretch::Forward => return None,
        };
        let puncture = if end.norm() < 0.5 { Puncture::Zero } else { Puncture::One };
        let lo = self.tail_sample(stretch, tau_lo).1;
        let w = puncture.coordinate(lo.point.lambda, lo.point.one_minus) / tau_lo;
        let mut local = LocalFrame { puncture, t: mat_identity(), w, log_w: w.ln() };
        let hi = self.tail_sample(stretch, tau_hi).1;
        let l = local.at(tau_hi, &hi).ok()?;
        local.t = round_integral(&mat_mul(&mat_inverse(&l).ok()?, p))?;
        Some(local)
    }
}

/// Where a tail takes its period frame from.
pub(crate) enum TailFrame {
    None,
    /// Integrated along with the table from the given value at the top of the tail.
    Carried(Mat2),
    /// Evaluated from the expansion at the puncture.
    Local(LocalFrame),
}

/// Frame `L(z, log z)·t` near a puncture, `L` the local expansion and `t` integral.
pub(crate) struct LocalFrame {
    puncture: Puncture,
    t: Mat2,
    /// Limit of `z/τ` along the tail and its logarithm.
    w: Complex64,
    log_w: Complex64,
}

impl LocalFrame {
    fn at(&self, tau: f64, sample: &PathSample) -> Result<Mat2> {
        let z = self.puncture.coordinate(sample.point.lambda, sample.point.one_minus);
        let log_z = tau.ln() + self.log_w + (z / (tau * self.w)).ln();
        Ok(mat_mul(&local_frame(self.puncture, z, log_z, SERIES_TOL)?, &self.t))
    }

    /// Transfer matrix to the local frame; its rows say which combinations carry logarithms.
    pub fn transfer(&self) -> &Mat2 {
        &self.t
    }

    pub fn puncture(&self) -> Puncture {
        self.puncture
    }
}

/// Letter values and table of one tail run.
pub(crate) struct TailRun {
    pub letters: Vec<Vec<Complex64>>,
    pub table: SubwordTable,
}

const SERIES_TOL: f64 = 1e-17;
const NEAR_PUNCTURE: f64 = 1e-3;
const MONODROMY_SLACK: f64 = 1e-3;

/// Rounds a transfer matrix between two horizontal frames, which is integral whenever both
/// frames are continuations of the series frame.
pub(crate) fn round_integral(t: &Mat2) -> Option<Mat2> {
    let mut rounded = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let n = t[i][j].re.round();
            if (t[i][j] - n).norm() > MONODROMY_SLACK {
                return None;
            }
            rounded[i][j] = Complex64::new(n, 0.0);
        }
    }
    Some(rounded)
}

/// `p` with its transfer to the expansion at the nearer puncture rounded to integers.
///
/// Frames obtained as `Φ⁻¹·P` next to a puncture lose the subdominant column to
/// cancellation; the integral transfer restores it.
pub(crate) fn snap_frame(sample: &PathSample, p: &Mat2) -> Mat2 {
    let (lambda, one_minus) = (sample.point.lambda, sample.point.one_minus);
    let puncture = if lambda.norm() <= one_minus.norm() { Puncture::Zero } else { Puncture::One };
    let z = puncture.coordinate(lambda, one_minus);
    if z.norm() >= 0.5 {
        return *p;
    }
    let snapped = (|| {
        let l = local_frame(puncture, z, z.ln(), SERIES_TOL).ok()?;
        let t = round_integral(&mat_mul(&mat_inverse(&l).ok()?, p))?;
        Some(mat_mul(&l, &t))
    })();
    snapped.unwrap_or(*p)
}

fn check_regular(t: f64, sample: &PathSample) -> Result<()> {
    if sample.point.distance_to_punctures() <= SINGULAR_DISTANCE || !sample.point.lambda.is_finite() {
        return Err(Error::Singularity { t });
    }
    Ok(())
}
