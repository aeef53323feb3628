//! Expansions of the period frame at the degenerate fibers λ = 0 and λ = 1.
//!
//! With `c_n = (½)_n/n!` and `d_n = 2ψ(n+1) − 2ψ(n+½)` one has
//! `π·K(1−z) = Σ c_n² z^n (d_n − log z)` for `K = ₂F₁(½,½;1;·)`, and the θ₁-rows follow
//! from the θ₀-rows through the connection. Every entry is `A(z) + B(z)·log z` with `A`, `B`
//! convergent for `|z| < 1`, which makes the frame usable arbitrarily close to a puncture.

use num_complex::Complex64;

use super::frame::Mat2;
use crate::error::{Error, Result};

const PI: f64 = std::f64::consts::PI;
const I: Complex64 = Complex64::new(0.0, 1.0);
const MAX_TERMS: usize = 1_000_000;

/// A puncture of the base with a degenerate fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Puncture {
    Zero,
    One,
}

impl Puncture {
    /// The local coordinate `z`: λ at 0 and 1 − λ at 1.
    pub fn coordinate(&self, lambda: Complex64, one_minus: Complex64) -> Complex64 {
        match self {
            Puncture::Zero => lambda,
            Puncture::One => one_minus,
        }
    }

    /// Column of the frame fixed by the local monodromy: α at 0, β at 1.
    pub fn invariant_column(&self) -> usize {
        match self {
            Puncture::Zero => 0,
            Puncture::One => 1,
        }
    }
}

/// `(S, S', D, D')` with `S = Σ c_n² z^n = K(z)`, `D = Σ c_n² d_n z^n` and primes for d/dz.
fn sums(z: Complex64, tol: f64) -> Result<[Complex64; 4]> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("local expansion requested at |z| = {} ≥ 1", z.norm())));
    }
    let zero = Complex64::new(0.0, 0.0);
    let (mut s, mut ds, mut d, mut dd) = (zero, zero, zero, zero);
    let mut c2 = 1.0;
    let mut dn = 4.0 * std::f64::consts::LN_2;
    // zn1 = z^{n−1}, starting from the n = 0 term whose derivative vanishes
    let mut zn1 = Complex64::new(0.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    let r = z.norm();
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        s += c2 * zn;
        d += c2 * dn * zn;
        if n > 0 {
            ds += nf * c2 * zn1;
            dd += nf * c2 * dn * zn1;
        }
        // c_{n+1}² = c_n²·((n+½)/(n+1))², d_{n+1} = d_n + 2/(n+1) − 2/(n+½)
        c2 *= ((nf + 0.5) / (nf + 1.0)).powi(2);
        dn += 2.0 / (nf + 1.0) - 2.0 / (nf + 0.5);
        zn1 = zn;
        zn *= z;
        // the largest remaining term is the derivative one, (n+1)·c²·d·z^n, and the
        // terms after it shrink at least by r·(n+3)/(n+2); d_n decreases from 4 log 2
        let next = (nf + 1.0) * c2 * dn.abs().max(1.0) * zn1.norm();
        let rho = r * (nf + 3.0) / (nf + 2.0);
        if n > 2 && rho < 1.0 {
            let scale = s.norm().max(d.norm()).max(ds.norm()).max(dd.norm()).max(1.0);
            if next / (1.0 - rho) <= tol * scale {
                return Ok([s, ds, d, dd]);
            }
        }
    }
    Err(Error::IterationLimit { terms: MAX_TERMS })
}

/// `(A, B)` with frame `= A + B·log z` near `puncture`, `z` its local coordinate.
///
/// Near 0 the θ₁-entry of the β̃-column contains `4i(1−z)K(z)/z`, a genuine pole.
pub fn local_frame_parts(puncture: Puncture, z: Complex64, tol: f64) -> Result<(Mat2, Mat2)> {
    let [s, ds, d, dd] = sums(z, tol)?;
    let zero = Complex64::new(0.0, 0.0);
    Ok(match puncture {
        Puncture::Zero => {
            let w = 1.0 - z;
            let a = [
                [PI * s, I * d],
                [PI * (2.0 * s - 4.0 * w * ds), I * (2.0 * d - 4.0 * w * (dd - s / z))],
            ];
            let b = [[zero, -I * s], [zero, I * (-2.0 * s + 4.0 * w * ds)]];
            (a, b)
        }
        Puncture::One => {
            let a = [[d, I * PI * s], [2.0 * d + 4.0 * z * dd - 4.0 * s, I * PI * (2.0 * s + 4.0 * z * ds)]];
            let b = [[-s, zero], [-2.0 * s - 4.0 * z * ds, zero]];
            (a, b)
        }
    })
}

/// The frame near `puncture` for a chosen branch `log_z` of `log z`.
pub fn local_frame(puncture: Puncture, z: Complex64, log_z: Complex64, tol: f64) -> Result<Mat2> {
    let (a, b) = local_frame_parts(puncture, z, tol)?;
    let mut m = a;
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] += b[i][j] * log_z;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periods::{mat_dist, period_values_split};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn agrees_with_series_frame_in_the_lens() {
        for lambda in [c(0.5, 0.0), c(0.3, 0.2), c(0.7, -0.25), c(0.15, 0.05), c(0.9, 0.05)] {
            let reference = period_values_split(lambda, 1.0 - lambda, 1e-16).unwrap().matrix;
            let near0 = local_frame(Puncture::Zero, lambda, lambda.ln(), 1e-16).unwrap();
            let near1 = local_frame(Puncture::One, 1.0 - lambda, (1.0 - lambda).ln(), 1e-16).unwrap();
            assert!(mat_dist(&near0, &reference) < 1e-12, "{lambda}: {near0:?} vs {reference:?}");
            assert!(mat_dist(&near1, &reference) < 1e-12, "{lambda}: {near1:?} vs {reference:?}");
        }
    }

    #[test]
    fn invariant_column_has_no_logarithm() {
        for (p, z) in [(Puncture::Zero, c(0.2, 0.1)), (Puncture::One, c(0.3, -0.1))] {
            let (_, b) = local_frame_parts(p, z, 1e-15).unwrap();
            let k = p.invariant_column();
            assert_eq!(b[0][k], c(0.0, 0.0));
            assert_eq!(b[1][k], c(0.0, 0.0));
        }
    }

    #[test]
    fn usable_very_close_to_the_punctures() {
        let (a, b) = local_frame_parts(Puncture::Zero, c(1e-30, 0.0), 1e-16).unwrap();
        assert!((a[0][0] - PI).norm() < 1e-14);
        assert!((b[0][1] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((a[1][1] * 1e-30 - c(0.0, 4.0)).norm() < 1e-12);
        assert!(local_frame_parts(Puncture::One, c(1.0, 0.0), 1e-12).is_err());
    }
}
