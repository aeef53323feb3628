use std::collections::BTreeMap;

use num_complex::Complex64;

use super::FiberFormMonomial;
use crate::exactalg::{pochhammer, GaussianRational, Polynomial, Rational, RationalFunction};

/// Gauss–Manin connection on span(θ₀, θ₁): `entries[i][j]` is the coefficient of θ_i
/// in `d_λ θ_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussManinMatrix {
    pub entries: [[RationalFunction; 2]; 2],
}

fn q(p: i64, d: i64) -> GaussianRational {
    GaussianRational::real(Rational::new(p, d).expect("nonzero denominator"))
}

impl GaussManinMatrix {
    /// The connection for the Legendre family in the basis θ₀ = dx/y, θ₁ = x dx/y with
    /// the period normalization K̃ = π·₂F₁(½,½;1;λ), Ẽ = π·₂F₁(½,3/2;2;λ).
    ///
    /// All entries share the denominator λ(1−λ):
    ///
    /// ```text
    /// d_λ θ₀ = ( λ/2·θ₀ − λ/4·θ₁ ) / (λ(1−λ))
    /// d_λ θ₁ = (     θ₀ + (λ/2 − 1)·θ₁ ) / (λ(1−λ))
    /// ```
    pub fn legendre() -> Self {
        let den = Polynomial::from_ints(&[0, 1, -1]);
        let rf = |coeffs: Vec<GaussianRational>| {
            RationalFunction::new(Polynomial::new(coeffs), den.clone()).expect("nonzero denominator")
        };
        let d_theta0 = [rf(vec![q(0, 1), q(1, 2)]), rf(vec![q(0, 1), q(-1, 4)])];
        let d_theta1 = [rf(vec![q(1, 1)]), rf(vec![q(-1, 1), q(1, 2)])];
        GaussManinMatrix {
            entries: [
                [d_theta0[0].clone(), d_theta1[0].clone()],
                [d_theta0[1].clone(), d_theta1[1].clone()],
            ],
        }
    }

    /// `d_λ θ_j` as coefficients on (θ₀, θ₁).
    pub fn column(&self, j: usize) -> [&RationalFunction; 2] {
        [&self.entries[0][j], &self.entries[1][j]]
    }

    /// Matrix `Aᵀ` of the period ODE `p′ = Aᵀ p` for `p = (∫θ₀, ∫θ₁)`.
    pub fn period_ode_matrix(&self) -> [[RationalFunction; 2]; 2] {
        [
            [self.entries[0][0].clone(), self.entries[1][0].clone()],
            [self.entries[0][1].clone(), self.entries[1][1].clone()],
        ]
    }

    /// Whether `p′ = Aᵀp` holds through `λ^order` for the Taylor series of
    /// `(₂F₁(½,½;1;λ), ₂F₁(½,3/2;2;λ))`, in exact arithmetic.
    pub fn differentiates_series(&self, order: usize) -> bool {
        let series = |a: Rational, b: Rational, c: Rational| -> Polynomial {
            let coeffs = (0..=order as u32)
                .map(|n| {
                    let num = &pochhammer(&a, n) * &pochhammer(&b, n);
                    let den = &pochhammer(&c, n) * &pochhammer(&Rational::one(), n);
                    num.checked_div(&den).expect("nonzero Pochhammer symbol")
                })
                .collect();
            Polynomial::from_rationals(coeffs)
        };
        let half = |k| Rational::new(k, 2).expect("nonzero denominator");
        let f = [series(half(1), half(1), Rational::one()), series(half(1), half(3), Rational::from_int(2))];
        let m = self.period_ode_matrix();
        let den = Polynomial::from_ints(&[0, 1, -1]);
        (0..2).all(|i| {
            // λ(1−λ)·f_i′ − Σ_j λ(1−λ)·A_ij·f_j
            let mut residual = &den * &f[i].derivative();
            for j in 0..2 {
                let Ok((quo, rem)) = (&(m[i][j].numerator() * &f[j]) * &den).div_rem(m[i][j].denominator()) else {
                    return false;
                };
                if !rem.is_zero() {
                    return false;
                }
                residual = &residual - &quo;
            }
            (0..=order).all(|k| residual.coeff(k).is_zero())
        })
    }

    /// Floating evaluation of `Aᵀ` at λ, given λ and 1 − λ separately so that points
    /// close to 1 keep full relative accuracy in the factor 1 − λ.
    ///
    /// Uses the factored form of [`GaussManinMatrix::legendre`]; a unit test pins it
    /// against the exact entries.
    pub fn legendre_ode_matrix_at(lambda: Complex64, one_minus: Complex64) -> [[Complex64; 2]; 2] {
        let inv = 1.0 / (lambda * one_minus);
        [
            [0.5 / one_minus, -0.25 / one_minus],
            [inv, (0.5 * lambda - 1.0) * inv],
        ]
    }
}

/// Leibniz extension of `d_λ` to a monomial in θ₀, θ₁; like terms are combined.
pub fn gm_derivative(gm: &GaussManinMatrix, m: &FiberFormMonomial) -> Vec<(FiberFormMonomial, RationalFunction)> {
    let mut acc: BTreeMap<FiberFormMonomial, RationalFunction> = BTreeMap::new();
    let exps = [m.e0, m.e1];
    for (j, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mult = RationalFunction::constant(GaussianRational::from_int(e as i64));
        let mut rest = exps;
        rest[j] -= 1;
        for (i, coeff) in gm.column(j).into_iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut target = rest;
            target[i] += 1;
            let key = FiberFormMonomial::new(target[0], target[1]);
            let term = &mult * coeff;
            let entry = acc.entry(key).or_insert_with(RationalFunction::zero);
            *entry = &*entry + &term;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_section_is_flat() {
        assert!(gm_derivative(&GaussManinMatrix::legendre(), &FiberFormMonomial::ONE).is_empty());
    }

    #[test]
    fn theta0_gives_first_column() {
        let gm = GaussManinMatrix::legendre();
        let d = gm_derivative(&gm, &FiberFormMonomial::THETA0);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], (FiberFormMonomial::THETA1, gm.entries[1][0].clone()));
        assert_eq!(d[1], (FiberFormMonomial::THETA0, gm.entries[0][0].clone()));
    }

    #[test]
    fn theta0_squared_by_leibniz() {
        let gm = GaussManinMatrix::legendre();
        let d = gm_derivative(&gm, &FiberFormMonomial::new(2, 0));
        let two = RationalFunction::constant(GaussianRational::from_int(2));
        let expect = vec![
            (FiberFormMonomial::new(1, 1), &two * &gm.entries[1][0]),
            (FiberFormMonomial::new(2, 0), &two * &gm.entries[0][0]),
        ];
        assert_eq!(d, expect);
    }

    #[test]
    fn factored_evaluation_matches_exact_entries() {
        let ode = GaussManinMatrix::legendre().period_ode_matrix();
        for z in [Complex64::new(0.3, 0.1), Complex64::new(-1.7, 2.0), Complex64::new(0.99, -0.01)] {
            let num = GaussManinMatrix::legendre_ode_matrix_at(z, 1.0 - z);
            for i in 0..2 {
                for j in 0..2 {
                    let exact = ode[i][j].eval(z).unwrap();
                    assert!((exact - num[i][j]).norm() < 1e-12 * (1.0 + exact.norm()));
                }
            }
        }
    }

    #[test]
    fn poles_only_at_zero_and_one() {
        let gm = GaussManinMatrix::legendre();
        for row in &gm.entries {
            for e in row {
                let den = e.denominator();
                // every root of the denominator is 0 or 1
                let base = Polynomial::from_ints(&[0, 1, -1]);
                let (_, r) = base.div_rem(den).unwrap();
                assert!(r.is_zero(), "denominator {den} does not divide λ(1−λ)");
            }
        }
    }

    #[test]
    fn series_check_detects_a_wrong_entry() {
        let gm = GaussManinMatrix::legendre();
        assert!(gm.differentiates_series(12));
        let mut wrong = gm.clone();
        wrong.entries[0][1] = &wrong.entries[0][1] * &RationalFunction::constant(GaussianRational::from_int(2));
        assert!(!wrong.differentiates_series(12));
    }
}
