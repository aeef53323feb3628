use super::{gm_derivative, BarWord, BaseForm, FiberFormMonomial, GaussManinMatrix};
use crate::exactalg::{GaussianRational, Polynomial, RationalFunction};

/// Differential form on the one-dimensional base: `coeff(λ)·(dλ)^{∧degree}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseFormElement {
    pub degree: u8,
    pub coeff: RationalFunction,
}

impl BaseFormElement {
    pub fn function(f: RationalFunction) -> Self {
        BaseFormElement { degree: 0, coeff: f }
    }

    pub fn one_form(f: RationalFunction) -> Self {
        BaseFormElement { degree: 1, coeff: f }
    }

    pub fn from_base(omega: BaseForm) -> Self {
        let den = match omega {
            BaseForm::Chi0 => Polynomial::lambda(),
            BaseForm::Chi1 => Polynomial::from_ints(&[1, -1]),
        };
        Self::one_form(RationalFunction::new(Polynomial::one(), den).expect("nonzero"))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Wedge product in the exterior algebra generated by the single 1-form dλ.
    pub fn wedge(&self, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        // dλ ∧ dλ = −dλ ∧ dλ, so every product of degree ≥ 2 vanishes
        let structure = if degree >= 2 { GaussianRational::zero() } else { GaussianRational::one() };
        BaseFormElement { degree, coeff: (&self.coeff * &other.coeff).scale(&structure) }
    }

    /// Exterior derivative: `d(f) = f′ dλ`, `d(f dλ) = f′ dλ∧dλ`.
    pub fn d(&self) -> Self {
        let dlambda = Self::one_form(RationalFunction::one());
        let mut acc = Self::one_form(self.coeff.derivative());
        for _ in 0..self.degree {
            acc = acc.wedge(&dlambda);
        }
        acc
    }
}

/// Element `θ^m ⊗ form` of `Sym H¹ ⊗ Ω•`.
#[derive(Clone, Debug, PartialEq)]
pub struct DgElement {
    pub sym: FiberFormMonomial,
    pub form: BaseFormElement,
}

impl DgElement {
    pub fn degree(&self) -> i32 {
        self.form.degree as i32
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn wedge(&self, other: &Self) -> Self {
        DgElement { sym: self.sym.mul(&other.sym), form: self.form.wedge(&other.form) }
    }

    /// `d[η₁⋯η_k; ω] = Σ_j [η₁⋯(d_λη_j)⋯η_k; dλ∧ω] + [η₁⋯η_k; dω]`.
    pub fn d(&self, gm: &GaussManinMatrix) -> Vec<DgElement> {
        let dlambda = BaseFormElement::one_form(RationalFunction::one());
        let mut out: Vec<DgElement> = gm_derivative(gm, &self.sym)
            .into_iter()
            .map(|(m, c)| DgElement { sym: m, form: dlambda.wedge(&self.form).scaled_by(&c) })
            .collect();
        out.push(DgElement { sym: self.sym, form: self.form.d() });
        out
    }
}

impl BaseFormElement {
    fn scaled_by(&self, f: &RationalFunction) -> Self {
        BaseFormElement { degree: self.degree, coeff: &self.coeff * f }
    }
}

/// Result of the bar differential: a combination of slot sequences in bar degree 1.
#[derive(Clone, Debug, Default)]
pub struct BarCochain {
    pub terms: Vec<(Vec<DgElement>, GaussianRational)>,
    /// Number of terms produced before dropping the vanishing ones.
    pub generated: usize,
}

impl BarCochain {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Bar differential
/// `d[a₁|…|a_r] = Σ_i (−1)^{ν_{i−1}+1}[…|da_i|…] + Σ_i (−1)^{ν_i+1}[…|a_i∧a_{i+1}|…]`
/// with `ν_i = p₁+⋯+p_i − i`.
pub fn bar_differential(w: &BarWord, gm: &GaussManinMatrix) -> BarCochain {
    let mut out = BarCochain::default();
    for (slots, coeff) in w.terms() {
        let elems: Vec<DgElement> = slots
            .iter()
            .map(|s| DgElement { sym: s.etas, form: BaseFormElement::from_base(s.omega) })
            .collect();
        let nu = |i: usize| -> i32 { elems[..i].iter().map(|e| e.degree() - 1).sum() };
        let sign = |e: i32| if e.rem_euclid(2) == 0 { coeff.clone() } else { -coeff };

        for i in 0..elems.len() {
            for da in elems[i].d(gm) {
                let mut seq = elems.clone();
                seq[i] = da;
                push(&mut out, seq, sign(nu(i) + 1));
            }
        }
        for i in 0..elems.len().saturating_sub(1) {
            let mut seq = elems[..i].to_vec();
            seq.push(elems[i].wedge(&elems[i + 1]));
            seq.extend_from_slice(&elems[i + 2..]);
            push(&mut out, seq, sign(nu(i + 1) + 1));
        }
    }
    out
}

fn push(out: &mut BarCochain, seq: Vec<DgElement>, coeff: GaussianRational) {
    out.generated += 1;
    if coeff.is_zero() || seq.iter().any(DgElement::is_zero) {
        return;
    }
    out.terms.push((seq, coeff));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barwords::Slot;

    #[test]
    fn empty_word_has_zero_differential() {
        let d = bar_differential(&BarWord::unit(), &GaussManinMatrix::legendre());
        assert!(d.is_zero());
        assert_eq!(d.generated, 0);
    }

    #[test]
    fn single_slot_terms_cancel() {
        let w = BarWord::from_slots(vec![Slot::new(FiberFormMonomial::THETA0, BaseForm::Chi0)]);
        let d = bar_differential(&w, &GaussManinMatrix::legendre());
        // two Leibniz terms plus the dω term were produced, all vanish
        assert_eq!(d.generated, 3);
        assert!(d.is_zero());
    }

    #[test]
    fn wedge_term_vanishes_by_degree() {
        let a = Slot::new(FiberFormMonomial::THETA1, BaseForm::Chi0);
        let b = Slot::plain(BaseForm::Chi1);
        let d = bar_differential(&BarWord::from_slots(vec![a, b]), &GaussManinMatrix::legendre());
        assert!(d.generated >= 4);
        assert!(d.is_zero());
    }

    #[test]
    fn exterior_algebra_basics() {
        let f = BaseFormElement::function(RationalFunction::from_poly(Polynomial::from_ints(&[0, 0, 1])));
        let df = f.d();
        assert_eq!(df.degree, 1);
        assert_eq!(df.coeff, RationalFunction::from_poly(Polynomial::from_ints(&[0, 2])));
        assert!(df.d().is_zero());
        let chi = BaseFormElement::from_base(BaseForm::Chi0);
        assert!(chi.wedge(&BaseFormElement::from_base(BaseForm::Chi1)).is_zero());
    }
}
