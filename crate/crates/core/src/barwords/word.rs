use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::GaussianRational;

/// Monomial θ₀^{e0}·θ₁^{e1} in the fiber cohomology basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FiberFormMonomial {
    pub e0: u32,
    pub e1: u32,
}

impl FiberFormMonomial {
    pub const ONE: FiberFormMonomial = FiberFormMonomial { e0: 0, e1: 0 };
    pub const THETA0: FiberFormMonomial = FiberFormMonomial { e0: 1, e1: 0 };
    pub const THETA1: FiberFormMonomial = FiberFormMonomial { e0: 0, e1: 1 };

    pub fn new(e0: u32, e1: u32) -> Self {
        FiberFormMonomial { e0, e1 }
    }

    /// Checked constructor enforcing the symmetric-power cutoff `M`.
    pub fn with_cutoff(e0: u32, e1: u32, sym_cutoff: u32) -> Result<Self> {
        let m = FiberFormMonomial { e0, e1 };
        m.check(sym_cutoff)?;
        Ok(m)
    }

    pub fn degree(&self) -> u32 {
        self.e0 + self.e1
    }

    pub fn check(&self, sym_cutoff: u32) -> Result<()> {
        if self.degree() > sym_cutoff {
            return Err(Error::SymOverflow { degree: self.degree(), cutoff: sym_cutoff });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Self {
        FiberFormMonomial { e0: self.e0 + other.e0, e1: self.e1 + other.e1 }
    }

    /// Factor list in canonical order: all θ₀ factors, then all θ₁ factors.
    /// Entry `0` stands for θ₀ and `1` for θ₁.
    pub fn factors(&self) -> Vec<usize> {
        std::iter::repeat_n(0, self.e0 as usize)
            .chain(std::iter::repeat_n(1, self.e1 as usize))
            .collect()
    }
}

impl fmt::Display for FiberFormMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("θ0", self.e0), ("θ1", self.e1)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        write!(f, "{}", parts.join(""))
    }
}

/// Basis 1-forms on the base: χ₀ = dλ/λ and χ₁ = dλ/(1−λ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseForm {
    Chi0,
    Chi1,
}

impl BaseForm {
    pub fn name(&self) -> &'static str {
        match self {
            BaseForm::Chi0 => "chi0",
            BaseForm::Chi1 => "chi1",
        }
    }

    /// The form swapped under λ ↦ 1 − λ (up to sign).
    pub fn swapped(&self) -> Self {
        match self {
            BaseForm::Chi0 => BaseForm::Chi1,
            BaseForm::Chi1 => BaseForm::Chi0,
        }
    }
}

/// One bar slot `[η⃗; ω]`, with η⃗ stored as its product monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub etas: FiberFormMonomial,
    pub omega: BaseForm,
}

impl Slot {
    pub fn new(etas: FiberFormMonomial, omega: BaseForm) -> Self {
        Slot { etas, omega }
    }

    pub fn plain(omega: BaseForm) -> Self {
        Slot { etas: FiberFormMonomial::ONE, omega }
    }

    /// Bar degree of the slot after the shift by one: a 1-form slot has degree 0.
    pub fn shifted_degree(&self) -> i32 {
        0
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.omega {
            BaseForm::Chi0 => "χ0",
            BaseForm::Chi1 => "χ1",
        };
        write!(f, "{};{}", self.etas, w)
    }
}

/// Formal ℚ(i)-combination of slot sequences.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BarWord {
    terms: BTreeMap<Vec<Slot>, GaussianRational>,
}

impl BarWord {
    pub fn zero() -> Self {
        BarWord::default()
    }

    /// The empty word `[]`, unit of the shuffle product.
    pub fn unit() -> Self {
        Self::from_slots(Vec::new())
    }

    pub fn from_slots(slots: Vec<Slot>) -> Self {
        Self::monomial(slots, GaussianRational::one())
    }

    pub fn monomial(slots: Vec<Slot>, coeff: GaussianRational) -> Self {
        let mut w = BarWord::zero();
        w.add_term(slots, coeff);
        w
    }

    /// Word of plain forms (every η⃗ empty).
    pub fn plain(omegas: &[BaseForm]) -> Self {
        Self::from_slots(omegas.iter().map(|&o| Slot::plain(o)).collect())
    }

    pub fn add_term(&mut self, slots: Vec<Slot>, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Slot>, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, slots: &[Slot]) -> GaussianRational {
        self.terms.get(slots).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Length of the longest term (0 for the zero word).
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(len)` when every term has the same length.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Vec::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    /// Membership in the length filtration piece `L^{−N}`.
    pub fn check_length(&self, cutoff: usize) -> Result<()> {
        let len = self.max_length();
        if len > cutoff {
            return Err(Error::LengthOverflow { len, cutoff });
        }
        Ok(())
    }

    pub fn check_sym(&self, sym_cutoff: u32) -> Result<()> {
        self.terms.keys().flatten().try_for_each(|s| s.etas.check(sym_cutoff))
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        let mut w = BarWord::zero();
        for (s, c) in &self.terms {
            w.add_term(s.clone(), c * k);
        }
        w
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for (s, c) in &other.terms {
            w.add_term(s.clone(), c.clone());
        }
        w
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    /// Coefficient of the empty word.
    pub fn counit(&self) -> GaussianRational {
        self.coeff_of(&[])
    }
}

impl fmt::Display for BarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(slots, c)| {
                let body: Vec<String> = slots.iter().map(Slot::to_string).collect();
                format!("({c})[{}]", body.join("|"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
