use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::barwords::BaseForm;
use crate::periods::{HomologyClass, Mat2};

pub type WeightFn = Arc<dyn Fn(f64, Complex64) -> Complex64 + Send + Sync>;

/// Coefficient function multiplying a base form along a path.
#[derive(Clone)]
pub enum Weight {
    One,
    /// `∏ ∫_{σ̃} θ_row` over the listed (row, class) pairs, with cycles lifted by transport.
    Periods(Vec<(usize, HomologyClass)>),
    /// Any function of `(t, λ)`.
    Function(WeightFn),
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::One => write!(f, "One"),
            Weight::Periods(p) => f.debug_tuple("Periods").field(p).finish(),
            Weight::Function(_) => write!(f, "Function(..)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WeightedForm {
    pub omega: BaseForm,
    pub weight: Weight,
}

impl WeightedForm {
    pub fn plain(omega: BaseForm) -> Self {
        WeightedForm { omega, weight: Weight::One }
    }

    pub fn periods(omega: BaseForm, factors: Vec<(usize, HomologyClass)>) -> Self {
        WeightedForm { omega, weight: Weight::Periods(factors) }
    }

    pub fn function(omega: BaseForm, f: impl Fn(f64, Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        WeightedForm { omega, weight: Weight::Function(Arc::new(f)) }
    }

    pub fn needs_frame(&self) -> bool {
        matches!(&self.weight, Weight::Periods(p) if !p.is_empty())
    }

    /// Number of period factors; each may contribute a logarithm at a degenerate fiber.
    pub fn period_degree(&self) -> usize {
        match &self.weight {
            Weight::Periods(p) => p.len(),
            _ => 0,
        }
    }

    /// Whether `omega` has a pole at the puncture `p ∈ {0, 1}`.
    pub fn has_pole_at(&self, p: Complex64) -> bool {
        match self.omega {
            BaseForm::Chi0 => p.norm() < 0.5,
            BaseForm::Chi1 => (p - 1.0).norm() < 0.5,
        }
    }

    pub(crate) fn weight_value(&self, t: f64, lambda: Complex64, frame: Option<&Mat2>) -> Complex64 {
        match &self.weight {
            Weight::One => Complex64::new(1.0, 0.0),
            Weight::Periods(factors) if factors.is_empty() => Complex64::new(1.0, 0.0),
            Weight::Periods(factors) => {
                let m = frame.expect("period weights need a frame");
                factors.iter().fold(Complex64::new(1.0, 0.0), |acc, (row, class)| {
                    let c = class.to_complex();
                    acc * (m[*row][0] * c[0] + m[*row][1] * c[1])
                })
            }
            Weight::Function(f) => f(t, lambda),
        }
    }
}
