//! Bar words over `Sym^{≤M} H¹ ⊗ Ω•` of the Legendre family and their Hopf algebra.

mod differential;
mod gm;
mod hopf;
mod json;
mod word;

pub use differential::{bar_differential, BarCochain, BaseFormElement, DgElement};
pub use gm::{gm_derivative, GaussManinMatrix};
pub use hopf::{shuffle_slots, BarTensor};
pub use json::{word_from_json, word_to_json};
pub use word::{BarWord, BaseForm, FiberFormMonomial, Slot};
