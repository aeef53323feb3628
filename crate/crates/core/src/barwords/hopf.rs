use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{BarWord, Slot};
use crate::error::Result;
use crate::exactalg::GaussianRational;

/// Formal sum of `u ⊗ v` with `u`, `v` slot sequences.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BarTensor {
    terms: BTreeMap<(Vec<Slot>, Vec<Slot>), GaussianRational>,
}

impl BarTensor {
    pub fn add_term(&mut self, left: Vec<Slot>, right: Vec<Slot>, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<Slot>, Vec<Slot>), &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Componentwise shuffle `(a⊗b)⧢(c⊗d) = (a⧢c)⊗(b⧢d)`.
    pub fn shuffle(&self, other: &BarTensor) -> BarTensor {
        let mut out = BarTensor::default();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let coeff = x * y;
                for (left, s1) in shuffle_slots(a, c) {
                    for (right, s2) in shuffle_slots(b, d) {
                        let sign = s1 * s2;
                        let k = if sign > 0 { coeff.clone() } else { -&coeff };
                        out.add_term(left.clone(), right, k);
                    }
                }
            }
        }
        out
    }

    /// Applies a linear map to the left tensor factor.
    pub fn map_left(&self, f: impl Fn(&BarWord) -> BarWord) -> BarTensor {
        let mut out = BarTensor::default();
        for ((a, b), x) in &self.terms {
            for (s, c) in f(&BarWord::from_slots(a.clone())).terms() {
                out.add_term(s.clone(), b.clone(), c * x);
            }
        }
        out
    }

    /// Multiplies the two factors with the shuffle product.
    pub fn multiply(&self) -> BarWord {
        let mut out = BarWord::zero();
        for ((a, b), x) in &self.terms {
            for (s, sign) in shuffle_slots(a, b) {
                out.add_term(s, if sign > 0 { x.clone() } else { -x });
            }
        }
        out
    }
}

/// Koszul sign of moving `b` past `a` for shifted degrees.
fn koszul(a: &Slot, b: &Slot) -> i32 {
    if (a.shifted_degree() * b.shifted_degree()) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All (r,s)-shuffles of two slot sequences with their signs ε(σ).
///
/// A slot carrying a 1-form has shifted bar degree 0 in the degree-0 part of the bar
/// complex, so every sign here is +1; the general rule is still applied.
pub fn shuffle_slots(u: &[Slot], v: &[Slot]) -> Vec<(Vec<Slot>, i32)> {
    fn rec(u: &[Slot], v: &[Slot], prefix: &mut Vec<Slot>, sign: i32, out: &mut Vec<(Vec<Slot>, i32)>) {
        if u.is_empty() || v.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            out.push((w, sign));
            return;
        }
        prefix.push(u[0]);
        rec(&u[1..], v, prefix, sign, out);
        prefix.pop();
        // v[0] jumps over all remaining slots of u
        let s = u.iter().fold(sign, |acc, a| acc * koszul(a, &v[0]));
        prefix.push(v[0]);
        rec(u, &v[1..], prefix, s, out);
        prefix.pop();
    }
    let mut out = Vec::new();
    rec(u, v, &mut Vec::with_capacity(u.len() + v.len()), 1, &mut out);
    out
}

impl BarWord {
    /// Shuffle product; fails when a product term leaves `L^{−N}`.
    pub fn shuffle(&self, other: &BarWord, length_cutoff: usize) -> Result<BarWord> {
        let len = self.max_length() + other.max_length();
        if !self.is_zero() && !other.is_zero() && len > length_cutoff {
            return Err(crate::Error::LengthOverflow { len, cutoff: length_cutoff });
        }
        let mut out = BarWord::zero();
        for (u, x) in self.terms() {
            for (v, y) in other.terms() {
                let coeff = x * y;
                for (w, sign) in shuffle_slots(u, v) {
                    out.add_term(w, if sign > 0 { coeff.clone() } else { -&coeff });
                }
            }
        }
        Ok(out)
    }

    /// Deconcatenation coproduct `Δ[a₁|…|a_r] = Σ_i [a₁|…|a_i] ⊗ [a_{i+1}|…|a_r]`.
    pub fn coproduct(&self) -> BarTensor {
        let mut out = BarTensor::default();
        for (w, c) in self.terms() {
            for i in 0..=w.len() {
                out.add_term(w[..i].to_vec(), w[i..].to_vec(), c.clone());
            }
        }
        out
    }

    /// Antipode `S[a₁|…|a_r] = (−1)^r ε(τ_r) [a_r|…|a₁]`.
    pub fn antipode(&self) -> BarWord {
        let mut out = BarWord::zero();
        for (w, c) in self.terms() {
            let mut rev = w.clone();
            rev.reverse();
            // ε(τ_r): reversal as a product of adjacent transpositions
            let mut eps = 1;
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    eps *= koszul(&w[i], &w[j]);
                }
            }
            let sign = if w.len() % 2 == 0 { eps } else { -eps };
            out.add_term(rev, if sign > 0 { c.clone() } else { -c });
        }
        out
    }
}
