//! The pairing `⟨[η⃗₁;ω₁|⋯|η⃗_r;ω_r], [σ⃗₁|⋯|σ⃗_r] ⊗ γ⟩` and the relations it satisfies.

mod cycles;
pub mod suite;

use num_complex::Complex64;

pub use cycles::{cycle_to_json, cycles_from_json, CycleWord};

use crate::barwords::{BarWord, Slot};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::pathcalc::{reg_iterint, Path, WeightedForm};
use crate::periods::HomologyClass;
use crate::report::Report;

/// Finite formal sum `Σ c_k γ_k` of paths sharing their endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalPathCombination {
    pub terms: Vec<(Path, Rational)>,
}

impl FormalPathCombination {
    pub fn new(terms: Vec<(Path, Rational)>) -> Result<Self> {
        if let Some((first, _)) = terms.first() {
            for (p, _) in &terms {
                if (p.start() - first.start()).norm() > 1e-12 || (p.end() - first.end()).norm() > 1e-12 {
                    return Err(Error::InvalidPath("paths of a formal combination must share endpoints".into()));
                }
            }
        }
        Ok(FormalPathCombination { terms })
    }

    /// Expands `(ℓ₁ − 1)(ℓ₂ − 1)⋯(ℓ_m − 1)` for loops based at a common point; the
    /// product `ℓ_iℓ_j` is the loop `ℓ_i` followed by `ℓ_j`.
    pub fn augmentation_power(loops: &[Path]) -> Result<Self> {
        let base = loops
            .first()
            .ok_or_else(|| Error::Domain("need at least one loop".into()))?
            .start();
        for l in loops {
            if !l.is_closed() || (l.start() - base).norm() > 1e-12 {
                return Err(Error::InvalidPath("augmentation factors must be loops at one base point".into()));
            }
        }
        let m = loops.len();
        let mut terms = Vec::with_capacity(1 << m);
        for mask in 0u32..(1 << m) {
            let chosen: Vec<&Path> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| &loops[i]).collect();
            let sign = if (m - chosen.len()).is_multiple_of(2) { 1 } else { -1 };
            let path = match chosen.split_first() {
                None => Path::constant(base)?,
                Some((first, rest)) => rest.iter().try_fold((*first).clone(), |acc, p| acc.concat(p))?,
            };
            terms.push((path, Rational::from_int(sign)));
        }
        Self::new(terms)
    }

    /// Sum of the coefficients (the augmentation).
    pub fn augmentation(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (_, c)| &acc + c)
    }
}

fn check_arity(slots: &[Slot], c: &CycleWord) -> Result<()> {
    let expect: Vec<usize> = slots.iter().map(|s| s.etas.degree() as usize).collect();
    if expect != c.arities() {
        return Err(Error::Arity(format!(
            "bar word slot arities {:?} do not match cycle word arities {:?}",
            expect,
            c.arities()
        )));
    }
    Ok(())
}

/// Whether a slot's integrand has a pole of order ≥ 2 at λ = 0 for this cycle assignment.
///
/// The θ₁-period of any class with a β-component grows like 1/λ at λ = 0, so such a slot
/// contributes power divergences that no logarithmic regularization can remove.
pub fn slot_pole_order_at_zero(slot: &Slot, classes: &[HomologyClass]) -> usize {
    let singular = slot
        .etas
        .factors()
        .into_iter()
        .zip(classes)
        .filter(|(row, class)| *row == 1 && !class.c_beta.is_zero())
        .count();
    singular + usize::from(slot.omega == crate::barwords::BaseForm::Chi0)
}

/// True when some slot has [`slot_pole_order_at_zero`] ≥ 2, i.e. a path ending at λ = 0
/// meets a non-logarithmic divergence.
pub fn power_divergent_at_zero(slots: &[Slot], c: &CycleWord) -> bool {
    slots.iter().zip(&c.slots).any(|(s, cl)| slot_pole_order_at_zero(s, cl) >= 2)
}

/// Weighted forms for one word term against one cycle term. Within a slot the fiber forms
/// are taken as θ₀…θ₀θ₁…θ₁ and matched with the cycle list in order.
fn weighted_forms(slots: &[Slot], c: &CycleWord) -> Vec<WeightedForm> {
    slots
        .iter()
        .zip(&c.slots)
        .map(|(s, classes)| {
            let factors = s.etas.factors().into_iter().zip(classes.iter().cloned()).collect();
            WeightedForm::periods(s.omega, factors)
        })
        .collect()
}

/// Pairing of one word term (coefficient excluded) with one cycle term (coefficient excluded).
pub fn pair_term(slots: &[Slot], c: &CycleWord, path: &Path, cfg: &Config) -> Result<Complex64> {
    check_arity(slots, c)?;
    reg_iterint(path, &weighted_forms(slots, c), cfg)
}

/// `⟨w, c ⊗ γ⟩`, bilinear in the terms of `w` and of the formal combination `c`.
///
/// Every term of `w` must have the slot arities of every cycle term. Cuspidal paths are
/// evaluated by regularization.
pub fn pair(w: &BarWord, c: &[CycleWord], path: &Path, cfg: &Config) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (slots, cw) in w.terms() {
        for ct in c {
            let k = (cw * &ct.coeff).to_complex();
            acc += k * pair_term(slots, ct, path, cfg)?;
        }
    }
    Ok(acc)
}

/// `⟨w, c ⊗ Σ c_k γ_k⟩ = Σ c_k ⟨w, c ⊗ γ_k⟩`.
pub fn pair_combination(w: &BarWord, c: &[CycleWord], combo: &FormalPathCombination, cfg: &Config) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (p, k) in &combo.terms {
        acc += k.to_f64() * pair(w, c, p, cfg)?;
    }
    Ok(acc)
}

/// Shuffles two (word, cycle) terms together: slots and cycle slots move as one.
fn shuffle_pairs(s1: &[Slot], c1: &CycleWord, s2: &[Slot], c2: &CycleWord) -> Vec<(Vec<Slot>, CycleWord)> {
    // tag each slot with its position so the cycle slots can follow
    let tagged = |s: &[Slot], offset: usize| -> Vec<(usize, Slot)> { s.iter().cloned().enumerate().map(|(i, x)| (i + offset, x)).collect() };
    let left = tagged(s1, 0);
    let right = tagged(s2, s1.len());
    let all_cycles: Vec<&Vec<_>> = c1.slots.iter().chain(&c2.slots).collect();
    let coeff = &c1.coeff * &c2.coeff;
    interleavings(left.len(), right.len())
        .into_iter()
        .map(|mask| {
            let (mut i, mut j) = (0, 0);
            let mut slots = Vec::with_capacity(mask.len());
            let mut cyc = Vec::with_capacity(mask.len());
            for take_left in mask {
                let (pos, slot) = if take_left {
                    i += 1;
                    left[i - 1]
                } else {
                    j += 1;
                    right[j - 1]
                };
                slots.push(slot);
                cyc.push(all_cycles[pos].clone());
            }
            (slots, CycleWord::with_coeff(cyc, coeff.clone()))
        })
        .collect()
}

/// All (r, s)-shuffles as sequences of "take from the left word" flags.
fn interleavings(r: usize, s: usize) -> Vec<Vec<bool>> {
    if r == 0 {
        return vec![vec![false; s]];
    }
    if s == 0 {
        return vec![vec![true; r]];
    }
    let mut out = Vec::new();
    for mut rest in interleavings(r - 1, s) {
        rest.insert(0, true);
        out.push(rest);
    }
    for mut rest in interleavings(r, s - 1) {
        rest.insert(0, false);
        out.push(rest);
    }
    out
}

/// Product of two pairings on `dch` against the sum over shuffles of slots and cycle slots.
pub fn verify_shuffle_rel(w1: &BarWord, w2: &BarWord, c1: &[CycleWord], c2: &[CycleWord], tol: f64, cfg: &Config) -> Result<Report> {
    let dch = Path::dch();
    let lhs = pair(w1, c1, &dch, cfg)? * pair(w2, c2, &dch, cfg)?;
    let mut rhs = Complex64::new(0.0, 0.0);
    for (s1, k1) in w1.terms() {
        for (s2, k2) in w2.terms() {
            let k = (k1 * k2).to_complex();
            for a in c1 {
                for b in c2 {
                    check_arity(s1, a)?;
                    check_arity(s2, b)?;
                    for (slots, cyc) in shuffle_pairs(s1, a, s2, b) {
                        rhs += k * cyc.coeff.to_complex() * pair_term(&slots, &cyc, &dch, cfg)?;
                    }
                }
            }
        }
    }
    Ok(Report::new("shuffle_rel", lhs, rhs, tol))
}

/// `⟨w, c ⊗ dch⟩` against `⟨reversed w, c′ ⊗ dch⟩`; with `substitute_forms` the reversed
/// word also has χ₀ and χ₁ exchanged.
pub fn verify_dual_rel(w: &BarWord, c: &[CycleWord], tol: f64, substitute_forms: bool, cfg: &Config) -> Result<Report> {
    let dch = Path::dch();
    let lhs = pair(w, c, &dch, cfg)?;
    let mut reversed = BarWord::zero();
    for (slots, k) in w.terms() {
        let rev: Vec<Slot> = slots
            .iter()
            .rev()
            .map(|s| if substitute_forms { Slot::new(s.etas, s.omega.swapped()) } else { *s })
            .collect();
        reversed.add_term(rev, k.clone());
    }
    let duals: Vec<CycleWord> = c.iter().map(CycleWord::dual).collect();
    let rhs = pair(&reversed, &duals, &dch, cfg)?;
    let name = if substitute_forms { "dual_rel(substituted)" } else { "dual_rel(verbatim)" };
    Ok(Report::new(name, lhs, rhs, tol))
}

/// Pairs `w` against the formal combination `J_power` and compares with 0.
pub fn verify_augmentation_vanishing(w: &BarWord, c: &[CycleWord], j_power: &FormalPathCombination, tol: f64, cfg: &Config) -> Result<Report> {
    let lhs = pair_combination(w, c, j_power, cfg)?;
    Ok(Report::new("augmentation", lhs, Complex64::new(0.0, 0.0), tol))
}

/// Right side of the composition law `Σ_i ⟨w_{≤i}, σ_{≤i} ⊗ γ₀⟩⟨w_{>i}, σ_{>i} ⊗ γ₁⟩`
/// for a single word term and cycle term.
pub fn pair_split(slots: &[Slot], c: &CycleWord, first: &Path, second: &Path, cfg: &Config) -> Result<Complex64> {
    check_arity(slots, c)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=slots.len() {
        let a = pair_term(&slots[..i], &c.sub(0..i), first, cfg)?;
        let b = pair_term(&slots[i..], &c.sub(i..slots.len()), second, cfg)?;
        acc += a * b;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interleaving_counts() {
        assert_eq!(interleavings(2, 2).len(), 6);
        assert_eq!(interleavings(0, 3).len(), 1);
        assert_eq!(interleavings(3, 1).len(), 4);
    }

    #[test]
    fn augmentation_power_expansion() {
        let l0 = crate::periods::loop_around_zero();
        let l1 = crate::periods::loop_around_one();
        let combo = FormalPathCombination::augmentation_power(&[l0, l1]).unwrap();
        assert_eq!(combo.terms.len(), 4);
        assert!(combo.augmentation().is_zero());
    }
}
