use rand::Rng;

use serde_json::{json, Value};

use super::{cycle_to_json, power_divergent_at_zero, verify_dual_rel, CycleWord, FormalPathCombination};
use crate::barwords::{word_to_json, BarWord, BaseForm, FiberFormMonomial, Slot};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::periods::{loop_around_one, loop_around_zero, HomologyClass};
use crate::report::{json_complex, json_f64};

/// Random slot with Sym degree ≤ `max_degree`, each fiber factor paired with α or β.
pub fn random_slot<R: Rng>(rng: &mut R, max_degree: u32) -> (Slot, Vec<HomologyClass>) {
    let deg = rng.gen_range(0..=max_degree);
    let e0 = rng.gen_range(0..=deg);
    let omega = if rng.gen_bool(0.5) { BaseForm::Chi0 } else { BaseForm::Chi1 };
    let classes = (0..deg)
        .map(|_| if rng.gen_bool(0.5) { HomologyClass::alpha() } else { HomologyClass::beta() })
        .collect();
    (Slot::new(FiberFormMonomial::new(e0, deg - e0), omega), classes)
}

/// Random monomial word of length in `1..=max_len` together with a matching cycle word.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize, max_degree: u32) -> (BarWord, CycleWord) {
    let len = rng.gen_range(1..=max_len);
    let (slots, cycles): (Vec<_>, Vec<_>) = (0..len).map(|_| random_slot(rng, max_degree)).unzip();
    (BarWord::from_slots(slots), CycleWord::new(cycles))
}

/// Whether pairing `w` with `c` on a path touching λ = 0 meets a power divergence.
pub fn is_power_divergent(w: &BarWord, c: &CycleWord) -> bool {
    w.terms().any(|(slots, _)| power_divergent_at_zero(slots, c))
}

/// Every assignment of α or β to the fiber factors of `slots`, in a fixed order.
pub fn cycle_assignments(slots: &[Slot]) -> Vec<CycleWord> {
    let arities: Vec<usize> = slots.iter().map(|s| s.etas.degree() as usize).collect();
    let total: usize = arities.iter().sum();
    (0..1usize << total)
        .map(|mask| {
            let mut bit = 0;
            let cycles = arities
                .iter()
                .map(|&n| {
                    (0..n)
                        .map(|_| {
                            bit += 1;
                            if (mask >> (bit - 1)) & 1 == 0 {
                                HomologyClass::alpha()
                            } else {
                                HomologyClass::beta()
                            }
                        })
                        .collect()
                })
                .collect();
            CycleWord::new(cycles)
        })
        .collect()
}

/// The empty word and every single slot of Sym degree ≤ `max_degree`, each with every
/// cycle assignment.
pub fn words_up_to_length_one(max_degree: u32) -> Vec<(BarWord, CycleWord)> {
    let mut slot_lists = vec![vec![]];
    for e0 in 0..=max_degree {
        for e1 in 0..=max_degree - e0 {
            for omega in [BaseForm::Chi0, BaseForm::Chi1] {
                slot_lists.push(vec![Slot::new(FiberFormMonomial::new(e0, e1), omega)]);
            }
        }
    }
    slot_lists
        .into_iter()
        .flat_map(|slots| {
            cycle_assignments(&slots).into_iter().map(move |c| (BarWord::from_slots(slots.clone()), c))
        })
        .collect()
}

/// `[η;χ₁|;χ₀|…|;χ₀]` of length `r` with `η` paired with α: the words of the worked example.
pub fn theta_example(etas: FiberFormMonomial, r: usize) -> (BarWord, CycleWord) {
    let mut slots = vec![Slot::new(etas, BaseForm::Chi1)];
    slots.extend((1..r).map(|_| Slot::plain(BaseForm::Chi0)));
    let mut cycles = vec![vec![HomologyClass::alpha(); etas.degree() as usize]];
    cycles.extend((1..r).map(|_| Vec::new()));
    (BarWord::from_slots(slots), CycleWord::new(cycles))
}

/// Length-two spot check of the augmentation property: `[θ₀;χ₁|;χ₀]` with `[β|∅]` against
/// `(ℓ₀−1)(ℓ₁−1)(ℓ₀−1)`, all loops based at ½.
pub fn augmentation_spot_case() -> Result<(BarWord, CycleWord, FormalPathCombination)> {
    let (w, _) = theta_example(FiberFormMonomial::THETA0, 2);
    let c = CycleWord::new(vec![vec![HomologyClass::beta()], vec![]]);
    let l0 = loop_around_zero();
    let j3 = FormalPathCombination::augmentation_power(&[l0.clone(), loop_around_one(), l0])?;
    Ok((w, c, j3))
}

/// The fixed word/cycle cases of the dual-relation report.
pub fn dual_cases() -> Vec<(BarWord, CycleWord)> {
    vec![
        (BarWord::plain(&[BaseForm::Chi1, BaseForm::Chi0]), CycleWord::empty_slots(2)),
        (BarWord::plain(&[BaseForm::Chi1, BaseForm::Chi0, BaseForm::Chi0]), CycleWord::empty_slots(3)),
        theta_example(FiberFormMonomial::THETA0, 2),
        theta_example(FiberFormMonomial::THETA0, 3),
        theta_example(FiberFormMonomial::THETA1, 2),
    ]
}

/// Both sides of the dual relation for [`dual_cases`], with and without exchanging χ₀ and
/// χ₁, recording which variants balance to `tol`. Evaluation failures are recorded too.
pub fn dual_report(tol: f64, cfg: &Config) -> Value {
    let cases: Vec<Value> = dual_cases()
        .iter()
        .map(|(w, c)| {
            let mut variants = serde_json::Map::new();
            let mut balancing = Vec::new();
            for (key, flag) in [("substituted", true), ("verbatim", false)] {
                let v = match verify_dual_rel(w, std::slice::from_ref(c), tol, flag, cfg) {
                    Ok(r) => {
                        if r.pass {
                            balancing.push(key);
                        }
                        json!({
                            "lhs": json_complex(r.lhs),
                            "rhs": json_complex(r.rhs),
                            "abs_err": json_f64(r.abs_err),
                            "balances": r.pass,
                        })
                    }
                    Err(e) => json!({ "error": error_summary(&e), "balances": false }),
                };
                variants.insert(key.to_string(), v);
            }
            json!({
                "word": word_to_json(w),
                "cycles": cycle_to_json(c),
                "substituted": variants["substituted"],
                "verbatim": variants["verbatim"],
                "balancing_variants": balancing,
            })
        })
        .collect();
    json!({ "tolerance": json_f64(tol), "cases": cases })
}

/// Error text without the sample dump of a failed regularization.
fn error_summary(e: &Error) -> String {
    match e {
        Error::Regularization { .. } => "regularization failed: no logarithmic development at a puncture".into(),
        other => other.to_string(),
    }
}
