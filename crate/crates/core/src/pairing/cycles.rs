use std::fmt;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{GaussianRational, Rational};
use crate::periods::HomologyClass;

/// `c·[σ⃗₁|⋯|σ⃗_r]`: one list of fiber classes per slot.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleWord {
    pub slots: Vec<Vec<HomologyClass>>,
    pub coeff: GaussianRational,
}

impl CycleWord {
    pub fn new(slots: Vec<Vec<HomologyClass>>) -> Self {
        CycleWord { slots, coeff: GaussianRational::one() }
    }

    pub fn with_coeff(slots: Vec<Vec<HomologyClass>>, coeff: GaussianRational) -> Self {
        CycleWord { slots, coeff }
    }

    /// `[∅|⋯|∅]` of length `r`.
    pub fn empty_slots(r: usize) -> Self {
        Self::new(vec![Vec::new(); r])
    }

    pub fn arities(&self) -> Vec<usize> {
        self.slots.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Slots `range` with the same coefficient.
    pub fn sub(&self, range: std::ops::Range<usize>) -> Self {
        CycleWord { slots: self.slots[range].to_vec(), coeff: self.coeff.clone() }
    }

    /// Reversed slot order with `α ↦ −√−1·β`, `β ↦ √−1·α` applied to every class.
    pub fn dual(&self) -> Self {
        let mut coeff = self.coeff.clone();
        let mut slots = Vec::with_capacity(self.slots.len());
        for slot in self.slots.iter().rev() {
            let mut out = Vec::with_capacity(slot.len());
            for c in slot {
                // a·α + b·β ↦ √−1·(b·α − a·β)
                coeff = &coeff * &GaussianRational::i();
                out.push(HomologyClass::new(c.c_beta.clone(), -&c.c_alpha));
            }
            slots.push(out);
        }
        CycleWord { slots, coeff }
    }
}

impl fmt::Display for CycleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<String> = self
            .slots
            .iter()
            .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "({})·[{}]", self.coeff, slots.join("|"))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ClassJson {
    Name(String),
    Coeffs { alpha: String, beta: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CycleJson {
    slots: Vec<Vec<ClassJson>>,
    #[serde(default)]
    coeff: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CycleDoc {
    One(CycleJson),
    Many(Vec<CycleJson>),
}

fn parse_class(c: ClassJson) -> Result<HomologyClass> {
    match c {
        ClassJson::Name(n) => match n.trim() {
            "alpha" => Ok(HomologyClass::alpha()),
            "beta" => Ok(HomologyClass::beta()),
            "-alpha" => Ok(HomologyClass::new(Rational::from_int(-1), Rational::zero())),
            "-beta" => Ok(HomologyClass::new(Rational::zero(), Rational::from_int(-1))),
            other => Err(Error::Parse(format!("unknown cycle `{other}` (expected alpha, beta, -alpha, -beta)"))),
        },
        ClassJson::Coeffs { alpha, beta } => Ok(HomologyClass::new(alpha.parse()?, beta.parse()?)),
    }
}

/// Parses one cycle word or an array of them (a formal combination).
pub fn cycles_from_json(text: &str) -> Result<Vec<CycleWord>> {
    let doc: CycleDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("cycle word, line {}: {e}", e.line())))?;
    let raw = match doc {
        CycleDoc::One(c) => vec![c],
        CycleDoc::Many(v) => v,
    };
    raw.into_iter()
        .map(|c| {
            let coeff = match c.coeff {
                Some(s) => s.parse()?,
                None => GaussianRational::one(),
            };
            let slots = c
                .slots
                .into_iter()
                .map(|s| s.into_iter().map(parse_class).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(CycleWord { slots, coeff })
        })
        .collect()
}

pub fn cycle_to_json(c: &CycleWord) -> Value {
    let class = |h: &HomologyClass| -> Value {
        if *h == HomologyClass::alpha() {
            json!("alpha")
        } else if *h == HomologyClass::beta() {
            json!("beta")
        } else {
            json!({"alpha": h.c_alpha.to_string(), "beta": h.c_beta.to_string()})
        }
    };
    json!({
        "slots": c.slots.iter().map(|s| s.iter().map(class).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "coeff": c.coeff.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_and_list() {
        let one = cycles_from_json(r#"{"slots":[["alpha"],[]], "coeff":"1/1+0/1*i"}"#).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].arities(), vec![1, 0]);
        let many = cycles_from_json(r#"[{"slots":[["beta"]]},{"slots":[[{"alpha":"2","beta":"-1/3"}]],"coeff":"-1"}]"#).unwrap();
        assert_eq!(many.len(), 2);
        assert_eq!(many[1].slots[0][0].c_beta, Rational::new(-1, 3).unwrap());
        assert!(cycles_from_json(r#"{"slots":[["gamma"]]}"#).is_err());
    }

    #[test]
    fn roundtrip() {
        let c = CycleWord::with_coeff(
            vec![vec![HomologyClass::alpha(), HomologyClass::new(Rational::from_int(2), Rational::one())], vec![]],
            GaussianRational::i(),
        );
        let back = cycles_from_json(&cycle_to_json(&c).to_string()).unwrap();
        assert_eq!(back, vec![c]);
    }

    #[test]
    fn dual_of_alpha() {
        let c = CycleWord::new(vec![vec![HomologyClass::alpha()], vec![]]);
        let d = c.dual();
        assert_eq!(d.arities(), vec![0, 1]);
        // α′ = −√−1·β
        assert_eq!(d.coeff, GaussianRational::i());
        assert_eq!(d.slots[1][0], HomologyClass::new(Rational::zero(), Rational::from_int(-1)));
    }
}
