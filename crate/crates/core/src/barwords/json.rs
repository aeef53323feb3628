use serde::{Deserialize, Serialize};

use super::{BarWord, BaseForm, FiberFormMonomial, Slot};
use crate::error::{Error, Result};
use crate::exactalg::GaussianRational;

#[derive(Serialize, Deserialize)]
struct WordJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    slots: Vec<SlotJson>,
}

#[derive(Serialize, Deserialize)]
struct SlotJson {
    etas: EtasJson,
    omega: String,
}

#[derive(Serialize, Deserialize)]
struct EtasJson {
    theta0: u32,
    theta1: u32,
}

/// Serializes a word as
/// `{"terms":[{"coeff":"1/1+0/1*i","slots":[{"etas":{"theta0":1,"theta1":0},"omega":"chi1"}]}]}`.
pub fn word_to_json(w: &BarWord) -> serde_json::Value {
    let doc = WordJson {
        terms: w
            .terms()
            .map(|(slots, c)| TermJson {
                coeff: c.to_string(),
                slots: slots
                    .iter()
                    .map(|s| SlotJson {
                        etas: EtasJson { theta0: s.etas.e0, theta1: s.etas.e1 },
                        omega: s.omega.name().to_string(),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("plain data serializes")
}

pub fn word_from_json(text: &str) -> Result<BarWord> {
    let doc: WordJson = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("bar word, line {}: {e}", e.line())))?;
    let mut w = BarWord::zero();
    for (k, t) in doc.terms.into_iter().enumerate() {
        let coeff: GaussianRational = t
            .coeff
            .parse()
            .map_err(|e| Error::Parse(format!("bar word term {k}: {e}")))?;
        let slots = t
            .slots
            .into_iter()
            .map(|s| {
                let omega = match s.omega.as_str() {
                    "chi0" => BaseForm::Chi0,
                    "chi1" => BaseForm::Chi1,
                    other => return Err(Error::Parse(format!("bar word term {k}: unknown form `{other}`"))),
                };
                Ok(Slot::new(FiberFormMonomial::new(s.etas.theta0, s.etas.theta1), omega))
            })
            .collect::<Result<Vec<_>>>()?;
        w.add_term(slots, coeff);
    }
    Ok(w)
}
