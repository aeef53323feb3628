//! Multiple zeta values by nested series and by regularized iterated integrals on `dch`.

use std::fmt;
use std::str::FromStr;

use crate::barwords::{BarWord, BaseForm};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::pathcalc::{reg_iterint, Path, WeightedForm};

/// Series truncation point of the outermost sum.
pub const SERIES_TERMS: u64 = 1_000_000;

/// Smallest tolerance the truncated series is trusted for.
pub const MIN_SERIES_TOL: f64 = 1e-12;

/// Index `(k₁, …, k_d)` of `ζ(k₁, …, k_d) = Σ_{0<n₁<⋯<n_d} n₁^{−k₁}⋯n_d^{−k_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MzvIndex {
    k: Vec<u32>,
}

impl MzvIndex {
    pub fn new(k: Vec<u32>) -> Result<Self> {
        if k.is_empty() || k.contains(&0) {
            return Err(Error::Domain(format!("MZV index entries must be positive integers, got {k:?}")));
        }
        Ok(MzvIndex { k })
    }

    pub fn entries(&self) -> &[u32] {
        &self.k
    }

    pub fn weight(&self) -> u32 {
        self.k.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.k.len()
    }

    pub fn is_convergent(&self) -> bool {
        *self.k.last().expect("nonempty") >= 2
    }

    /// All convergent indices of weight `w`.
    pub fn convergent_of_weight(w: u32) -> Vec<MzvIndex> {
        fn compositions(n: u32) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=n {
                for mut rest in compositions(n - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        compositions(w)
            .into_iter()
            .filter(|k| k.last().is_some_and(|&l| l >= 2))
            .map(|k| MzvIndex { k })
            .collect()
    }
}

impl fmt::Display for MzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.k.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for MzvIndex {
    type Err = Error;

    /// Comma-separated positive integers, e.g. `1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let k = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("invalid MZV index entry `{p}`"))))
            .collect::<Result<Vec<_>>>()?;
        MzvIndex::new(k)
    }
}

/// `Σ_{n>N} n^{−k}` by Euler–Maclaurin.
fn power_tail(n: f64, k: u32) -> f64 {
    let kf = k as f64;
    n.powf(1.0 - kf) / (kf - 1.0) - 0.5 * n.powf(-kf) + kf / 12.0 * n.powf(-kf - 1.0)
}

/// Nested partial sums to `n_d ≤ N` plus a tail correction for the outer index.
///
/// Inner sums that grow like powers of `log n` (runs of 1's just below `k_d`) enter the
/// tail through `∫_N^∞ x^{−k} log^j(x/N)/j! dx = N^{1−k}/(k−1)^{j+1}`.
pub fn mzv_series(k: &MzvIndex, tol: f64) -> Result<f64> {
    if !k.is_convergent() {
        return Err(Error::Domain(format!("ζ({k}) diverges: the last index entry must be at least 2")));
    }
    if tol < MIN_SERIES_TOL {
        return Err(Error::Precision(format!("series truncated at {SERIES_TERMS} terms cannot reach {tol:e}")));
    }
    Ok(mzv_series_terms(k, SERIES_TERMS))
}

/// [`mzv_series`] with the outer sum truncated at `n_terms` before the tail correction.
pub fn mzv_series_terms(k: &MzvIndex, n_terms: u64) -> f64 {
    let d = k.depth();
    let ks = k.entries();
    // s[i] = Σ over n₁<⋯<n_i ≤ n of the first i factors; s[0] = 1
    let mut s = vec![0.0f64; d + 1];
    s[0] = 1.0;
    for n in 1..=n_terms {
        let nf = n as f64;
        for i in (1..=d).rev() {
            s[i] += s[i - 1] * nf.powi(-(ks[i - 1] as i32));
        }
    }
    let nf = n_terms as f64;
    let kd = ks[d - 1];
    let mut tail = s[d - 1] * power_tail(nf, kd);
    let mut j = 1;
    while j < d && ks[d - 1 - j] == 1 {
        tail += s[d - 1 - j] * nf.powf(1.0 - kd as f64) / ((kd - 1) as f64).powi(j as i32 + 1);
        j += 1;
    }
    s[d] + tail
}

/// The plain bar word `[;χ₁|;χ₀^{k₁−1}|⋯|;χ₁|;χ₀^{k_d−1}]`.
pub fn mzv_word(k: &MzvIndex) -> BarWord {
    BarWord::plain(&mzv_forms(k))
}

pub fn mzv_forms(k: &MzvIndex) -> Vec<BaseForm> {
    let mut forms = Vec::with_capacity(k.weight() as usize);
    for &ki in k.entries() {
        forms.push(BaseForm::Chi1);
        forms.extend(std::iter::repeat_n(BaseForm::Chi0, ki as usize - 1));
    }
    forms
}

/// Regularized iterated integral of [`mzv_word`] along `dch`.
pub fn mzv_iterint(k: &MzvIndex, cfg: &Config) -> Result<f64> {
    let forms: Vec<WeightedForm> = mzv_forms(k).into_iter().map(WeightedForm::plain).collect();
    Ok(reg_iterint(&Path::dch(), &forms, cfg)?.re)
}
