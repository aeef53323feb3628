use num_complex::Complex64;

/// Iterated integrals of every contiguous subword `ω_j ⋯ ω_k` of a fixed word over one
/// stretch of path. Empty subwords have value 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SubwordTable {
    r: usize,
    entries: Vec<Complex64>,
}

pub(crate) fn table_index(j: usize, k: usize) -> usize {
    k * (k + 1) / 2 + j
}

pub(crate) fn table_len(r: usize) -> usize {
    r * (r + 1) / 2
}

impl SubwordTable {
    /// The table of the trivial stretch: all nonempty subwords integrate to 0.
    pub fn identity(r: usize) -> Self {
        SubwordTable { r, entries: vec![Complex64::new(0.0, 0.0); table_len(r)] }
    }

    pub(crate) fn from_entries(r: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), table_len(r));
        SubwordTable { r, entries }
    }

    pub fn len(&self) -> usize {
        self.r
    }

    pub fn is_empty(&self) -> bool {
        self.r == 0
    }

    /// `∫ ω_j ⋯ ω_k` (0-based, inclusive); `j = k + 1` gives the empty word.
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        if j == k + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            self.entries[table_index(j, k)]
        }
    }

    /// `∫ ω₀ ⋯ ω_{r−1}`.
    pub fn full(&self) -> Complex64 {
        if self.r == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            self.get(0, self.r - 1)
        }
    }

    pub(crate) fn set(&mut self, j: usize, k: usize, v: Complex64) {
        self.entries[table_index(j, k)] = v;
    }

    /// Table of the composite stretch `self` then `next` (path composition).
    pub fn then(&self, next: &SubwordTable) -> SubwordTable {
        assert_eq!(self.r, next.r, "tables of different words");
        let mut out = SubwordTable::identity(self.r);
        for k in 0..self.r {
            for j in 0..=k {
                // split ω_j..ω_k as (ω_j..ω_{i−1}) on self, (ω_i..ω_k) on next
                let mut acc = Complex64::new(0.0, 0.0);
                for i in j..=k + 1 {
                    let left = if i == j { Complex64::new(1.0, 0.0) } else { self.get(j, i - 1) };
                    acc += left * next.get(i, k);
                }
                out.set(j, k, acc);
            }
        }
        out
    }
}
