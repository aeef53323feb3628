//! Paths in the λ-plane, iterated integrals of weighted base forms, and their regularized
//! limits at tangential base points.

mod engine;
mod fit;
mod forms;
mod iterint;
mod path;
mod table;

pub use fit::{fit_log_expansion, LogFit};
pub use forms::{Weight, WeightFn, WeightedForm};
pub use iterint::{iterint, iterint_table, reg_iterint, reg_iterint_detailed, RegValue};
pub use path::{path_from_json, path_to_json, LambdaPoint, Path, PathSample, Segment};
pub use table::SubwordTable;

/// Base point paired with a nonzero tangent vector there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentialBasePoint {
    pub point: num_complex::Complex64,
    pub tangent: num_complex::Complex64,
}

impl TangentialBasePoint {
    pub fn new(point: num_complex::Complex64, tangent: num_complex::Complex64) -> crate::Result<Self> {
        if tangent.norm() == 0.0 || !tangent.is_finite() {
            return Err(crate::Error::InvalidPath("tangent vector must be nonzero".into()));
        }
        Ok(TangentialBasePoint { point, tangent })
    }
}

/// `shrink(γ, ε)`: the sub-path on `[ε, 1 − ε]`.
pub fn shrink(path: &Path, eps: f64) -> crate::Result<Path> {
    path.shrink(eps)
}
