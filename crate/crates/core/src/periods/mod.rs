//! ₂F₁ series, the Legendre period frame, its Gauss–Manin transport, and monodromy.

mod frame;
mod hypergeometric;
mod local;
mod monodromy;
mod transport;

pub use frame::{
    legendre_period_functions, mat_det, mat_dist, mat_identity, mat_inverse, mat_mul, period_values,
    period_values_split, reference_frame, HomologyClass, Mat2, PeriodFrame,
};
pub use hypergeometric::{gauss_2f1, HypergeometricParams};
pub use local::{local_frame, local_frame_parts, Puncture};
pub use monodromy::{loop_around_one, loop_around_zero, monodromy, Monodromy};
pub use transport::{gm_transport, gm_transport_estimated, transport_matrix, SINGULAR_DISTANCE};
pub(crate) use transport::{flatten, frame_rhs, unflatten};
