//! Iterated integrals on the thrice-punctured line whose integrands carry period
//! functions of the Legendre family `y² = x(1−x)(1−λx)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]: exact rationals, ℚ(i), polynomials and rational functions in λ.
//! * [`barwords`]: bar words, their shuffle Hopf algebra and the bar differential.
//! * [`periods`]: hypergeometric series, period frames, Gauss–Manin transport, monodromy.
//! * [`pathcalc`]: paths (including tangential base points) and (regularized) iterated integrals.
//! * [`pairing`]: the pairing of bar words with cycle words and paths, and its relations.
//! * [`mzv`]: multiple zeta values by nested series and by iterated integrals.

pub mod barwords;
pub mod config;
pub mod error;
pub mod exactalg;
pub mod mzv;
pub mod ode;
pub mod pairing;
pub mod pathcalc;
pub mod periods;
pub mod report;

pub use config::Config;
pub use error::{Error, Result};
