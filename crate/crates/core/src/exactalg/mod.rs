//! Exact arithmetic: rationals, Gaussian rationals, and polynomials and rational
//! functions in λ over ℚ(i).

mod gaussian;
mod poly;
mod ratfun;
mod rational;

pub use gaussian::GaussianRational;
pub use poly::Polynomial;
pub use ratfun::{ratfun_eval, RationalFunction};
pub use rational::{pochhammer, rational_arith, ArithOp, Rational};
