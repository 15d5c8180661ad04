//! Exact scalars: rationals and elements of a single real quadratic
//! extension, with total sign determination.

mod quad;
mod rational;

pub use quad::{solve_quadratic, solve_quadratic_allow_zero, QuadExt, RootSet};
pub use rational::{Rational, Sign};
