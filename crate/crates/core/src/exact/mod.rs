//! Exact rational arithmetic: numbers, polynomials, rational functions,
//! points of the sphere and Laurent expansions.

mod laurent;
mod point;
mod poly;
mod rat;
mod ratfunc;

pub use laurent::LaurentSlice;
pub use point::RiemannPoint;
pub use poly::Poly;
pub use rat::{q, Rat};
pub use ratfunc::{rat_func_arith, ArithKind, RatFunc};
