//! Exact Krichever-Novikov algebras on the Riemann sphere.
//!
//! Functions, vector fields and first-order differential operators that are
//! meromorphic with poles only at a finite set of marked points, split into
//! in-points and out-points. The crate builds their almost-graded bases,
//! structure constants and geometric 2-cocycles by exact residue calculus,
//! pulls back the standard cocycle of banded infinite matrices, and forms the
//! centrally extended current algebras.

pub mod error;
pub mod exact;
pub mod forms;
pub mod ops;
pub mod cocycle;
pub mod glinf;
pub mod current;

pub use error::KncError;
pub use exact::{q, LaurentSlice, Poly, Rat, RatFunc, RiemannPoint};
pub use forms::{BasisIndex, Expansion, Form, KnContext, MarkedConfig};
pub use ops::{D1Element, OpKind};
pub use cocycle::{CocycleEvaluator, CocycleKind, CycleSpec};
pub use current::{CurrentAlgebra, FinDimLie};
