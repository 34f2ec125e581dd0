//! Marked configurations, the graded bases `f^λ_{n,p}`, the residue pairing
//! and expansion in the basis.

mod config;
mod context;
mod form;
mod inverted;

pub use config::{order_prescription, validate_config, MarkedConfig, OrderPrescription};
pub use context::{basis_element, expand_in_basis, kn_pairing, product_residue, Expansion, KnContext};
pub use form::{BasisIndex, Form};
pub use inverted::{inverted_config, InvertedConfig, Mobius};
