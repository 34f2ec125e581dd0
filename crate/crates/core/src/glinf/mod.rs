//! Banded infinite matrices, the embedding of `D¹` by its action on
//! `λ`-forms, and the pulled-back standard cocycle.

mod matrix;
mod pullback;

pub use matrix::{std_cocycle, BandedWindowMatrix};
pub use pullback::{
    phi_lambda, phi_lambda_coords, pullback_cocycle, pullcyc_coefficients, verify_pullcyc, PullcycReport,
    ValueCheck, WedgeIndexMap,
};
