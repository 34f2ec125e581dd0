//! Geometric 2-cocycles, coboundaries and the checks and decompositions
//! built on them.

mod coboundary;
mod connection;
mod cycle;
mod decompose;
mod evaluator;
mod geometric;
mod level_zero;
mod local;
mod locality;
mod properties;

pub use coboundary::{coboundary, CoboundaryData, CoboundaryKind};
pub use connection::{
    affine_connection_default, connection_transform_check, AffConn, ConnectionKind, ProjConn, TransformReport,
};
pub use cycle::{CycleSpec, MarkedRef};
pub use decompose::{decompose_bounded, extend_function_cocycle_to_d1, split_d1_cocycle, Decomposition};
pub use evaluator::{
    gamma_function, gamma_mixing, gamma_vector, BasisCocycle, CocycleEvaluator, CocycleKind, Provenance,
};
pub use level_zero::{extract_level_zero, level_zero_formula_check, LevelZeroMismatch, LevelZeroParams, LevelZeroReport};
pub use locality::{level_pairs, locality_scan, LevelWitness, LocalityReport, LocalityVerdict};
pub use properties::{all_tuples, check_cocycle_properties, Property, PropertyFailure, PropertyReport};
