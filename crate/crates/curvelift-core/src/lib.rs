//! Exact arithmetic for rational curves in projective space: parametric
//! multiplicities at marked points, lifts of parametrized curves to the
//! blow-up of Pⁿ at those points, stratum classification of the resulting
//! moduli decomposition, and exhaustive finite-field censuses that verify
//! the decomposition by brute force.
//!
//! Everything is computed over ℚ or a prime field F_p with no floating
//! point; results are exact and deterministic (including under sharded
//! parallel enumeration).

pub mod blowup;
pub mod census;
pub mod error;
pub mod field;
pub mod form;
pub mod morphism;
pub mod projective;

pub use blowup::{
    stratum_dimension, BlowupConfig, DimensionKind, LiftBase, LiftedEvaluation, LiftedMorphism,
    StratumDimension, StratumLabel,
};
pub use census::{
    census_strata, count_morphisms, enumerate_constant_morphisms, enumerate_morphisms,
    estimate_dimension, strata_csv, verify_partition, CensusParams, CensusReport, Counterexample,
    MorphismEnumeration, Verdicts,
};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use form::BinaryForm;
pub use morphism::{GeometricDegree, MorphismP1};
pub use projective::{move_to_e0, ProjLinearMap, ProjectivePoint};
