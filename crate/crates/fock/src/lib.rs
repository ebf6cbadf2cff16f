//! Occupation-number spaces over a finite one-particle space: symmetric
//! (capped at a particle count) and antisymmetric (exact), with ladder
//! operators, fields, exponentiated fields, and the standard residual
//! checks against the canonical (anti)commutation relations.

pub mod ops;
pub mod space;

pub use ops::{
    annihilate, bogoliubov_check, car_check, ccr_residual, conjugate_field, create, field,
    multiparticle, number_operator, sector_projector, symmetrizer, vacuum_weyl, weyl,
    weyl_distance_from_identity, weyl_relation_residual, BogoliubovReport, CarReport,
};
pub use space::{FockError, FockSpace, FockVector, Statistics};
