//! Koszul complexes, grade, parameter and regular sequences, model rings
//! and invariant rings on top of `cmlab-algebra`.

pub mod complexes;
pub mod grade;
pub mod invariants;
pub mod models;
pub mod module;
pub mod sequences;
