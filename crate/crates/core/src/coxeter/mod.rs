//! Coxeter systems: matrices, word rewriting, enumeration, classification.

pub mod condition;
pub mod factorization;
pub mod matrix;
pub mod oracle;
pub mod spherical;
pub mod words;

pub use condition::{Classification, ConditionVerdict, Rank3Case};
pub use factorization::check_block_factorization;
pub use matrix::{format_genset, CoxLabel, CoxeterMatrix, CoxeterSystem, Gen, GenSet, MAX_RANK};
pub use oracle::{CayleyOracle, ElementId};
pub use spherical::{GroupOrder, SphericalReport};
pub use words::{GroupElement, Word};
