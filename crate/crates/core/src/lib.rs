//! Exhaustive, desk-scale verification of the combinatorics behind
//! finiteness properties of twin-building lattices: Coxeter word calculus,
//! chamber geometry for thin and thick buildings, panel complexes realized
//! over chamber balls, and stabilizer arithmetic in a concrete twin model.
//!
//! Everything is exact integer/word combinatorics. Enumerations are bounded
//! by explicit [`Caps`]; hitting a cap is an error, never a truncation.

pub mod buildings;
pub mod caps;
pub mod coxeter;
pub mod error;
pub mod realization;
pub mod report;
pub mod twin;

pub use buildings::{
    build_flag_building, residue_size, verify_building_axioms, verify_sphere_product, w_sphere,
    ChamberGeometry, ChamberId, CoxeterBall, FlagBuilding, SmallField,
};
pub use caps::Caps;
pub use coxeter::{
    check_block_factorization, format_genset, CayleyOracle, Classification, CoxLabel,
    CoxeterMatrix, CoxeterSystem, ConditionVerdict, ElementId, Gen, GenSet, GroupElement,
    GroupOrder, Rank3Case, SphericalReport, Word, MAX_RANK,
};
pub use error::{Error, Result};
pub use realization::{
    amalgam_report, davis_panel_complex, panel_complex_a, panel_complex_b, panel_complex_edge,
    realize, tree_check, verify_cellular_action, verify_panel_structure, verify_residue_collapse,
    AmalgamReport, CellClass, CellRef, PanelComplex, PanelMode, PanelSet, RealizedComplex,
    TreeReport,
};
pub use report::{LemmaReport, LemmaStatus};
pub use twin::{
    birkhoff_factor, birkhoff_type, intersection_subgroup, negative_orbit,
    parabolic_intersection_order, BirkhoffFactorization, FiniteSubgroupSample, LaurentMatrix,
    LaurentPoly, ParabolicIntersection, Sign, TwinContext,
};
