//! Panel complexes, their glued quotients over chamber geometries, and the
//! structural verifiers: tree shape, panel-gluing lemmas, residue collapse,
//! cellular action, and the amalgam splitting along an infinite bond.

pub mod amalgam;
pub mod panel;
pub mod realized;
pub mod verify;

pub use amalgam::{amalgam_report, AmalgamReport};
pub use panel::{
    davis_panel_complex, panel_complex_a, panel_complex_b, panel_complex_edge, PanelComplex,
    PanelSet, PanelVertexId,
};
pub use realized::{realize, CellClass, CellRef, RealizedComplex};
pub use verify::{
    tree_check, verify_cellular_action, verify_panel_structure, verify_residue_collapse,
    PanelMode, TreeReport,
};
