//! Chamber geometries: the abstract distance interface, thin group balls,
//! and complete flag buildings over small fields, with the sphere/residue
//! counting checks used by the stabilizer arithmetic.

pub mod field;
pub mod flag;
pub mod geometry;
pub mod sphere;
pub mod thin;

pub use field::SmallField;
pub use flag::{build_flag_building, FlagBuilding, FlagChamber};
pub use geometry::{ChamberGeometry, ChamberId};
pub use sphere::{residue_size, verify_building_axioms, verify_sphere_product, w_sphere};
pub use thin::CoxeterBall;
