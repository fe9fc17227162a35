//! The rank-2 twin model: SL2 over F_q[t, t^-1] with its two opposite Borel
//! subgroups, Birkhoff decomposition, and exact orders of the finite
//! subgroups cut out by twinned stabilizer conditions.

pub mod birkhoff;
pub mod context;
pub mod intersection;
pub mod laurent;
pub mod parabolic;

pub use birkhoff::{birkhoff_factor, birkhoff_type, BirkhoffFactorization};
pub use context::{LaurentMatrix, Sign, TwinContext};
pub use intersection::{intersection_subgroup, negative_orbit, FiniteSubgroupSample};
pub use laurent::LaurentPoly;
pub use parabolic::{parabolic_intersection_order, ParabolicIntersection};
