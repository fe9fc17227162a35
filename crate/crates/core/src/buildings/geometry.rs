//! Chamber geometry abstraction: a finite indexed chamber set with a
//! Weyl-group-valued distance function and per-generator thickness.

use crate::coxeter::matrix::{CoxeterSystem, Gen};
use crate::coxeter::words::GroupElement;

pub type ChamberId = usize;

/// A chamber system with W-distance. Implementations are either complete
/// (the whole building) or a metric ball around a center chamber; the
/// distinction matters because sphere enumerations on balls are only exact
/// away from the boundary.
pub trait ChamberGeometry {
    fn system(&self) -> &CoxeterSystem;

    fn chamber_count(&self) -> usize;

    /// Weyl distance δ(a, b). Total on chamber pairs.
    fn weyl_distance(&self, a: ChamberId, b: ChamberId) -> GroupElement;

    /// Thickness parameter q_s: every s-panel holds q_s + 1 chambers.
    fn thickness(&self, s: Gen) -> usize;

    /// True when the geometry is the whole building rather than a ball.
    fn is_complete(&self) -> bool;

    /// Largest k such that every chamber at gallery distance <= k from `c`
    /// is present. None means unconstrained (complete geometry).
    fn sphere_margin(&self, c: ChamberId) -> Option<usize>;

    /// Human-readable rendering for witnesses and exports.
    fn chamber_label(&self, c: ChamberId) -> String;

    /// Chambers s-adjacent to `c` (sharing the s-panel, excluding `c`).
    fn s_neighbors(&self, c: ChamberId, s: Gen) -> Vec<ChamberId> {
        let gen_word = GroupElement::generator(s);
        (0..self.chamber_count())
            .filter(|&d| d != c && self.weyl_distance(c, d) == gen_word)
            .collect()
    }

    fn min_thickness(&self) -> usize {
        self.system()
            .generators()
            .map(|s| self.thickness(s))
            .min()
            .unwrap_or(1)
    }

    fn max_thickness(&self) -> usize {
        self.system()
            .generators()
            .map(|s| self.thickness(s))
            .max()
            .unwrap_or(1)
    }
}
