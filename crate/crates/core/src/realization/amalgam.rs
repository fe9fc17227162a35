//! Splitting along an infinite bond: for generators s, t with m(s,t)
//! infinite and J the remaining generators, the group acts on the realized
//! segment complex with the segment as fundamental domain, exhibiting W as
//! an amalgam of the two vertex stabilizers W_{J∪{s}} and W_{J∪{t}} over
//! the edge stabilizer W_J. This module builds the contracted quotient tree
//! (leaf classes as vertices, center classes as edges), verifies the orbit
//! and stabilizer structure on a thin ball, and certifies nontriviality of
//! alternating products through the block-factorization check.

use std::collections::BTreeSet;

use crate::buildings::geometry::ChamberGeometry;
use crate::buildings::thin::CoxeterBall;
use crate::caps::Caps;
use crate::coxeter::factorization::check_block_factorization;
use crate::coxeter::matrix::{format_genset, CoxeterSystem, Gen, GenSet};
use crate::coxeter::spherical::GroupOrder;
use crate::error::{Error, Result};
use crate::realization::panel::panel_complex_edge;
use crate::realization::realized::realize;
use crate::realization::verify::{graph_tree_report, tree_check, TreeReport};
use crate::report::LemmaReport;

/// Everything the splitting produces: the three cell families with their
/// orbit counts and stabilizers, the two quotient trees (full and
/// contracted), and the alternating-product nontriviality report.
#[derive(Debug, Clone)]
pub struct AmalgamReport {
    /// J ∪ {s}: type set of the left vertex family.
    pub left_set: GenSet,
    /// J ∪ {t}: type set of the right vertex family.
    pub right_set: GenSet,
    /// J: type set of the edge family.
    pub core_set: GenSet,
    /// Orbits of the group on left and right vertex classes (1 each).
    pub vertex_orbit_counts: (u64, u64),
    /// Orbits on the contracted edges (1).
    pub edge_orbit_count: u64,
    /// |W_{J∪{s}}|, |W_{J∪{t}}| from the finite-type catalogue.
    pub vertex_stabilizer_orders: (GroupOrder, GroupOrder),
    /// |W_J| from the finite-type catalogue.
    pub edge_stabilizer_order: GroupOrder,
    /// Tree report of the realized segment complex (3 cells per chamber).
    pub realized_tree: TreeReport,
    /// Tree report of the contracted graph: leaf classes as vertices, one
    /// edge per center class.
    pub contracted_tree: TreeReport,
    /// Nontriviality of alternating products of coset representatives.
    pub normal_form: LemmaReport,
}

impl AmalgamReport {
    pub fn orbit_count(&self) -> u64 {
        self.vertex_orbit_counts.0 + self.vertex_orbit_counts.1 + self.edge_orbit_count
    }
}

/// Verifies that every class in the family is the image of the base class
/// (the class of the identity chamber) under the element carrying the
/// identity to the class representative, checking every base member that
/// stays in the ball for consistency. Returns the orbit count (1 when the
/// action is transitive on the family).
fn orbit_count_on_family(
    ball: &CoxeterBall,
    class_of_chamber: &dyn Fn(usize) -> usize,
    base_members: &[usize],
    family: &[usize],
    rep_of_class: &dyn Fn(usize) -> usize,
) -> Result<u64> {
    let base = class_of_chamber(0);
    let mut orbits: BTreeSet<usize> = BTreeSet::new();
    for (i, &class) in family.iter().enumerate() {
        let rep = rep_of_class(i);
        let g = ball.element(rep).clone();
        // g carries the identity chamber to the representative; the whole
        // base class must follow it into `class`
        let mut reached = false;
        for &m in base_members {
            let Some(gm) = ball.act(&g, m) else { continue };
            if class_of_chamber(gm) != class {
                return Err(Error::CrossCheck(format!(
                    "the action is not class-consistent: {} maps base member {} outside class {}",
                    g,
                    ball.chamber_label(m),
                    class
                )));
            }
            reached = true;
        }
        orbits.insert(if reached { base } else { class });
    }
    Ok(orbits.len() as u64)
}

/// Cross-checks one stabilizer: the chambers glued to the identity chamber
/// at the fundamental cell must be exactly the elements of the standard
/// parabolic on `set`, and when that parabolic is finite and fully inside
/// the ball, its catalogued order must match the enumerated size.
fn stabilizer_order(
    system: &CoxeterSystem,
    ball: &CoxeterBall,
    members: &[usize],
    set: &GenSet,
    caps: &Caps,
) -> Result<GroupOrder> {
    let report = system.spherical_order(set)?;
    let enumerated: Vec<usize> = system
        .parabolic_ball(set, Some(ball.radius()), caps)?
        .iter()
        .map(|g| {
            ball.chamber_of(g)
                .ok_or_else(|| Error::Internal("parabolic element outside its ball".into()))
        })
        .collect::<Result<_>>()?;
    let members_set: BTreeSet<usize> = members.iter().copied().collect();
    let enumerated_set: BTreeSet<usize> = enumerated.into_iter().collect();
    if members_set != enumerated_set {
        return Err(Error::CrossCheck(format!(
            "stabilizer of the fundamental {}-cell has {} chambers, the parabolic ball {}",
            format_genset(set),
            members_set.len(),
            enumerated_set.len()
        )));
    }
    if let GroupOrder::Finite(n) = report.order {
        // enumerate the whole finite parabolic and compare orders
        let full = system.parabolic_ball(set, None, caps)?;
        if full.len() as u64 != n {
            return Err(Error::CrossCheck(format!(
                "catalogued order {} of W_{} vs {} enumerated elements",
                n,
                format_genset(set),
                full.len()
            )));
        }
    }
    Ok(report.order)
}

/// Builds and verifies the splitting for the pair (s, t) on a thin ball of
/// the given radius. Errors when m(s,t) is finite or when any orbit,
/// stabilizer, or tree check fails; the nontriviality report inside can
/// still carry its own failure status.
pub fn amalgam_report(
    system: &CoxeterSystem,
    s: Gen,
    t: Gen,
    radius: usize,
    caps: &Caps,
) -> Result<AmalgamReport> {
    let z = panel_complex_edge(system, s, t)?;
    if radius == 0 {
        return Err(Error::Precondition(
            "radius 0 leaves no room for the action".into(),
        ));
    }
    let ball = system.enumerate_ball(radius, caps)?;
    let rc = realize(&ball, &z)?;
    let realized_tree = tree_check(&rc)?;

    let j: GenSet = system.generators().filter(|&u| u != s && u != t).collect();
    let mut left_set = j.clone();
    left_set.insert(s);
    let mut right_set = j.clone();
    right_set.insert(t);

    // families: classes at the two leaves (panel vertices 0, 2) and the
    // center (panel vertex 1); realized class indices are global, so split
    // them per panel vertex first
    let family = |v: usize| -> Vec<usize> {
        rc.vertex_classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| matches!(c.cell, crate::realization::realized::CellRef::Vertex(x) if x == v))
            .map(|(i, _)| i)
            .collect()
    };
    let (left, center, right) = (family(0), family(1), family(2));

    // contracted tree: leaf classes are the vertices, center classes the
    // edges; endpoints of a center class are the leaf classes of its
    // representative chamber
    let mut contracted_vertices: Vec<usize> = Vec::new();
    contracted_vertices.extend(&left);
    contracted_vertices.extend(&right);
    let index_of = |global: usize| -> usize {
        contracted_vertices
            .iter()
            .position(|&g| g == global)
            .expect("leaf class indexed")
    };
    let mut contracted_edges: Vec<(usize, usize)> = Vec::new();
    for &cc in &center {
        let rep = rc.vertex_classes()[cc].rep_chamber;
        contracted_edges.push((
            index_of(rc.vertex_class_index(0, rep)),
            index_of(rc.vertex_class_index(2, rep)),
        ));
    }
    let contracted_tree = graph_tree_report(contracted_vertices.len(), &contracted_edges, |v| {
        rc.vertex_classes()[contracted_vertices[v]].label.clone()
    })?;
    if realized_tree.is_tree != contracted_tree.is_tree {
        return Err(Error::CrossCheck(format!(
            "realized tree-ness {} vs contracted tree-ness {}",
            realized_tree.is_tree, contracted_tree.is_tree
        )));
    }

    // orbits: the group is transitive on each of the three families
    let count_for = |v: usize, ids: &Vec<usize>| -> Result<u64> {
        let base_idx = rc.vertex_class_index(v, 0);
        orbit_count_on_family(
            &ball,
            &|chamber| rc.vertex_class_index(v, chamber),
            &rc.vertex_classes()[base_idx].members,
            ids,
            &|i| rc.vertex_classes()[ids[i]].rep_chamber,
        )
    };
    let left_orbits = count_for(0, &left)?;
    let center_orbits = count_for(1, &center)?;
    let right_orbits = count_for(2, &right)?;
    if (left_orbits, center_orbits, right_orbits) != (1, 1, 1) {
        return Err(Error::CrossCheck(format!(
            "expected one orbit per cell family, got ({left_orbits}, {center_orbits}, {right_orbits})"
        )));
    }

    // stabilizers of the three fundamental cells (classes of the identity)
    let members_at = |v: usize| -> &[usize] {
        let idx = rc.vertex_class_index(v, 0);
        &rc.vertex_classes()[idx].members
    };
    let left_order = stabilizer_order(system, &ball, members_at(0), &left_set, caps)?;
    let right_order = stabilizer_order(system, &ball, members_at(2), &right_set, caps)?;
    let edge_order = stabilizer_order(system, &ball, members_at(1), &j, caps)?;

    // alternating products of block elements never collapse to short words
    let mut normal_form = LemmaReport::pass("alternating-normal-form");
    let length_cap = 2 * radius;
    for blocks in 2..=length_cap {
        let pivots: Vec<Gen> = (0..blocks).map(|i| if i % 2 == 0 { s } else { t }).collect();
        let part = check_block_factorization(system, &pivots, length_cap, caps)?;
        for (key, n) in &part.counts {
            normal_form.count(key, *n);
        }
        if !part.passed() {
            normal_form.fail(part.witness.unwrap_or_else(|| "unwitnessed".into()));
        }
    }

    Ok(AmalgamReport {
        left_set,
        right_set,
        core_set: j,
        vertex_orbit_counts: (left_orbits, right_orbits),
        edge_orbit_count: center_orbits,
        vertex_stabilizer_orders: (left_order, right_order),
        edge_stabilizer_order: edge_order,
        realized_tree,
        contracted_tree,
        normal_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::LemmaStatus;

    #[test]
    fn infinite_dihedral_splits_over_the_trivial_group() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 0], vec![0, 1]]).unwrap();
        let report = amalgam_report(&sys, 0, 1, 2, &Caps::default()).unwrap();
        assert_eq!(report.orbit_count(), 3);
        assert_eq!(
            report.vertex_stabilizer_orders,
            (GroupOrder::Finite(2), GroupOrder::Finite(2))
        );
        assert_eq!(report.edge_stabilizer_order, GroupOrder::Finite(1));
        // the 5-chamber ball: 11/10 realized, 6/5 contracted
        assert_eq!(report.realized_tree.vertex_count, 11);
        assert_eq!(report.realized_tree.edge_count, 10);
        assert!(report.realized_tree.is_tree);
        assert_eq!(report.contracted_tree.vertex_count, 6);
        assert_eq!(report.contracted_tree.edge_count, 5);
        assert!(report.contracted_tree.is_tree);
        assert_eq!(report.normal_form.status, LemmaStatus::Pass);
    }

    #[test]
    fn one_infinity_bond_has_dihedral_vertex_groups() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 0, 3], vec![0, 1, 3], vec![3, 3, 1]]).unwrap();
        let report = amalgam_report(&sys, 0, 1, 4, &Caps::default()).unwrap();
        assert_eq!(report.orbit_count(), 3);
        assert_eq!(
            report.vertex_stabilizer_orders,
            (GroupOrder::Finite(6), GroupOrder::Finite(6))
        );
        assert_eq!(report.edge_stabilizer_order, GroupOrder::Finite(2));
        assert!(report.realized_tree.is_tree);
        assert!(report.contracted_tree.is_tree);
        assert_eq!(
            report.normal_form.status,
            LemmaStatus::Pass,
            "{:?}",
            report.normal_form.witness
        );
        assert!(report.normal_form.counts["products"] > 0);
    }

    #[test]
    fn finite_bond_is_rejected() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 0, 3], vec![0, 1, 3], vec![3, 3, 1]]).unwrap();
        assert!(matches!(
            amalgam_report(&sys, 0, 2, 3, &Caps::default()),
            Err(Error::Precondition(_))
        ));
    }
}
