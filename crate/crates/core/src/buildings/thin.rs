//! The thin geometry: chambers are group elements of length at most the
//! radius, all thickness parameters equal 1, and δ(u, v) = u⁻¹v.

use std::collections::HashMap;

use crate::buildings::geometry::{ChamberGeometry, ChamberId};
use crate::caps::Caps;
use crate::coxeter::matrix::{CoxeterSystem, Gen};
use crate::coxeter::words::GroupElement;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CoxeterBall {
    system: CoxeterSystem,
    radius: usize,
    /// Sorted by length, then lexicographically; the identity is chamber 0.
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, ChamberId>,
    inverses: Vec<GroupElement>,
    complete: bool,
}

impl CoxeterSystem {
    /// Enumerates the ball of the given radius as a thin chamber geometry.
    pub fn enumerate_ball(&self, radius: usize, caps: &Caps) -> Result<CoxeterBall> {
        if radius > caps.max_radius {
            return Err(Error::CapExceeded(format!(
                "radius {radius} exceeds cap {}",
                caps.max_radius
            )));
        }
        let elements = self.parabolic_ball(&self.full_set(), Some(radius), caps)?;
        let index: HashMap<GroupElement, ChamberId> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        let inverses: Vec<GroupElement> = elements
            .iter()
            .map(|g| self.inverse(g))
            .collect();
        // complete iff no product leaves the element set
        let complete = elements.iter().all(|g| {
            self.generators()
                .all(|s| index.contains_key(&self.right_multiply(g, s)))
        });
        Ok(CoxeterBall {
            system: self.clone(),
            radius,
            elements,
            index,
            inverses,
            complete,
        })
    }
}

impl CoxeterBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn element(&self, c: ChamberId) -> &GroupElement {
        &self.elements[c]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Chamber id of a group element, when it lies in the ball.
    pub fn chamber_of(&self, g: &GroupElement) -> Option<ChamberId> {
        self.index.get(g).copied()
    }

    /// Left action of the group on chambers: g · C, when the result stays in
    /// the ball.
    pub fn act(&self, g: &GroupElement, c: ChamberId) -> Option<ChamberId> {
        self.chamber_of(&self.system.multiply(g, &self.elements[c]))
    }
}

impl ChamberGeometry for CoxeterBall {
    fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    fn chamber_count(&self) -> usize {
        self.elements.len()
    }

    fn weyl_distance(&self, a: ChamberId, b: ChamberId) -> GroupElement {
        self.system
            .multiply(&self.inverses[a], &self.elements[b])
    }

    fn thickness(&self, _s: Gen) -> usize {
        1
    }

    fn is_complete(&self) -> bool {
        self.complete
    }

    fn sphere_margin(&self, c: ChamberId) -> Option<usize> {
        if self.complete {
            None
        } else {
            Some(self.radius - self.elements[c].len())
        }
    }

    fn chamber_label(&self, c: ChamberId) -> String {
        self.elements[c].to_string()
    }
}
