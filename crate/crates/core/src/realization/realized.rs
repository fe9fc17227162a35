//! The glued complex: one copy of a panel complex per chamber, with copies
//! identified along panels. The class of (C, σ) collects all chambers C'
//! with δ(C, C') in the standard parabolic on S_σ, so each class is a
//! parabolic residue of the geometry and the quotient is a graph whose
//! vertices and edges are the classes.

use crate::buildings::geometry::{ChamberGeometry, ChamberId};
use crate::coxeter::matrix::GenSet;
use crate::error::{Error, Result};
use crate::realization::panel::{PanelComplex, PanelVertexId};

/// A cell of the panel complex: a vertex or an edge (by index).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellRef {
    Vertex(PanelVertexId),
    Edge(usize),
}

/// One equivalence class [C, σ]: the chambers glued at the cell σ.
#[derive(Debug, Clone)]
pub struct CellClass {
    pub cell: CellRef,
    /// Smallest chamber id in the class; for a thin ball, chamber ids are in
    /// ShortLex order, so this is the ShortLex-least representative.
    pub rep_chamber: ChamberId,
    /// All member chambers, ascending.
    pub members: Vec<ChamberId>,
    /// S_σ: the generators whose panel contains σ.
    pub type_set: GenSet,
    /// Canonical rendering `chamber|cell` used in exports and witnesses.
    pub label: String,
    /// True when the class is a residue truncated by the ball boundary (some
    /// member has a deficient panel of a type in S_σ).
    pub boundary: bool,
}

/// The realized quotient graph.
#[derive(Debug, Clone)]
pub struct RealizedComplex {
    vertex_classes: Vec<CellClass>,
    edge_classes: Vec<CellClass>,
    /// vertex_class_of[v][chamber] -> index into vertex_classes
    vertex_class_of: Vec<Vec<usize>>,
    /// edge_class_of[e][chamber] -> index into edge_classes
    edge_class_of: Vec<Vec<usize>>,
    /// Per edge class: the two endpoint vertex-class indices.
    incidence: Vec<(usize, usize)>,
    chamber_count: usize,
}

/// Partitions the chambers by the relation δ(C, C') ∈ W_{type_set}. Returns
/// (class index per chamber, members per class). Classes are numbered by
/// their smallest chamber.
fn residue_partition(geom: &dyn ChamberGeometry, type_set: &GenSet) -> (Vec<usize>, Vec<Vec<ChamberId>>) {
    let system = geom.system();
    let n = geom.chamber_count();
    let mut class_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<ChamberId>> = Vec::new();
    for c in 0..n {
        let found = members.iter().position(|m| {
            let rep = m[0];
            system.in_parabolic(&geom.weyl_distance(rep, c), type_set)
        });
        match found {
            Some(i) => {
                class_of[c] = i;
                members[i].push(c);
            }
            None => {
                class_of[c] = members.len();
                members.push(vec![c]);
            }
        }
    }
    (class_of, members)
}

/// True when some member's panel of a type in S_σ is missing chambers, i.e.
/// the residue continues outside the ball.
fn is_truncated(geom: &dyn ChamberGeometry, members: &[ChamberId], type_set: &GenSet) -> bool {
    if geom.is_complete() {
        return false;
    }
    members.iter().any(|&c| {
        type_set
            .iter()
            .any(|&s| geom.s_neighbors(c, s).len() < geom.thickness(s))
    })
}

/// Glues one copy of `z` per chamber of `geom` along the panels and returns
/// the quotient graph with canonical representatives.
pub fn realize(geom: &dyn ChamberGeometry, z: &PanelComplex) -> Result<RealizedComplex> {
    if z.dimension() > 1 {
        return Err(Error::NotAGraph(z.dimension()));
    }
    z.validate()?;
    let n = geom.chamber_count();

    let mut vertex_classes: Vec<CellClass> = Vec::new();
    let mut vertex_class_of: Vec<Vec<usize>> = Vec::with_capacity(z.vertex_count());
    for v in 0..z.vertex_count() {
        let type_set = z.vertex_type_set(v);
        let (class_of, members) = residue_partition(geom, &type_set);
        let base = vertex_classes.len();
        vertex_class_of.push(class_of.into_iter().map(|i| base + i).collect());
        for m in members {
            vertex_classes.push(CellClass {
                cell: CellRef::Vertex(v),
                rep_chamber: m[0],
                label: format!("{}|{}", geom.chamber_label(m[0]), z.vertex_label(v)),
                boundary: is_truncated(geom, &m, &type_set),
                members: m,
                type_set: type_set.clone(),
            });
        }
    }

    let mut edge_classes: Vec<CellClass> = Vec::new();
    let mut edge_class_of: Vec<Vec<usize>> = Vec::with_capacity(z.edge_count());
    let mut incidence: Vec<(usize, usize)> = Vec::new();
    for e in 0..z.edge_count() {
        let (u, v) = z.edges()[e];
        let type_set = z.edge_type_set(e);
        let (class_of, members) = residue_partition(geom, &type_set);
        let base = edge_classes.len();
        edge_class_of.push(class_of.into_iter().map(|i| base + i).collect());
        for m in members {
            let rep = m[0];
            let ends = (vertex_class_of[u][rep], vertex_class_of[v][rep]);
            // the endpoint classes must not depend on the member chosen
            for &c in &m {
                if (vertex_class_of[u][c], vertex_class_of[v][c]) != ends {
                    return Err(Error::Internal(format!(
                        "edge class at chamber {} has member {} with different endpoints",
                        geom.chamber_label(rep),
                        geom.chamber_label(c)
                    )));
                }
            }
            incidence.push(ends);
            edge_classes.push(CellClass {
                cell: CellRef::Edge(e),
                rep_chamber: rep,
                label: format!(
                    "{}|{}-{}",
                    geom.chamber_label(rep),
                    z.vertex_label(u),
                    z.vertex_label(v)
                ),
                boundary: is_truncated(geom, &m, &type_set),
                members: m,
                type_set: type_set.clone(),
            });
        }
    }

    Ok(RealizedComplex {
        vertex_classes,
        edge_classes,
        vertex_class_of,
        edge_class_of,
        incidence,
        chamber_count: n,
    })
}

impl RealizedComplex {
    pub fn vertex_classes(&self) -> &[CellClass] {
        &self.vertex_classes
    }

    pub fn edge_classes(&self) -> &[CellClass] {
        &self.edge_classes
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_classes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_classes.len()
    }

    pub fn chamber_count(&self) -> usize {
        self.chamber_count
    }

    /// Index of the class of [chamber, panel vertex v].
    pub fn vertex_class_index(&self, v: PanelVertexId, chamber: ChamberId) -> usize {
        self.vertex_class_of[v][chamber]
    }

    /// Index of the class of [chamber, panel edge e].
    pub fn edge_class_index(&self, e: usize, chamber: ChamberId) -> usize {
        self.edge_class_of[e][chamber]
    }

    /// Endpoint vertex-class indices of an edge class.
    pub fn endpoints(&self, edge_class: usize) -> (usize, usize) {
        self.incidence[edge_class]
    }

    /// The classes making up the glued copy of Z at a chamber, vertices then
    /// edges, in panel-complex order.
    pub fn star_of(&self, chamber: ChamberId) -> Vec<usize> {
        let mut star: Vec<usize> = self
            .vertex_class_of
            .iter()
            .map(|per_chamber| per_chamber[chamber])
            .collect();
        star.extend(
            self.edge_class_of
                .iter()
                .map(|per_chamber| self.vertex_classes.len() + per_chamber[chamber]),
        );
        star
    }

    /// Edge list of the quotient graph, one `u v` line per edge class, with
    /// the canonical `chamber|cell` vertex labels.
    pub fn export_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, _) in self.edge_classes.iter().enumerate() {
            let (a, b) = self.incidence[i];
            out.push_str(&self.vertex_classes[a].label);
            out.push(' ');
            out.push_str(&self.vertex_classes[b].label);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::coxeter::matrix::CoxeterSystem;
    use crate::realization::panel::{panel_complex_a, panel_complex_edge};

    fn infinite_dihedral() -> CoxeterSystem {
        CoxeterSystem::from_raw(&[vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn single_chamber_realizes_one_copy() {
        let sys = infinite_dihedral();
        let ball = sys.enumerate_ball(0, &Caps::default()).unwrap();
        let z = panel_complex_edge(&sys, 0, 1).unwrap();
        let rc = realize(&ball, &z).unwrap();
        assert_eq!(rc.vertex_count(), z.vertex_count());
        assert_eq!(rc.edge_count(), z.edge_count());
    }

    #[test]
    fn dihedral_ball_radius_two_glues_into_a_path() {
        // 5 chambers: e, 0, 1, 0.1, 1.0. Each contributes a 3-vertex segment
        // and adjacent chambers share exactly one endpoint class, so the
        // quotient is a path: 5*3 - 4 = 11 vertices, 5*2 = 10 edges.
        let sys = infinite_dihedral();
        let ball = sys.enumerate_ball(2, &Caps::default()).unwrap();
        let z = panel_complex_edge(&sys, 0, 1).unwrap();
        let rc = realize(&ball, &z).unwrap();
        assert_eq!(rc.vertex_count(), 11);
        assert_eq!(rc.edge_count(), 10);
        // center classes are singletons (S_center is empty): one per chamber
        let centers = rc
            .vertex_classes()
            .iter()
            .filter(|c| matches!(c.cell, CellRef::Vertex(1)))
            .count();
        assert_eq!(centers, 5);
        // the endpoint classes merge pairwise along the chain: 3 per side
        for v in [0usize, 2] {
            let leaves = rc
                .vertex_classes()
                .iter()
                .filter(|c| matches!(c.cell, CellRef::Vertex(x) if x == v))
                .count();
            assert_eq!(leaves, 3);
        }
    }

    #[test]
    fn rank3_ball_realizes_one_star_per_residue() {
        let sys =
            CoxeterSystem::from_raw(&[vec![1, 0, 3], vec![0, 1, 3], vec![3, 3, 1]]).unwrap();
        let j: GenSet = [2].into_iter().collect();
        let k: GenSet = [0, 1].into_iter().collect();
        let ball = sys.enumerate_ball(3, &Caps::default()).unwrap();
        let z = panel_complex_a(&sys, &j, &k).unwrap();
        let rc = realize(&ball, &z).unwrap();
        // center classes are exactly the W_J-residues
        let centers: Vec<&CellClass> = rc
            .vertex_classes()
            .iter()
            .filter(|c| matches!(c.cell, CellRef::Vertex(0)))
            .collect();
        let (_, residues) = residue_partition(&ball, &j);
        assert_eq!(centers.len(), residues.len());
        for (class, residue) in centers.iter().zip(&residues) {
            assert_eq!(&class.members, residue);
        }
    }

    #[test]
    fn representatives_are_class_minima_and_lookups_agree() {
        let sys = infinite_dihedral();
        let ball = sys.enumerate_ball(3, &Caps::default()).unwrap();
        let z = panel_complex_edge(&sys, 0, 1).unwrap();
        let rc = realize(&ball, &z).unwrap();
        for (i, class) in rc.vertex_classes().iter().enumerate() {
            assert_eq!(class.rep_chamber, class.members[0]);
            assert!(class.members.windows(2).all(|w| w[0] < w[1]));
            let CellRef::Vertex(v) = class.cell else {
                panic!("vertex class with edge cell")
            };
            for &m in &class.members {
                assert_eq!(rc.vertex_class_index(v, m), i);
            }
        }
    }

    #[test]
    fn rejects_higher_dimensional_complexes() {
        let sys =
            CoxeterSystem::from_raw(&[vec![1, 0, 3], vec![0, 1, 3], vec![3, 3, 1]]).unwrap();
        let z = crate::realization::panel::davis_panel_complex(&sys).unwrap();
        let ball = sys.enumerate_ball(2, &Caps::default()).unwrap();
        assert!(matches!(realize(&ball, &z), Err(Error::NotAGraph(2))));
    }

    #[test]
    fn export_lists_every_edge_once() {
        let sys = infinite_dihedral();
        let ball = sys.enumerate_ball(2, &Caps::default()).unwrap();
        let z = panel_complex_edge(&sys, 0, 1).unwrap();
        let rc = realize(&ball, &z).unwrap();
        let text = rc.export_edge_list();
        assert_eq!(text.lines().count(), rc.edge_count());
        // labels are `chamber|cell` with no stray spaces
        for line in text.lines() {
            let cols: Vec<&str> = line.split(' ').collect();
            assert_eq!(cols.len(), 2);
            assert!(cols.iter().all(|c| c.contains('|')));
        }
    }
}
