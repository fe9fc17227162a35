//! Panel complexes: a finite graph (or, for the Davis construction, the
//! 1-skeleton of a higher complex) together with one nonempty closed
//! subcomplex Z_s per generator. Realizing such a complex over a chamber
//! geometry glues one copy per chamber along the panels.

use std::collections::BTreeMap;

use crate::coxeter::condition::{Classification, ConditionVerdict};
use crate::coxeter::matrix::{format_genset, CoxLabel, CoxeterSystem, Gen, GenSet};
use crate::error::{Error, Result};

pub type PanelVertexId = usize;

/// One panel subcomplex Z_s: the vertices and edges it contains. Closed:
/// every listed edge has both endpoints listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PanelSet {
    pub vertices: Vec<PanelVertexId>,
    pub edges: Vec<usize>,
}

/// A labeled graph with a panel subcomplex per generator. `dimension` is the
/// dimension of the simplicial complex the graph is the 1-skeleton of; the
/// star/edge constructors always produce dimension <= 1, the Davis
/// construction can exceed it (and is then rejected by `realize`).
#[derive(Debug, Clone)]
pub struct PanelComplex {
    vertex_labels: Vec<String>,
    /// Edges as (u, v) with u < v, sorted.
    edges: Vec<(PanelVertexId, PanelVertexId)>,
    panels: BTreeMap<Gen, PanelSet>,
    dimension: usize,
}

impl PanelComplex {
    fn build(
        vertex_labels: Vec<String>,
        edges: Vec<(PanelVertexId, PanelVertexId)>,
        panels: BTreeMap<Gen, PanelSet>,
        dimension: usize,
    ) -> Result<Self> {
        let z = PanelComplex {
            vertex_labels,
            edges,
            panels,
            dimension,
        };
        z.validate()?;
        Ok(z)
    }

    /// Checks the structural invariants: a simple connected graph, and every
    /// panel nonempty and closed.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_labels.len();
        if n == 0 {
            return Err(Error::Internal("panel complex with no vertices".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &self.edges {
            if u >= v || v >= n {
                return Err(Error::Internal(format!(
                    "edge ({u},{v}) is not an ordered pair of distinct vertices"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::Internal(format!("duplicate edge ({u},{v})")));
            }
        }
        // connectivity by depth-first search over the undirected edges
        let mut reached = vec![false; n];
        let mut stack = vec![0usize];
        reached[0] = true;
        while let Some(u) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == u && !reached[y] {
                        reached[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if !reached.iter().all(|&r| r) {
            return Err(Error::Internal("panel complex is not connected".into()));
        }
        for (s, panel) in &self.panels {
            if panel.vertices.is_empty() {
                return Err(Error::Internal(format!("panel Z_{s} is empty")));
            }
            for &v in &panel.vertices {
                if v >= n {
                    return Err(Error::Internal(format!("panel Z_{s} lists vertex {v}")));
                }
            }
            for &e in &panel.edges {
                let Some(&(u, v)) = self.edges.get(e) else {
                    return Err(Error::Internal(format!("panel Z_{s} lists edge {e}")));
                };
                if !panel.vertices.contains(&u) || !panel.vertices.contains(&v) {
                    return Err(Error::Internal(format!(
                        "panel Z_{s} contains edge {e} but not both endpoints"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_label(&self, v: PanelVertexId) -> &str {
        &self.vertex_labels[v]
    }

    pub fn edges(&self) -> &[(PanelVertexId, PanelVertexId)] {
        &self.edges
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn panel(&self, s: Gen) -> Option<&PanelSet> {
        self.panels.get(&s)
    }

    pub fn panel_gens(&self) -> impl Iterator<Item = Gen> + '_ {
        self.panels.keys().copied()
    }

    /// Type set of a vertex: the generators s with v in Z_s.
    pub fn vertex_type_set(&self, v: PanelVertexId) -> GenSet {
        self.panels
            .iter()
            .filter(|(_, p)| p.vertices.contains(&v))
            .map(|(&s, _)| s)
            .collect()
    }

    /// Type set of an edge: the generators s whose panel contains the edge.
    pub fn edge_type_set(&self, e: usize) -> GenSet {
        self.panels
            .iter()
            .filter(|(_, p)| p.edges.contains(&e))
            .map(|(&s, _)| s)
            .collect()
    }
}

/// Star complex for a shape-A witness (J, K): a center vertex labeled by J
/// with one leaf per s in K labeled by J ∪ {s}. Z_s is the single leaf for
/// s in K and the whole complex for s in J.
pub fn panel_complex_a(system: &CoxeterSystem, j: &GenSet, k: &GenSet) -> Result<PanelComplex> {
    system.verify_classification(&Classification {
        verdict: ConditionVerdict::ConditionA {
            j: j.clone(),
            k: k.clone(),
        },
        rank3_case: None,
    })?;
    let mut labels = vec![format_genset(j)];
    let mut edges = Vec::new();
    let mut panels: BTreeMap<Gen, PanelSet> = BTreeMap::new();
    let leaves: Vec<Gen> = k.iter().copied().collect();
    for (i, &s) in leaves.iter().enumerate() {
        let leaf = i + 1;
        let mut js = j.clone();
        js.insert(s);
        labels.push(format_genset(&js));
        edges.push((0, leaf));
        panels.insert(
            s,
            PanelSet {
                vertices: vec![leaf],
                edges: vec![],
            },
        );
    }
    let all_vertices: Vec<usize> = (0..labels.len()).collect();
    let all_edges: Vec<usize> = (0..edges.len()).collect();
    for &s in j {
        panels.insert(
            s,
            PanelSet {
                vertices: all_vertices.clone(),
                edges: all_edges.clone(),
            },
        );
    }
    PanelComplex::build(labels, edges, panels, 1)
}

/// Star complex for a shape-B witness: center vertex for the empty set with
/// one leaf per part J_i. Z_s is the leaf of the part containing s, so
/// Z_s = Z_t whenever s and t share a part; the center and the open edges
/// are interior (in no panel).
pub fn panel_complex_b(system: &CoxeterSystem, parts: &[GenSet]) -> Result<PanelComplex> {
    system.verify_classification(&Classification {
        verdict: ConditionVerdict::ConditionB {
            parts: parts.to_vec(),
        },
        rank3_case: None,
    })?;
    let mut labels = vec![format_genset(&GenSet::new())];
    let mut edges = Vec::new();
    let mut panels: BTreeMap<Gen, PanelSet> = BTreeMap::new();
    for (i, part) in parts.iter().enumerate() {
        let leaf = i + 1;
        labels.push(format_genset(part));
        edges.push((0, leaf));
        for &s in part {
            panels.insert(
                s,
                PanelSet {
                    vertices: vec![leaf],
                    edges: vec![],
                },
            );
        }
    }
    PanelComplex::build(labels, edges, panels, 1)
}

/// Two-edge segment for a pair s, t with m(s,t) infinite: vertices
/// J∪{s} — J — J∪{t} with J the remaining generators. Z_u is the whole
/// segment for u in J; Z_s and Z_t are the opposite endpoints.
pub fn panel_complex_edge(system: &CoxeterSystem, s: Gen, t: Gen) -> Result<PanelComplex> {
    system.check_gen(s)?;
    system.check_gen(t)?;
    if system.label(s, t) != CoxLabel::Infinite {
        return Err(Error::Precondition(format!(
            "m({s},{t}) = {} is finite",
            system.label(s, t)
        )));
    }
    let j: GenSet = system.generators().filter(|&u| u != s && u != t).collect();
    let mut js = j.clone();
    js.insert(s);
    let mut jt = j.clone();
    jt.insert(t);
    let labels = vec![format_genset(&js), format_genset(&j), format_genset(&jt)];
    let edges = vec![(0, 1), (1, 2)];
    let mut panels: BTreeMap<Gen, PanelSet> = BTreeMap::new();
    panels.insert(
        s,
        PanelSet {
            vertices: vec![0],
            edges: vec![],
        },
    );
    panels.insert(
        t,
        PanelSet {
            vertices: vec![2],
            edges: vec![],
        },
    );
    for &u in &j {
        panels.insert(
            u,
            PanelSet {
                vertices: vec![0, 1, 2],
                edges: vec![0, 1],
            },
        );
    }
    PanelComplex::build(labels, edges, panels, 1)
}

/// 1-skeleton of the flag complex on the poset of spherical generator
/// subsets (including the empty set): one vertex per spherical subset, one
/// edge per strict inclusion, dimension = size of the largest spherical
/// subset. Z_s is the full subcomplex on the subsets containing s.
pub fn davis_panel_complex(system: &CoxeterSystem) -> Result<PanelComplex> {
    let rank = system.rank();
    if rank > 6 {
        return Err(Error::CapExceeded(format!(
            "Davis construction enumerates 2^rank subsets; rank {rank} > 6"
        )));
    }
    let gens: Vec<Gen> = system.generators().collect();
    let mut subsets: Vec<GenSet> = Vec::new();
    for mask in 0u32..(1 << rank) {
        let set: GenSet = gens
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &s)| s)
            .collect();
        if system.spherical_order(&set)?.is_spherical {
            subsets.push(set);
        }
    }
    subsets.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    let labels: Vec<String> = subsets.iter().map(format_genset).collect();
    let mut edges = Vec::new();
    for (i, small) in subsets.iter().enumerate() {
        for (jj, large) in subsets.iter().enumerate().skip(i + 1) {
            if small.len() < large.len() && small.is_subset(large) {
                edges.push((i, jj));
            }
        }
    }
    edges.sort_unstable();
    let dimension = subsets.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut panels: BTreeMap<Gen, PanelSet> = BTreeMap::new();
    for &s in &gens {
        let vertices: Vec<usize> = subsets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.contains(&s))
            .map(|(i, _)| i)
            .collect();
        let panel_edges: Vec<usize> = edges
            .iter()
            .enumerate()
            .filter(|(_, (u, v))| vertices.contains(u) && vertices.contains(v))
            .map(|(i, _)| i)
            .collect();
        panels.insert(
            s,
            PanelSet {
                vertices,
                edges: panel_edges,
            },
        );
    }
    PanelComplex::build(labels, edges, panels, dimension)
}
