//! The complete flag building of the special linear group over a small
//! field: chambers are full flags of subspaces, the Weyl distance is the
//! relative position permutation, and every panel holds q + 1 chambers.

use std::collections::BTreeSet;

use crate::buildings::field::SmallField;
use crate::buildings::geometry::{ChamberGeometry, ChamberId};
use crate::coxeter::matrix::{CoxeterSystem, Gen};
use crate::coxeter::words::{GroupElement, Word};
use crate::error::{Error, Result};

type Vector = Vec<u8>;
type Basis = Vec<Vector>;

/// Reduced row echelon form; rows are the canonical basis of the row space.
fn rref(field: &SmallField, rows: &[Vector]) -> Basis {
    let mut m: Vec<Vector> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, found);
        let scale = field.inv(m[pivot_row][col]);
        for x in m[pivot_row].iter_mut() {
            *x = field.mul(*x, scale);
        }
        for r in 0..m.len() {
            if r != pivot_row && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..cols {
                    let delta = field.mul(factor, m[pivot_row][c]);
                    m[r][c] = field.sub(m[r][c], delta);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

fn rank(field: &SmallField, rows: &[Vector]) -> usize {
    rref(field, rows).len()
}

fn intersection_dim(field: &SmallField, a: &Basis, b: &Basis) -> usize {
    let mut stacked = a.clone();
    stacked.extend(b.iter().cloned());
    a.len() + b.len() - rank(field, &stacked)
}

/// A maximal flag, stored as canonical bases of the proper subspaces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlagChamber {
    subspaces: Vec<Basis>,
}

impl FlagChamber {
    /// Basis of V_i (1-indexed, i < n).
    pub fn subspace(&self, i: usize) -> &Basis {
        &self.subspaces[i - 1]
    }
}

#[derive(Debug, Clone)]
pub struct FlagBuilding {
    field: SmallField,
    n: usize,
    system: CoxeterSystem,
    chambers: Vec<FlagChamber>,
    distances: Vec<Vec<GroupElement>>,
}

fn all_vectors(q: u8, n: usize) -> Vec<Vector> {
    let total = (u32::from(q)).pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let digit = (code % u32::from(q)) as u8;
                    code /= u32::from(q);
                    digit
                })
                .collect()
        })
        .collect()
}

/// Relative position of two flags as a permutation of {1..n} in one-line
/// notation: w(j) = i exactly when V_i ∩ V'_j jumps in both indices.
fn relative_position(field: &SmallField, n: usize, a: &FlagChamber, b: &FlagChamber) -> Vec<usize> {
    // dims[i][j] = dim(V_i ∩ V'_j) with V_0 = 0 and V_n = everything
    let mut dims = vec![vec![0usize; n + 1]; n + 1];
    let full: Basis = (0..n)
        .map(|i| {
            let mut e = vec![0u8; n];
            e[i] = 1;
            e
        })
        .collect();
    let side = |flag: &FlagChamber, i: usize| -> Basis {
        match i {
            0 => Vec::new(),
            i if i == n => full.clone(),
            i => flag.subspace(i).clone(),
        }
    };
    for i in 0..=n {
        let vi = side(a, i);
        for j in 0..=n {
            let vj = side(b, j);
            dims[i][j] = intersection_dim(field, &vi, &vj);
        }
    }
    (1..=n)
        .map(|j| {
            (1..=n)
                .find(|&i| dims[i][j] + dims[i - 1][j - 1] - dims[i - 1][j] - dims[i][j - 1] == 1)
                .expect("each column jumps exactly once")
        })
        .collect()
}

/// Reduced word for a permutation via descent elimination: while some
/// adjacent pair descends, swap it and record the transposition.
fn permutation_word(mut p: Vec<usize>) -> Vec<Gen> {
    let mut letters = Vec::new();
    loop {
        let Some(i) = (0..p.len() - 1).find(|&i| p[i] > p[i + 1]) else {
            break;
        };
        p.swap(i, i + 1);
        letters.push(i as Gen);
    }
    letters.reverse();
    letters
}

/// Builds the complete flag building of F_q^n for n in {2,3}, q in {2,3,4,5}.
pub fn build_flag_building(n: usize, q: u8) -> Result<FlagBuilding> {
    if !(2..=3).contains(&n) {
        return Err(Error::Precondition(format!(
            "flag buildings are supported for n in {{2,3}}, got {n}"
        )));
    }
    let field = SmallField::new(q)?;
    // the Weyl group of type A_{n-1}: adjacent labels 3, rank n-1
    let system = match n {
        2 => CoxeterSystem::from_raw(&[vec![1]])?,
        _ => CoxeterSystem::from_raw(&[vec![1, 3], vec![3, 1]])?,
    };

    let vectors = all_vectors(q, n);
    let lines: BTreeSet<Basis> = vectors
        .iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| rref(&field, std::slice::from_ref(v)))
        .collect();
    let mut chambers: Vec<FlagChamber> = Vec::new();
    if n == 2 {
        chambers.extend(lines.into_iter().map(|l| FlagChamber {
            subspaces: vec![l],
        }));
    } else {
        let mut planes: BTreeSet<Basis> = BTreeSet::new();
        for v in &vectors {
            for w in &vectors {
                let candidate = rref(&field, &[v.clone(), w.clone()]);
                if candidate.len() == 2 {
                    planes.insert(candidate);
                }
            }
        }
        for line in &lines {
            for plane in &planes {
                let mut stacked = plane.clone();
                stacked.extend(line.iter().cloned());
                if rank(&field, &stacked) == 2 {
                    chambers.push(FlagChamber {
                        subspaces: vec![line.clone(), plane.clone()],
                    });
                }
            }
        }
        chambers.sort();
    }

    let distances: Vec<Vec<GroupElement>> = chambers
        .iter()
        .map(|a| {
            chambers
                .iter()
                .map(|b| {
                    let p = relative_position(&field, n, a, b);
                    system.reduce(&Word::new(permutation_word(p)))
                })
                .collect()
        })
        .collect();

    Ok(FlagBuilding {
        field,
        n,
        system,
        chambers,
        distances,
    })
}

impl FlagBuilding {
    pub fn q(&self) -> u8 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chamber(&self, c: ChamberId) -> &FlagChamber {
        &self.chambers[c]
    }
}

fn render_basis(basis: &Basis) -> String {
    let rows: Vec<String> = basis
        .iter()
        .map(|row| row.iter().map(u8::to_string).collect::<String>())
        .collect();
    format!("<{}>", rows.join(","))
}

impl ChamberGeometry for FlagBuilding {
    fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    fn chamber_count(&self) -> usize {
        self.chambers.len()
    }

    fn weyl_distance(&self, a: ChamberId, b: ChamberId) -> GroupElement {
        self.distances[a][b].clone()
    }

    fn thickness(&self, _s: Gen) -> usize {
        usize::from(self.field.q())
    }

    fn is_complete(&self) -> bool {
        true
    }

    fn sphere_margin(&self, _c: ChamberId) -> Option<usize> {
        None
    }

    fn chamber_label(&self, c: ChamberId) -> String {
        let parts: Vec<String> = self.chambers[c]
            .subspaces
            .iter()
            .map(render_basis)
            .collect();
        parts.join(" < ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flag3(field: &SmallField, v1: Vector, v2a: Vector, v2b: Vector) -> FlagChamber {
        FlagChamber {
            subspaces: vec![rref(field, &[v1]), rref(field, &[v2a, v2b])],
        }
    }

    #[test]
    fn chamber_counts_match_flag_enumeration() {
        assert_eq!(build_flag_building(3, 2).unwrap().chamber_count(), 21);
        assert_eq!(build_flag_building(3, 3).unwrap().chamber_count(), 52);
        assert_eq!(build_flag_building(2, 3).unwrap().chamber_count(), 4);
        assert_eq!(build_flag_building(2, 5).unwrap().chamber_count(), 6);
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        assert!(build_flag_building(4, 2).is_err());
        assert!(build_flag_building(3, 7).is_err());
        assert!(build_flag_building(1, 2).is_err());
    }

    #[test]
    fn distance_to_self_is_identity() {
        let b = build_flag_building(3, 2).unwrap();
        for c in 0..b.chamber_count() {
            assert!(b.weyl_distance(c, c).is_identity());
        }
    }

    #[test]
    fn opposite_standard_flags_realize_the_longest_element() {
        let b = build_flag_building(3, 2).unwrap();
        let std_flag = flag3(
            &b.field,
            vec![1, 0, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
        );
        let reversed = flag3(
            &b.field,
            vec![0, 0, 1],
            vec![0, 0, 1],
            vec![0, 1, 0],
        );
        let a = b.chambers.iter().position(|f| *f == std_flag).unwrap();
        let z = b.chambers.iter().position(|f| *f == reversed).unwrap();
        assert_eq!(b.weyl_distance(a, z).word().letters(), &[0, 1, 0]);
    }

    #[test]
    fn sharing_the_plane_gives_the_first_generator() {
        let b = build_flag_building(3, 2).unwrap();
        let f = flag3(&b.field, vec![1, 0, 0], vec![1, 0, 0], vec![0, 1, 0]);
        let g = flag3(&b.field, vec![0, 1, 0], vec![1, 0, 0], vec![0, 1, 0]);
        let a = b.chambers.iter().position(|x| *x == f).unwrap();
        let z = b.chambers.iter().position(|x| *x == g).unwrap();
        assert_eq!(b.weyl_distance(a, z).word().letters(), &[0]);
        // sharing the line instead gives the second generator
        let h = flag3(&b.field, vec![1, 0, 0], vec![1, 0, 0], vec![0, 0, 1]);
        let y = b.chambers.iter().position(|x| *x == h).unwrap();
        assert_eq!(b.weyl_distance(a, y).word().letters(), &[1]);
    }

    #[test]
    fn panels_hold_q_plus_one_chambers() {
        for q in [2u8, 3] {
            let b = build_flag_building(3, q).unwrap();
            for c in 0..b.chamber_count() {
                for s in b.system.generators() {
                    assert_eq!(
                        b.s_neighbors(c, s).len(),
                        usize::from(q),
                        "panel ({c},{s}) at q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn distance_is_inverse_symmetric() {
        let b = build_flag_building(3, 3).unwrap();
        for a in 0..b.chamber_count() {
            for z in 0..b.chamber_count() {
                let d = b.weyl_distance(a, z);
                assert_eq!(b.system.inverse(&d), b.weyl_distance(z, a));
            }
        }
    }

    #[test]
    fn projective_line_is_one_big_panel() {
        let b = build_flag_building(2, 4).unwrap();
        assert_eq!(b.chamber_count(), 5);
        for c in 0..5 {
            assert_eq!(b.s_neighbors(c, 0).len(), 4);
        }
    }
}
