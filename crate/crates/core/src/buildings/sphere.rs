//! Sphere enumeration over a chamber geometry and the exhaustive checks of
//! the counting laws that drive the stabilizer arithmetic: sphere sizes
//! multiply along reduced words, longer spheres partition into panels over
//! shorter ones, and residues have the predicted q-analog cardinality.

use std::collections::HashMap;

use crate::buildings::geometry::{ChamberGeometry, ChamberId};
use crate::caps::Caps;
use crate::coxeter::matrix::GenSet;
use crate::coxeter::words::GroupElement;
use crate::error::{Error, Result};
use crate::report::LemmaReport;

/// All chambers at Weyl distance exactly `w` from `c`. On a ball geometry
/// the sphere is only guaranteed complete when ℓ(w) fits in the margin.
pub fn w_sphere<G: ChamberGeometry + ?Sized>(
    geom: &G,
    c: ChamberId,
    w: &GroupElement,
) -> Result<Vec<ChamberId>> {
    if let Some(margin) = geom.sphere_margin(c) {
        if w.len() > margin {
            return Err(Error::TruncatedSphere(format!(
                "length {} exceeds margin {} at chamber {}",
                w.len(),
                margin,
                geom.chamber_label(c)
            )));
        }
    }
    Ok((0..geom.chamber_count())
        .filter(|&d| geom.weyl_distance(c, d) == *w)
        .collect())
}

/// Expected sphere size: the product of the thickness parameters along a
/// reduced word.
fn thickness_product<G: ChamberGeometry + ?Sized>(geom: &G, w: &GroupElement) -> u64 {
    w.word()
        .letters()
        .iter()
        .map(|&s| geom.thickness(s) as u64)
        .product()
}

/// Exhaustively verifies, around chamber `c` and for every w up to the
/// length cap: |C_w(C)| equals the thickness product of every reduced
/// expression of w, and C_ws(C) is the disjoint union of the s-panels over
/// the w-sphere whenever ℓ(ws) = ℓ(w) + 1.
pub fn verify_sphere_product<G: ChamberGeometry + ?Sized>(
    geom: &G,
    c: ChamberId,
    length_cap: usize,
    caps: &Caps,
) -> Result<LemmaReport> {
    if let Some(margin) = geom.sphere_margin(c) {
        if margin < length_cap {
            return Err(Error::TruncatedSphere(format!(
                "cap {length_cap} exceeds margin {margin}"
            )));
        }
    }
    let system = geom.system();
    let elements = system.parabolic_ball(&system.full_set(), Some(length_cap), caps)?;
    let exhausted = {
        // one more level adds nothing iff W itself is exhausted
        let next = system.parabolic_ball(&system.full_set(), Some(length_cap + 1), caps)?;
        next.len() == elements.len()
    };

    let mut report = LemmaReport::pass("sphere-product");
    let mut total = 0u64;
    for w in &elements {
        let sphere = w_sphere(geom, c, w)?;
        report.count("spheres", 1);
        total += sphere.len() as u64;
        for expr in system.reduced_expressions(w, caps)? {
            let expected: u64 = expr
                .letters()
                .iter()
                .map(|&s| geom.thickness(s) as u64)
                .product();
            if expected != sphere.len() as u64 {
                report.fail(format!(
                    "|sphere({w})| = {} but {expr} predicts {expected}",
                    sphere.len()
                ));
            }
        }
        for s in system.generators() {
            let ws = system.right_multiply(w, s);
            if ws.len() != w.len() + 1 || ws.len() > length_cap {
                continue;
            }
            // multiset union of the s-panels over the w-sphere
            let mut seen: HashMap<ChamberId, u32> = HashMap::new();
            for &d in &sphere {
                for e in geom.s_neighbors(d, s) {
                    *seen.entry(e).or_insert(0) += 1;
                }
            }
            report.count("panel-unions", 1);
            let target = w_sphere(geom, c, &ws)?;
            for (&e, &times) in &seen {
                if times > 1 {
                    report.fail(format!(
                        "chamber {} reached {times} times walking {w} then {s}",
                        geom.chamber_label(e)
                    ));
                }
                if !target.contains(&e) {
                    report.fail(format!(
                        "chamber {} in the panel union but not in sphere({ws})",
                        geom.chamber_label(e)
                    ));
                }
            }
            for &e in &target {
                if !seen.contains_key(&e) {
                    report.fail(format!(
                        "chamber {} in sphere({ws}) missed by the panel union",
                        geom.chamber_label(e)
                    ));
                }
            }
        }
    }
    if geom.is_complete() && exhausted && total != geom.chamber_count() as u64 {
        report.fail(format!(
            "sphere sizes sum to {total}, not the chamber count {}",
            geom.chamber_count()
        ));
    }
    Ok(report)
}

/// Number of chambers in the J-residue of `c`, i.e. chambers at distance
/// inside W_J. Computed by the thickness-product formula and cross-checked
/// by direct enumeration.
pub fn residue_size<G: ChamberGeometry + ?Sized>(
    geom: &G,
    c: ChamberId,
    j: &GenSet,
    caps: &Caps,
) -> Result<usize> {
    let system = geom.system();
    let order = system.spherical_order(j)?;
    if !order.is_spherical {
        return Err(Error::InfiniteParabolic(
            crate::coxeter::matrix::format_genset(j),
        ));
    }
    let elements = system.parabolic_ball(j, None, caps)?;
    debug_assert_eq!(elements.len() as u64, order.order.finite().unwrap());
    let longest = elements.iter().map(GroupElement::len).max().unwrap_or(0);
    if let Some(margin) = geom.sphere_margin(c) {
        if margin < longest {
            return Err(Error::TruncatedSphere(format!(
                "residue reaches length {longest}, margin is {margin}"
            )));
        }
    }
    let formula: u64 = elements.iter().map(|w| thickness_product(geom, w)).sum();
    let direct = (0..geom.chamber_count())
        .filter(|&d| system.in_parabolic(&geom.weyl_distance(c, d), j))
        .count();
    if formula != direct as u64 {
        return Err(Error::CrossCheck(format!(
            "residue formula gives {formula}, direct count gives {direct}"
        )));
    }
    Ok(direct)
}

/// Exhaustive check of the W-distance axioms on a finite geometry:
/// δ(C,C) = 1, δ(C,D) = δ(D,C)⁻¹, the panel law, and the composition law
/// δ(C,E) ∈ {w, ws} (with equality ws forced when ℓ(ws) = ℓ(w)+1) whenever
/// δ(C,D) = w and δ(D,E) = s.
pub fn verify_building_axioms<G: ChamberGeometry + ?Sized>(geom: &G) -> Result<LemmaReport> {
    let system = geom.system();
    let n = geom.chamber_count();
    let mut report = LemmaReport::pass("building-axioms");
    report.count("chambers", n as u64);
    for a in 0..n {
        if !geom.weyl_distance(a, a).is_identity() {
            report.fail(format!("delta({a},{a}) != 1"));
        }
        for b in 0..n {
            let d = geom.weyl_distance(a, b);
            if system.inverse(&d) != geom.weyl_distance(b, a) {
                report.fail(format!("delta({a},{b}) not inverse-symmetric"));
            }
            if a != b && d.len() == 1 {
                let s = d.word().letters()[0];
                if !geom.s_neighbors(a, s).contains(&b) {
                    report.fail(format!("delta({a},{b}) = {s} but not {s}-adjacent"));
                }
            }
        }
    }
    // composition law, driven from the panels
    for d in 0..n {
        for s in system.generators() {
            for e in geom.s_neighbors(d, s) {
                for c in 0..n {
                    let w = geom.weyl_distance(c, d);
                    let ws = system.right_multiply(&w, s);
                    let ce = geom.weyl_distance(c, e);
                    report.count("triples", 1);
                    if ce != w && ce != ws {
                        report.fail(format!(
                            "delta({c},{e}) = {ce}, expected {w} or {ws}"
                        ));
                    }
                    if ws.len() == w.len() + 1 && ce != ws {
                        report.fail(format!(
                            "delta({c},{e}) = {ce}, forced to {ws} by length"
                        ));
                    }
                }
            }
        }
    }
    // panel sizes on complete geometries
    if geom.is_complete() {
        for c in 0..n {
            for s in system.generators() {
                let panel = geom.s_neighbors(c, s).len() + 1;
                if panel != geom.thickness(s) + 1 {
                    report.fail(format!(
                        "panel ({c},{s}) holds {panel} chambers, expected {}",
                        geom.thickness(s) + 1
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buildings::flag::build_flag_building;
    use crate::coxeter::matrix::CoxeterSystem;

    #[test]
    fn identity_sphere_is_the_chamber_itself() {
        let b = build_flag_building(3, 2).unwrap();
        let sphere = w_sphere(&b, 5, &GroupElement::identity()).unwrap();
        assert_eq!(sphere, vec![5]);
    }

    #[test]
    fn flag_building_sphere_sizes_are_q_powers() {
        for (q, expected) in [(2u8, [1usize, 2, 2, 4, 4, 8]), (3, [1, 3, 3, 9, 9, 27])] {
            let b = build_flag_building(3, q).unwrap();
            let system = b.system().clone();
            let words: Vec<Vec<u8>> = vec![
                vec![],
                vec![0],
                vec![1],
                vec![0, 1],
                vec![1, 0],
                vec![0, 1, 0],
            ];
            let mut total = 0;
            for (letters, want) in words.iter().zip(expected) {
                let w = system.element_from_letters(letters);
                let got = w_sphere(&b, 0, &w).unwrap().len();
                assert_eq!(got, want, "q={q} w={w}");
                total += got;
            }
            assert_eq!(total, b.chamber_count());
        }
    }

    #[test]
    fn sphere_product_passes_on_flag_buildings() {
        for q in [2u8, 3] {
            let b = build_flag_building(3, q).unwrap();
            let report = verify_sphere_product(&b, 0, 3, &Caps::default()).unwrap();
            assert!(report.passed(), "q={q}: {:?}", report.witness);
            assert_eq!(report.counts["spheres"], 6);
        }
    }

    #[test]
    fn sphere_product_passes_on_thin_balls() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 0, 3], vec![0, 1, 3], vec![3, 3, 1]]).unwrap();
        let ball = sys.enumerate_ball(6, &Caps::default()).unwrap();
        let report = verify_sphere_product(&ball, 0, 3, &Caps::default()).unwrap();
        assert!(report.passed(), "{:?}", report.witness);
        // thin spheres all have size exactly 1
        let w = sys.element_from_letters(&[0, 2, 1]);
        assert_eq!(w_sphere(&ball, 0, &w).unwrap().len(), 1);
    }

    #[test]
    fn truncated_spheres_are_rejected() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 0], vec![0, 1]]).unwrap();
        let ball = sys.enumerate_ball(3, &Caps::default()).unwrap();
        let far = sys.element_from_letters(&[0, 1, 0, 1]);
        assert!(matches!(
            w_sphere(&ball, 0, &far),
            Err(Error::TruncatedSphere(_))
        ));
        assert!(verify_sphere_product(&ball, 0, 4, &Caps::default()).is_err());
    }

    #[test]
    fn residue_sizes_on_flag_buildings() {
        let b = build_flag_building(3, 2).unwrap();
        let empty = GenSet::new();
        assert_eq!(residue_size(&b, 0, &empty, &Caps::default()).unwrap(), 1);
        let s1: GenSet = [0u8].into_iter().collect();
        assert_eq!(residue_size(&b, 0, &s1, &Caps::default()).unwrap(), 3);
        let both: GenSet = [0u8, 1].into_iter().collect();
        assert_eq!(residue_size(&b, 0, &both, &Caps::default()).unwrap(), 21);
        let b3 = build_flag_building(3, 3).unwrap();
        assert_eq!(residue_size(&b3, 7, &s1, &Caps::default()).unwrap(), 4);
        assert_eq!(residue_size(&b3, 7, &both, &Caps::default()).unwrap(), 52);
    }

    #[test]
    fn infinite_residues_are_rejected() {
        let sys = CoxeterSystem::from_raw(&[vec![1, 0], vec![0, 1]]).unwrap();
        let ball = sys.enumerate_ball(4, &Caps::default()).unwrap();
        let both: GenSet = [0u8, 1].into_iter().collect();
        assert!(matches!(
            residue_size(&ball, 0, &both, &Caps::default()),
            Err(Error::InfiniteParabolic(_))
        ));
    }

    #[test]
    fn axioms_hold_on_flag_buildings_and_thin_balls() {
        for q in [2u8, 3] {
            let b = build_flag_building(3, q).unwrap();
            let report = verify_building_axioms(&b).unwrap();
            assert!(report.passed(), "q={q}: {:?}", report.witness);
        }
        let b2 = build_flag_building(2, 5).unwrap();
        assert!(verify_building_axioms(&b2).unwrap().passed());
        let sys = CoxeterSystem::from_raw(&[vec![1, 0, 3], vec![0, 1, 3], vec![3, 3, 1]]).unwrap();
        let ball = sys.enumerate_ball(4, &Caps::default()).unwrap();
        assert!(verify_building_axioms(&ball).unwrap().passed());
    }
}
