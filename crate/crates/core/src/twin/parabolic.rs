//! Orders of intersections P_I ∩ w P_J^- w^-1, where P_I is a proper
//! standard parabolic on the positive side and P_J^- its analogue on the
//! negative side.
//!
//! Both parabolics decompose into finitely many Borel cosets: P_I = ⊔ r B_+
//! over an explicit transversal R_I, and P_J^- = ⊔ r' B_-. Interseecting a
//! positive coset condition with a conjugated negative one cuts the group
//! into "slices"; a short computation shows each nonempty slice is exactly
//! one left coset of the finite core H = B_+ ∩ n_w B_- n_w^-1, and that the
//! slice at (r, r') is nonempty if and only if r^-1 n_w r' lies in the
//! Birkhoff cell of w itself. The order is therefore (number of nonempty
//! slices) × |H|, and the full element list can be materialized and
//! re-verified.

use std::collections::BTreeSet;

use crate::coxeter::{format_genset, GenSet, GroupElement};
use crate::error::{Error, Result};
use crate::twin::birkhoff::birkhoff_factor;
use crate::twin::context::{LaurentMatrix, Sign, TwinContext};
use crate::twin::intersection::intersection_subgroup;
use crate::twin::laurent::LaurentPoly;

/// A fully materialized and verified parabolic intersection.
#[derive(Debug, Clone)]
pub struct ParabolicIntersection {
    pub i_set: GenSet,
    pub j_set: GenSet,
    pub w: GroupElement,
    /// Order of the core subgroup B_+ ∩ n_w B_- n_w^-1.
    pub core_order: u64,
    /// Index of the core in the full intersection (= number of slices).
    pub index: u64,
    pub order: u64,
    pub elements: Vec<LaurentMatrix>,
}

fn check_subset(ctx: &TwinContext, set: &GenSet) -> Result<()> {
    for &s in set {
        ctx.system().check_gen(s)?;
    }
    if set.len() >= ctx.system().rank() {
        return Err(Error::Precondition(format!(
            "parabolic subset {} is not proper",
            format_genset(set)
        )));
    }
    Ok(())
}

/// Root-group element for generator `s` on the given Borel side, with
/// parameter lambda.
fn root_unipotent(s: u8, sign: Sign, lambda: u8) -> LaurentMatrix {
    let one = LaurentPoly::one();
    let zero = LaurentPoly::zero();
    match (s, sign) {
        // constant reflection: upper constants positively, lower negatively
        (1, Sign::Plus) => LaurentMatrix::new(
            one.clone(),
            LaurentPoly::constant(lambda),
            zero,
            one,
        ),
        (1, Sign::Minus) => LaurentMatrix::new(
            one.clone(),
            zero,
            LaurentPoly::constant(lambda),
            one,
        ),
        // affine reflection: lower t-multiples positively, upper t^-1 negatively
        (_, Sign::Plus) => LaurentMatrix::new(
            one.clone(),
            zero,
            LaurentPoly::monomial(lambda, 1),
            one,
        ),
        (_, Sign::Minus) => LaurentMatrix::new(
            one.clone(),
            LaurentPoly::monomial(lambda, -1),
            zero,
            one,
        ),
    }
}

/// Borel-coset transversal of the parabolic on the given side: the identity
/// plus u_lambda * n_s for each lambda in F_q.
fn coset_transversal(ctx: &TwinContext, set: &GenSet, sign: Sign) -> Result<Vec<LaurentMatrix>> {
    let f = ctx.field();
    let mut reps = vec![LaurentMatrix::identity()];
    for &s in set {
        let n_s = ctx.monomial_of_gen(s)?;
        for lambda in ctx.field().elements() {
            let u = root_unipotent(s, sign, lambda);
            reps.push(LaurentMatrix::mul(f, &u, &n_s));
        }
    }
    Ok(reps)
}

/// Membership in the parabolic via its transversal: g lies in ⊔ r B iff some
/// r^-1 g passes the Borel test.
fn in_parabolic_side(
    ctx: &TwinContext,
    reps: &[LaurentMatrix],
    g: &LaurentMatrix,
    sign: Sign,
) -> bool {
    let f = ctx.field();
    reps.iter()
        .any(|r| ctx.in_borel(&LaurentMatrix::mul(f, &r.inverse(f), g), sign))
}

/// Computes |P_I ∩ n_w P_J^- n_w^-1| exactly, together with the fully
/// verified element list.
pub fn parabolic_intersection_order(
    ctx: &TwinContext,
    i_set: &GenSet,
    j_set: &GenSet,
    w: &GroupElement,
    degree_bound: usize,
) -> Result<ParabolicIntersection> {
    check_subset(ctx, i_set)?;
    check_subset(ctx, j_set)?;
    let f = ctx.field();

    let core = intersection_subgroup(ctx, w, degree_bound)?;
    let n_w = ctx.monomial_of(w)?;
    let n_w_inv = n_w.inverse(f);

    let pos_reps = coset_transversal(ctx, i_set, Sign::Plus)?;
    let neg_reps = coset_transversal(ctx, j_set, Sign::Minus)?;

    // one witness per nonempty slice
    let mut witnesses: Vec<LaurentMatrix> = Vec::new();
    for r in &pos_reps {
        for rp in &neg_reps {
            let probe = LaurentMatrix::mul(f, &LaurentMatrix::mul(f, &r.inverse(f), &n_w), rp);
            let fact = birkhoff_factor(ctx, &probe)?;
            if &fact.w == w {
                witnesses.push(LaurentMatrix::mul(f, r, &fact.b_plus));
            }
        }
    }

    // materialize: each nonempty slice is one left coset of the core
    let mut elements: BTreeSet<LaurentMatrix> = BTreeSet::new();
    for x in &witnesses {
        for h in &core.elements {
            elements.insert(LaurentMatrix::mul(f, x, h));
        }
    }
    if elements.len() as u64 != witnesses.len() as u64 * core.order {
        return Err(Error::Internal(
            "slice cosets of the core subgroup overlap".to_string(),
        ));
    }

    // re-verify every element against both parabolic membership tests
    for g in &elements {
        if !in_parabolic_side(ctx, &pos_reps, g, Sign::Plus) {
            return Err(Error::CrossCheck(format!(
                "materialized element {g} fails the positive parabolic test"
            )));
        }
        let conj = LaurentMatrix::mul(f, &LaurentMatrix::mul(f, &n_w_inv, g), &n_w);
        if !in_parabolic_side(ctx, &neg_reps, &conj, Sign::Minus) {
            return Err(Error::CrossCheck(format!(
                "materialized element {g} fails the negative parabolic test"
            )));
        }
    }

    // subgroup re-verification: identity, inverses, and closure against a
    // generating family (core elements and slice witnesses); every element
    // is witness * core, so closure under those factors gives full closure
    if !elements.contains(&LaurentMatrix::identity()) {
        return Err(Error::CrossCheck(
            "parabolic intersection is missing the identity".to_string(),
        ));
    }
    for g in &elements {
        if !elements.contains(&g.inverse(f)) {
            return Err(Error::CrossCheck(format!(
                "parabolic intersection is not closed under inversion at {g}"
            )));
        }
        for gen in witnesses.iter().chain(core.elements.iter()) {
            if !elements.contains(&LaurentMatrix::mul(f, g, gen)) {
                return Err(Error::CrossCheck(format!(
                    "parabolic intersection is not closed under products at {g}"
                )));
            }
        }
    }

    let index = witnesses.len() as u64;
    let bound = (ctx.q() as u64 + 1).pow((i_set.len() + j_set.len()) as u32);
    if index > bound {
        return Err(Error::CrossCheck(format!(
            "index {index} exceeds the coset bound {bound}"
        )));
    }

    Ok(ParabolicIntersection {
        i_set: i_set.clone(),
        j_set: j_set.clone(),
        w: w.clone(),
        core_order: core.order,
        index,
        order: index * core.order,
        elements: elements.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;

    fn ctx(q: u8) -> TwinContext {
        TwinContext::new(q, Caps::default()).unwrap()
    }

    fn genset(gens: &[u8]) -> GenSet {
        gens.iter().copied().collect()
    }

    #[test]
    fn borel_against_borel_recovers_the_core() {
        let c = ctx(2);
        for letters in [vec![], vec![1u8], vec![0, 1]] {
            let w = c.weyl_element(&letters).unwrap();
            let out =
                parabolic_intersection_order(&c, &genset(&[]), &genset(&[]), &w, letters.len() + 1)
                    .unwrap();
            assert_eq!(out.index, 1, "letters {letters:?}");
            assert_eq!(out.order, out.core_order);
        }
    }

    /// Hand-checked: P_{s1} ∩ B_- consists of the constant lower-triangular
    /// matrices, of order (q-1)q.
    #[test]
    fn golden_reflection_parabolic_against_negative_borel() {
        for q in [2u8, 3] {
            let c = ctx(q);
            let w = c.weyl_element(&[]).unwrap();
            let out =
                parabolic_intersection_order(&c, &genset(&[1]), &genset(&[]), &w, 1).unwrap();
            assert_eq!(out.order, (q as u64 - 1) * q as u64, "q={q}");
            assert_eq!(out.index, q as u64, "q={q}");
            for g in &out.elements {
                assert!(g.b.is_zero(), "q={q}: {g} is not lower triangular");
                for p in [&g.a, &g.c, &g.d] {
                    assert!(
                        p.deg().map_or(true, |d| d == 0) && p.val().map_or(true, |v| v == 0),
                        "q={q}: {g} has non-constant entries"
                    );
                }
            }
        }
    }

    /// Mirror image: B_+ ∩ P_{s1}^- consists of the constant upper-triangular
    /// matrices.
    #[test]
    fn golden_positive_borel_against_reflection_parabolic() {
        let c = ctx(2);
        let w = c.weyl_element(&[]).unwrap();
        let out = parabolic_intersection_order(&c, &genset(&[]), &genset(&[1]), &w, 1).unwrap();
        assert_eq!(out.order, 2);
        for g in &out.elements {
            assert!(g.c.is_zero(), "{g} is not upper triangular");
        }
    }

    #[test]
    fn index_bound_holds_across_small_configurations() {
        let c = ctx(2);
        let subsets = [genset(&[]), genset(&[0]), genset(&[1])];
        let words: [&[u8]; 4] = [&[], &[1], &[0], &[0, 1]];
        for i_set in &subsets {
            for j_set in &subsets {
                for letters in words {
                    let w = c.weyl_element(letters).unwrap();
                    let out =
                        parabolic_intersection_order(&c, i_set, j_set, &w, letters.len() + 1)
                            .unwrap();
                    let bound = 3u64.pow((i_set.len() + j_set.len()) as u32);
                    assert!(
                        out.index <= bound,
                        "I={:?} J={:?} letters={letters:?}: index {} > bound {bound}",
                        i_set,
                        j_set,
                        out.index
                    );
                    assert_eq!(out.order, out.index * out.core_order);
                    assert_eq!(out.elements.len() as u64, out.order);
                }
            }
        }
    }

    #[test]
    fn rejects_improper_subsets() {
        let c = ctx(2);
        let w = c.weyl_element(&[]).unwrap();
        assert!(matches!(
            parabolic_intersection_order(&c, &genset(&[0, 1]), &genset(&[]), &w, 1),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            parabolic_intersection_order(&c, &genset(&[]), &genset(&[7]), &w, 1),
            Err(Error::GeneratorOutOfRange { .. })
        ));
    }
}
