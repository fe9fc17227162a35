//! Exhaustive computation of the finite subgroups B_+ ∩ n_w B_- n_w^-1 of
//! SL2(F_q[t, t^-1]).
//!
//! Conjugation by a monomial matrix moves each entry slot to a single slot,
//! multiplied by a fixed power of t. Membership in both Borel subgroups
//! therefore confines each entry of a candidate to an explicit exponent
//! window, and the windows are finite. We enumerate the three free entries
//! over their windows, complete the fourth by the determinant equation, keep
//! exactly the candidates that pass the full membership re-check, and then
//! re-run the enumeration with a larger degree bound to confirm nothing was
//! truncated.

use std::collections::BTreeSet;

use crate::coxeter::GroupElement;
use crate::error::{Error, Result};
use crate::twin::context::{LaurentMatrix, Sign, TwinContext};
use crate::twin::laurent::LaurentPoly;

/// A fully materialized finite intersection subgroup.
#[derive(Debug, Clone)]
pub struct FiniteSubgroupSample {
    pub w: GroupElement,
    pub elements: Vec<LaurentMatrix>,
    pub order: u64,
}

/// Inclusive exponent window for one matrix entry; empty means the entry is
/// forced to vanish.
#[derive(Debug, Clone, Copy)]
struct Window {
    lo: i32,
    hi: i32,
}

impl Window {
    fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    fn width(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }
}

/// All polynomials supported on the window (including zero).
fn window_polys(q: u8, win: Window) -> Vec<LaurentPoly> {
    let width = win.width();
    let mut out = Vec::with_capacity((q as usize).pow(width as u32));
    let mut counter = vec![0u8; width];
    loop {
        out.push(LaurentPoly::from_coeffs(win.lo, counter.clone()));
        let mut i = 0;
        while i < width {
            counter[i] += 1;
            if counter[i] < q {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
        if i == width {
            break;
        }
    }
    out
}

/// Entry slots in row-major order: a, b, c, d.
fn slot_of(m: &LaurentMatrix) -> Option<(usize, &LaurentPoly)> {
    [&m.a, &m.b, &m.c, &m.d]
        .into_iter()
        .enumerate()
        .find(|(_, p)| !p.is_zero())
}

/// For each entry slot of a positive-side candidate, the exponent window
/// imposed by membership in B_+ together with n_w^-1 g n_w ∈ B_-.
fn conjugation_windows(
    ctx: &TwinContext,
    n_w: &LaurentMatrix,
    degree_bound: usize,
) -> Result<[Window; 4]> {
    let f = ctx.field();
    let n_inv = n_w.inverse(f);
    let mut windows = [Window { lo: 0, hi: 0 }; 4];
    for slot in 0..4 {
        let mut probe = LaurentMatrix::new(
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
        );
        let entry = match slot {
            0 => &mut probe.a,
            1 => &mut probe.b,
            2 => &mut probe.c,
            _ => &mut probe.d,
        };
        *entry = LaurentPoly::one();
        let h = LaurentMatrix::mul(f, &LaurentMatrix::mul(f, &n_inv, &probe), n_w);
        let (target, image) = slot_of(&h).ok_or_else(|| {
            Error::Internal("conjugation by a monomial matrix annihilated a slot".to_string())
        })?;
        if !image.is_monomial() {
            return Err(Error::Internal(
                "conjugation by a monomial matrix produced a non-monomial image".to_string(),
            ));
        }
        let shift = image.deg().unwrap();
        // positive side: all entries in F_q[t], the lower-left vanishing at 0
        let lo = if slot == 2 { 1 } else { 0 };
        // negative side: the image entry must live in F_q[t^-1]; when it
        // lands in the upper-right slot its t^0 coefficient must vanish too
        let hi_raw = -shift - if target == 1 { 1 } else { 0 };
        windows[slot] = Window {
            lo,
            hi: hi_raw.min(degree_bound as i32),
        };
    }
    Ok(windows)
}

/// One full enumeration pass at a fixed degree bound.
fn enumerate_at_bound(
    ctx: &TwinContext,
    n_w: &LaurentMatrix,
    degree_bound: usize,
) -> Result<BTreeSet<LaurentMatrix>> {
    let f = ctx.field();
    let q = ctx.q();
    let windows = conjugation_windows(ctx, n_w, degree_bound)?;
    let n_inv = n_w.inverse(f);
    let minus_one = LaurentPoly::constant(f.neg(1));

    let a_choices = window_polys(q, windows[0]);
    let b_choices = window_polys(q, windows[1]);
    let c_choices = window_polys(q, windows[2]);
    let d_choices = window_polys(q, windows[3]);

    let mut found = BTreeSet::new();
    let consider = |g: LaurentMatrix, found: &mut BTreeSet<LaurentMatrix>| {
        if !g.is_unimodular(f) {
            return;
        }
        if !ctx.in_borel(&g, Sign::Plus) {
            return;
        }
        let conj = LaurentMatrix::mul(f, &LaurentMatrix::mul(f, &n_inv, &g), n_w);
        if !ctx.in_borel(&conj, Sign::Minus) {
            return;
        }
        found.insert(g);
    };

    for a in &a_choices {
        for b in &b_choices {
            for c in &c_choices {
                if a.is_zero() {
                    // determinant -bc must be 1; d is then only constrained
                    // by its own window
                    if LaurentPoly::mul(f, b, c) != minus_one {
                        continue;
                    }
                    for d in &d_choices {
                        consider(
                            LaurentMatrix::new(a.clone(), b.clone(), c.clone(), d.clone()),
                            &mut found,
                        );
                    }
                } else {
                    // d = (1 + bc) / a, exactly or not at all
                    let num = LaurentPoly::add(f, &LaurentPoly::one(), &LaurentPoly::mul(f, b, c));
                    if let Some(d) = num.div_exact(f, a) {
                        consider(LaurentMatrix::new(a.clone(), b.clone(), c.clone(), d), &mut found);
                    }
                }
            }
        }
    }
    Ok(found)
}

/// Computes B_+ ∩ n_w B_- n_w^-1 as an explicit element list.
///
/// The enumeration is re-run at `degree_bound + 1`; any disagreement is an
/// `Unstable` error. The resulting set is verified to be a subgroup
/// containing the full diagonal torus, with order exactly (q-1)·q^ℓ(w).
pub fn intersection_subgroup(
    ctx: &TwinContext,
    w: &GroupElement,
    degree_bound: usize,
) -> Result<FiniteSubgroupSample> {
    let len = w.len();
    if len > ctx.len_cap() {
        return Err(Error::CapExceeded(format!(
            "word length {len} exceeds the twin-side cap {} for q={}",
            ctx.len_cap(),
            ctx.q()
        )));
    }
    if degree_bound > 16 {
        return Err(Error::CapExceeded(format!(
            "degree bound {degree_bound} exceeds the enumeration limit 16"
        )));
    }
    let f = ctx.field();
    let n_w = ctx.monomial_of(w)?;

    let at_bound = enumerate_at_bound(ctx, &n_w, degree_bound)?;
    let at_next = enumerate_at_bound(ctx, &n_w, degree_bound + 1)?;
    if at_bound != at_next {
        return Err(Error::Unstable {
            bound: degree_bound,
            next: degree_bound + 1,
            at_bound: at_bound.len(),
            at_next: at_next.len(),
        });
    }

    let elements: Vec<LaurentMatrix> = at_bound.into_iter().collect();
    let set: BTreeSet<&LaurentMatrix> = elements.iter().collect();

    // subgroup axioms, fully enumerated
    if !set.contains(&LaurentMatrix::identity()) {
        return Err(Error::CrossCheck(
            "intersection subgroup is missing the identity".to_string(),
        ));
    }
    for g in &elements {
        if !set.contains(&g.inverse(f)) {
            return Err(Error::CrossCheck(format!(
                "intersection subgroup is not closed under inversion at {g}"
            )));
        }
        for h in &elements {
            if !set.contains(&LaurentMatrix::mul(f, g, h)) {
                return Err(Error::CrossCheck(format!(
                    "intersection subgroup is not closed under products at {g} * {h}"
                )));
            }
        }
    }
    for t in ctx.torus() {
        if !set.contains(&t) {
            return Err(Error::CrossCheck(
                "intersection subgroup does not contain the diagonal torus".to_string(),
            ));
        }
    }

    let order = elements.len() as u64;
    let expected = (ctx.q() as u64 - 1)
        * (ctx.q() as u64)
            .checked_pow(len as u32)
            .ok_or_else(|| Error::Internal("order overflow".to_string()))?;
    if order != expected {
        return Err(Error::CrossCheck(format!(
            "intersection subgroup for ℓ(w)={len} has order {order}, expected {expected}"
        )));
    }

    Ok(FiniteSubgroupSample {
        w: w.clone(),
        elements,
        order,
    })
}

/// Orbit of the negative base chamber (the coset B_-) under the intersection
/// subgroup, computed as the number of distinct cosets g·B_- met by the
/// sample. Verifies the orbit-stabilizer identity and that the stabilizer is
/// exactly the diagonal torus. Returns the orbit size.
pub fn negative_orbit(ctx: &TwinContext, sample: &FiniteSubgroupSample) -> Result<u64> {
    let f = ctx.field();
    let mut reps: Vec<LaurentMatrix> = Vec::new();
    for g in &sample.elements {
        let seen = reps
            .iter()
            .any(|r| ctx.in_borel(&LaurentMatrix::mul(f, &r.inverse(f), g), Sign::Minus));
        if !seen {
            reps.push(g.clone());
        }
    }
    let orbit = reps.len() as u64;

    let mut stabilizer: Vec<&LaurentMatrix> = sample
        .elements
        .iter()
        .filter(|g| ctx.in_borel(g, Sign::Minus))
        .collect();
    stabilizer.sort();
    let mut torus: Vec<LaurentMatrix> = ctx.torus();
    torus.sort();
    let torus_refs: Vec<&LaurentMatrix> = torus.iter().collect();
    if stabilizer != torus_refs {
        return Err(Error::OrbitStabilizer(format!(
            "stabilizer of the negative base chamber has {} elements, expected the torus of order {}",
            stabilizer.len(),
            torus.len()
        )));
    }

    if orbit * torus.len() as u64 != sample.order {
        return Err(Error::OrbitStabilizer(format!(
            "orbit {} times stabilizer {} does not equal the group order {}",
            orbit,
            torus.len(),
            sample.order
        )));
    }
    let expected = (ctx.q() as u64).pow(sample.w.len() as u32);
    if orbit != expected {
        return Err(Error::OrbitStabilizer(format!(
            "negative orbit has size {orbit}, expected {expected}"
        )));
    }
    Ok(orbit)
}
