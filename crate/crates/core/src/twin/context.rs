//! 2x2 matrices over Laurent polynomials and the ambient context for the
//! rank-2 twin model: the group SL2 over F_q[t, t^-1] together with its two
//! opposite Borel subgroups and the standard monomial lifts of the
//! infinite-dihedral generators.

use std::fmt;

use crate::buildings::field::SmallField;
use crate::caps::Caps;
use crate::coxeter::{CoxeterSystem, Gen, GroupElement};
use crate::error::Result;
use crate::twin::laurent::LaurentPoly;

/// Row-major [[a, b], [c, d]].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentMatrix {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
    pub d: LaurentPoly,
}

impl LaurentMatrix {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        LaurentMatrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        LaurentMatrix {
            a: LaurentPoly::one(),
            b: LaurentPoly::zero(),
            c: LaurentPoly::zero(),
            d: LaurentPoly::one(),
        }
    }

    pub fn det(&self, field: &SmallField) -> LaurentPoly {
        LaurentPoly::sub(
            field,
            &LaurentPoly::mul(field, &self.a, &self.d),
            &LaurentPoly::mul(field, &self.b, &self.c),
        )
    }

    pub fn is_unimodular(&self, field: &SmallField) -> bool {
        self.det(field) == LaurentPoly::one()
    }

    pub fn mul(field: &SmallField, x: &LaurentMatrix, y: &LaurentMatrix) -> LaurentMatrix {
        let dot = |p: &LaurentPoly, q: &LaurentPoly, r: &LaurentPoly, s: &LaurentPoly| {
            LaurentPoly::add(
                field,
                &LaurentPoly::mul(field, p, q),
                &LaurentPoly::mul(field, r, s),
            )
        };
        LaurentMatrix {
            a: dot(&x.a, &y.a, &x.b, &y.c),
            b: dot(&x.a, &y.b, &x.b, &y.d),
            c: dot(&x.c, &y.a, &x.d, &y.c),
            d: dot(&x.c, &y.b, &x.d, &y.d),
        }
    }

    /// Inverse of a determinant-one matrix: [[d, -b], [-c, a]].
    pub fn inverse(&self, field: &SmallField) -> LaurentMatrix {
        debug_assert!(self.is_unimodular(field));
        LaurentMatrix {
            a: self.d.clone(),
            b: self.b.neg(field),
            c: self.c.neg(field),
            d: self.a.clone(),
        }
    }

    /// True when both off-diagonal entries vanish.
    pub fn is_diagonal(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    /// True when both diagonal entries vanish.
    pub fn is_antidiagonal(&self) -> bool {
        self.a.is_zero() && self.d.is_zero()
    }

    /// True when the matrix has exactly one nonzero entry per row and column.
    pub fn is_monomial(&self) -> bool {
        (self.is_diagonal() && !self.a.is_zero() && !self.d.is_zero())
            || (self.is_antidiagonal() && !self.b.is_zero() && !self.c.is_zero())
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Sign selecting one of the two opposite Borel subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Ambient data for the rank-2 twin model over F_q: the field, the
/// infinite-dihedral Coxeter system on generators {0, 1}, and caps.
pub struct TwinContext {
    field: SmallField,
    system: CoxeterSystem,
    caps: Caps,
}

impl TwinContext {
    pub fn new(q: u8, caps: Caps) -> Result<Self> {
        let field = SmallField::new(q)?;
        let system = CoxeterSystem::from_raw(&[vec![1, 0], vec![0, 1]])?;
        Ok(TwinContext {
            field,
            system,
            caps,
        })
    }

    pub fn field(&self) -> &SmallField {
        &self.field
    }

    pub fn q(&self) -> u8 {
        self.field.q()
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// Word-length budget for twin-side sweeps at this field size.
    pub fn len_cap(&self) -> usize {
        self.caps.twin_len_cap(self.q())
    }

    /// Membership in the positive or negative Borel subgroup. The positive
    /// side consists of matrices with entries in F_q[t] that are upper
    /// triangular at t = 0; the negative side mirrors this with t^-1 and
    /// evaluation at infinity.
    pub fn in_borel(&self, g: &LaurentMatrix, sign: Sign) -> bool {
        match sign {
            Sign::Plus => {
                g.a.is_polynomial()
                    && g.b.is_polynomial()
                    && g.c.is_polynomial()
                    && g.d.is_polynomial()
                    && g.c.coeff(0) == 0
            }
            Sign::Minus => {
                g.a.is_inverse_polynomial()
                    && g.b.is_inverse_polynomial()
                    && g.c.is_inverse_polynomial()
                    && g.d.is_inverse_polynomial()
                    && g.b.coeff(0) == 0
            }
        }
    }

    /// The diagonal torus: diag(a, a^-1) for a in F_q^*.
    pub fn torus(&self) -> Vec<LaurentMatrix> {
        self.field
            .elements()
            .filter(|&a| a != 0)
            .map(|a| {
                LaurentMatrix::new(
                    LaurentPoly::constant(a),
                    LaurentPoly::zero(),
                    LaurentPoly::zero(),
                    LaurentPoly::constant(self.field.inv(a)),
                )
            })
            .collect()
    }

    /// Monomial lift of a single generator.
    pub fn monomial_of_gen(&self, s: Gen) -> Result<LaurentMatrix> {
        self.system.check_gen(s)?;
        let field = &self.field;
        Ok(match s {
            // s_1 is the constant Weyl reflection, s_0 its affine twist
            1 => LaurentMatrix::new(
                LaurentPoly::zero(),
                LaurentPoly::one(),
                LaurentPoly::constant(field.neg(1)),
                LaurentPoly::zero(),
            ),
            _ => LaurentMatrix::new(
                LaurentPoly::zero(),
                LaurentPoly::monomial(1, -1),
                LaurentPoly::monomial(field.neg(1), 1),
                LaurentPoly::zero(),
            ),
        })
    }

    /// Monomial lift n_w of a Weyl-group element, following its normal form.
    pub fn monomial_of(&self, w: &GroupElement) -> Result<LaurentMatrix> {
        let mut m = LaurentMatrix::identity();
        for &s in w.word().letters() {
            m = LaurentMatrix::mul(&self.field, &m, &self.monomial_of_gen(s)?);
        }
        Ok(m)
    }

    /// Resolves a letter sequence to a Weyl-group element, validating letters.
    pub fn weyl_element(&self, letters: &[Gen]) -> Result<GroupElement> {
        for &s in letters {
            self.system.check_gen(s)?;
        }
        Ok(self.system.element_from_letters(letters))
    }

    /// Checks a torus membership: diagonal, constant entries, d = a^-1.
    pub fn in_torus(&self, g: &LaurentMatrix) -> bool {
        if !g.is_diagonal() {
            return false;
        }
        let (a, d) = (&g.a, &g.d);
        if a.is_zero() || d.is_zero() {
            return false;
        }
        if a.deg() != Some(0) || a.val() != Some(0) || d.deg() != Some(0) || d.val() != Some(0) {
            return false;
        }
        self.field.mul(a.coeff(0), d.coeff(0)) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: u8) -> TwinContext {
        TwinContext::new(q, Caps::default()).unwrap()
    }

    #[test]
    fn rejects_unsupported_field_sizes() {
        assert!(TwinContext::new(6, Caps::default()).is_err());
        assert!(TwinContext::new(1, Caps::default()).is_err());
    }

    #[test]
    fn generator_lifts_are_unimodular_with_square_in_torus() {
        for q in [2u8, 3, 4, 5] {
            let c = ctx(q);
            for s in [0u8, 1] {
                let n = c.monomial_of_gen(s).unwrap();
                assert!(n.is_unimodular(c.field()), "q={q} s={s}");
                let sq = LaurentMatrix::mul(c.field(), &n, &n);
                assert!(c.in_torus(&sq), "q={q} s={s}: square {sq} not in torus");
            }
        }
    }

    /// Golden pin of the sign convention: the lift of s_0 s_1 is the diagonal
    /// matrix diag(-t^-1, -t).
    #[test]
    fn golden_translation_monomial() {
        for q in [2u8, 3, 5] {
            let c = ctx(q);
            let w = c.weyl_element(&[0, 1]).unwrap();
            let n = c.monomial_of(&w).unwrap();
            let minus_one = c.field().neg(1);
            assert_eq!(
                n,
                LaurentMatrix::new(
                    LaurentPoly::monomial(minus_one, -1),
                    LaurentPoly::zero(),
                    LaurentPoly::zero(),
                    LaurentPoly::monomial(minus_one, 1),
                ),
                "q={q}"
            );
        }
    }

    #[test]
    fn borel_membership_split() {
        let c = ctx(3);
        // upper unipotent with polynomial entry: positive side only
        let u = LaurentMatrix::new(
            LaurentPoly::one(),
            LaurentPoly::from_coeffs(0, vec![1, 2]),
            LaurentPoly::zero(),
            LaurentPoly::one(),
        );
        assert!(c.in_borel(&u, Sign::Plus));
        assert!(!c.in_borel(&u, Sign::Minus));
        // lower unipotent with entry t: positive side (vanishes at 0)
        let l = LaurentMatrix::new(
            LaurentPoly::one(),
            LaurentPoly::zero(),
            LaurentPoly::monomial(1, 1),
            LaurentPoly::one(),
        );
        assert!(c.in_borel(&l, Sign::Plus));
        // lower unipotent with constant entry: negative side, not positive
        let lc = LaurentMatrix::new(
            LaurentPoly::one(),
            LaurentPoly::zero(),
            LaurentPoly::constant(2),
            LaurentPoly::one(),
        );
        assert!(!c.in_borel(&lc, Sign::Plus));
        assert!(c.in_borel(&lc, Sign::Minus));
        // torus elements live in both
        for h in c.torus() {
            assert!(c.in_borel(&h, Sign::Plus));
            assert!(c.in_borel(&h, Sign::Minus));
        }
        // the constant reflection lies in neither Borel
        let n1 = c.monomial_of_gen(1).unwrap();
        assert!(!c.in_borel(&n1, Sign::Plus));
        assert!(!c.in_borel(&n1, Sign::Minus));
    }

    #[test]
    fn torus_has_order_q_minus_one() {
        for q in [2u8, 3, 4, 5] {
            let c = ctx(q);
            let t = c.torus();
            assert_eq!(t.len(), (q - 1) as usize);
            for h in &t {
                assert!(h.is_unimodular(c.field()));
                assert!(c.in_torus(h));
            }
        }
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let c = ctx(4);
        let n = c
            .monomial_of(&c.weyl_element(&[0, 1, 0]).unwrap())
            .unwrap();
        let inv = n.inverse(c.field());
        assert_eq!(LaurentMatrix::mul(c.field(), &n, &inv), LaurentMatrix::identity());
        assert_eq!(LaurentMatrix::mul(c.field(), &inv, &n), LaurentMatrix::identity());
    }
}
