//! Laurent polynomials over a small field, stored as a dense coefficient
//! window. The representation is canonical: the zero polynomial stores no
//! coefficients, anything else stores a window whose first and last entries
//! are nonzero.

use std::fmt;

use crate::buildings::field::SmallField;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    min_deg: i32,
    coeffs: Vec<u8>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: u8) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn monomial(c: u8, deg: i32) -> Self {
        if c == 0 {
            LaurentPoly::zero()
        } else {
            LaurentPoly {
                min_deg: deg,
                coeffs: vec![c],
            }
        }
    }

    /// Builds from a coefficient window starting at `min_deg`, trimming to
    /// canonical form.
    pub fn from_coeffs(min_deg: i32, coeffs: Vec<u8>) -> Self {
        let mut p = LaurentPoly { min_deg, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.min_deg += leading_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.min_deg = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent (valuation); None for the zero polynomial.
    pub fn val(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.min_deg)
    }

    /// Highest exponent; None for the zero polynomial.
    pub fn deg(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.min_deg + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> u8 {
        if self.is_zero() || e < self.min_deg {
            return 0;
        }
        usize::try_from(e - self.min_deg)
            .ok()
            .and_then(|i| self.coeffs.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// Leading (highest-exponent) coefficient; 0 for zero.
    pub fn lead(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// (exponent, coefficient) pairs, ascending, nonzero only.
    pub fn terms(&self) -> impl Iterator<Item = (i32, u8)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.min_deg + i as i32, c))
    }

    /// Entirely in F_q[t] (no negative exponents).
    pub fn is_polynomial(&self) -> bool {
        self.val().map_or(true, |v| v >= 0)
    }

    /// Entirely in F_q[t⁻¹] (no positive exponents).
    pub fn is_inverse_polynomial(&self) -> bool {
        self.deg().map_or(true, |d| d <= 0)
    }

    /// True when the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }

    pub fn add(field: &SmallField, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
        if x.is_zero() {
            return y.clone();
        }
        if y.is_zero() {
            return x.clone();
        }
        let lo = x.min_deg.min(y.min_deg);
        let hi = x.deg().unwrap().max(y.deg().unwrap());
        let coeffs: Vec<u8> = (lo..=hi)
            .map(|e| field.add(x.coeff(e), y.coeff(e)))
            .collect();
        LaurentPoly::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self, field: &SmallField) -> LaurentPoly {
        LaurentPoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|&c| field.neg(c)).collect(),
        }
    }

    pub fn sub(field: &SmallField, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(field, x, &y.neg(field))
    }

    pub fn mul(field: &SmallField, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
        if x.is_zero() || y.is_zero() {
            return LaurentPoly::zero();
        }
        let lo = x.min_deg + y.min_deg;
        let mut coeffs = vec![0u8; x.coeffs.len() + y.coeffs.len() - 1];
        for (i, &xc) in x.coeffs.iter().enumerate() {
            if xc == 0 {
                continue;
            }
            for (j, &yc) in y.coeffs.iter().enumerate() {
                let prod = field.mul(xc, yc);
                coeffs[i + j] = field.add(coeffs[i + j], prod);
            }
        }
        LaurentPoly::from_coeffs(lo, coeffs)
    }

    pub fn scale(&self, field: &SmallField, c: u8) -> LaurentPoly {
        if c == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|&x| field.mul(x, c)).collect(),
        }
    }

    /// Exact division: Some(q) with self = q·d when d divides self evenly.
    pub fn div_exact(&self, field: &SmallField, d: &LaurentPoly) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if d.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut q = LaurentPoly::zero();
        let d_deg = d.deg().unwrap();
        // An exact quotient has valuation val(self) - val(d); going below
        // that exponent means the division only closes up as an infinite
        // series, i.e. it is not exact.
        let quot_min = self.val().unwrap() - d.val().unwrap();
        while !rem.is_zero() {
            let r_deg = rem.deg().unwrap();
            if r_deg - d_deg < quot_min {
                return None;
            }
            let factor = field.div(rem.lead(), d.lead());
            let term = LaurentPoly::monomial(factor, r_deg - d_deg);
            q = LaurentPoly::add(field, &q, &term);
            rem = LaurentPoly::sub(field, &rem, &LaurentPoly::mul(field, &term, d));
        }
        Some(q)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms()
            .map(|(e, c)| match (e, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (e, 1) => format!("t^{e}"),
                (e, c) => format!("{c}t^{e}"),
            })
            .collect();
        write!(f, "{}", rendered.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u8) -> SmallField {
        SmallField::new(q).unwrap()
    }

    #[test]
    fn canonical_trimming() {
        let p = LaurentPoly::from_coeffs(-2, vec![0, 1, 0, 2, 0]);
        assert_eq!(p.val(), Some(-1));
        assert_eq!(p.deg(), Some(1));
        assert_eq!(p.coeff(-1), 1);
        assert_eq!(p.coeff(0), 0);
        assert_eq!(p.coeff(1), 2);
        assert!(LaurentPoly::from_coeffs(5, vec![0, 0]).is_zero());
    }

    #[test]
    fn arithmetic_over_f3() {
        let field = f(3);
        let x = LaurentPoly::from_coeffs(0, vec![1, 2]); // 1 + 2t
        let y = LaurentPoly::from_coeffs(-1, vec![1, 1]); // t^-1 + 1
        let sum = LaurentPoly::add(&field, &x, &y);
        assert_eq!(sum, LaurentPoly::from_coeffs(-1, vec![1, 2, 2]));
        let prod = LaurentPoly::mul(&field, &x, &y);
        // (1+2t)(t^-1+1) = t^-1 + 1 + 2 + 2t = t^-1 + 2t (3 = 0)
        assert_eq!(prod, LaurentPoly::from_coeffs(-1, vec![1, 0, 2]));
        assert!(LaurentPoly::sub(&field, &x, &x).is_zero());
    }

    #[test]
    fn addition_cancels_to_zero_with_trim() {
        let field = f(2);
        let x = LaurentPoly::from_coeffs(0, vec![1, 1]);
        let y = LaurentPoly::from_coeffs(0, vec![1, 0, 1]);
        // (1+t) + (1+t^2) = t + t^2 over F_2
        let sum = LaurentPoly::add(&field, &x, &y);
        assert_eq!(sum, LaurentPoly::from_coeffs(1, vec![1, 1]));
    }

    #[test]
    fn polynomial_side_predicates() {
        assert!(LaurentPoly::zero().is_polynomial());
        assert!(LaurentPoly::zero().is_inverse_polynomial());
        assert!(LaurentPoly::monomial(1, 3).is_polynomial());
        assert!(!LaurentPoly::monomial(1, 3).is_inverse_polynomial());
        assert!(LaurentPoly::monomial(1, -2).is_inverse_polynomial());
        assert!(LaurentPoly::constant(2).is_polynomial());
        assert!(LaurentPoly::constant(2).is_inverse_polynomial());
    }

    #[test]
    fn exact_division() {
        let field = f(3);
        let a = LaurentPoly::from_coeffs(0, vec![1, 2]); // 1+2t
        let b = LaurentPoly::from_coeffs(-1, vec![2, 1]); // 2t^-1+1
        let prod = LaurentPoly::mul(&field, &a, &b);
        assert_eq!(prod.div_exact(&field, &a).as_ref(), Some(&b));
        assert_eq!(prod.div_exact(&field, &b).as_ref(), Some(&a));
        // 1 + t is not divisible by t^-1 + 1 + t over F_3 within Laurent polys
        let c = LaurentPoly::from_coeffs(-1, vec![1, 1, 1]);
        let d = LaurentPoly::from_coeffs(0, vec![1, 1]);
        assert_eq!(d.div_exact(&field, &c), None);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::from_coeffs(-1, vec![1, 0, 2]).to_string(), "t^-1+2t");
        assert_eq!(LaurentPoly::one().to_string(), "1");
    }
}
