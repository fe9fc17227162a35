//! Table-driven arithmetic for the tiny coefficient fields. Elements are
//! encoded as 0..q; for the prime fields that is the residue itself, for the
//! four-element field the two bits are the coordinates in the basis {1, x}
//! over the prime field, with x² = x + 1.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallField {
    q: u8,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl SmallField {
    pub fn new(q: u8) -> Result<SmallField> {
        if ![2, 3, 4, 5].contains(&q) {
            return Err(Error::Precondition(format!(
                "field size {q} not supported (need one of 2, 3, 4, 5)"
            )));
        }
        let n = usize::from(q);
        let raw_add = |a: u8, b: u8| -> u8 {
            if q == 4 {
                a ^ b
            } else {
                (a + b) % q
            }
        };
        let raw_mul = |a: u8, b: u8| -> u8 {
            if q == 4 {
                // multiply (a0 + a1 x)(b0 + b1 x) with x^2 = x + 1 over F_2
                let (a0, a1) = (a & 1, a >> 1);
                let (b0, b1) = (b & 1, b >> 1);
                let c0 = (a0 & b0) ^ (a1 & b1);
                let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
                c0 | (c1 << 1)
            } else {
                (a * b) % q
            }
        };
        let add: Vec<Vec<u8>> = (0..q)
            .map(|a| (0..q).map(|b| raw_add(a, b)).collect())
            .collect();
        let mul: Vec<Vec<u8>> = (0..q)
            .map(|a| (0..q).map(|b| raw_mul(a, b)).collect())
            .collect();
        let neg: Vec<u8> = (0..q)
            .map(|a| (0..q).find(|&b| raw_add(a, b) == 0).expect("negative"))
            .collect();
        let mut inv = vec![0u8; n];
        for a in 1..q {
            inv[usize::from(a)] = (1..q).find(|&b| raw_mul(a, b) == 1).expect("inverse");
        }
        Ok(SmallField { q, add, mul, neg, inv })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> + '_ {
        0..self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[usize::from(a)][usize::from(b)]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[usize::from(a)][usize::from(b)]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[usize::from(a)]
    }

    /// Multiplicative inverse; calling with 0 is a programming error.
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv[usize::from(a)]
    }

    /// a / b with b != 0.
    pub fn div(&self, a: u8, b: u8) -> u8 {
        self.mul(a, self.inv(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsupported_sizes() {
        assert!(SmallField::new(1).is_err());
        assert!(SmallField::new(6).is_err());
        assert!(SmallField::new(7).is_err());
    }

    #[test]
    fn field_axioms_hold_exhaustively() {
        for q in [2u8, 3, 4, 5] {
            let f = SmallField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity q={q}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn four_element_field_has_characteristic_two() {
        let f = SmallField::new(4).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, a), 0);
        }
        // x * (x+1) = x^2 + x = 1
        assert_eq!(f.mul(2, 3), 1);
    }
}
