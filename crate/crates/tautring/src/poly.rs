//! Sparse polynomials in the generators `λ_1, ..., λ_g` with rational
//! coefficients, prior to any reduction modulo the defining ideal.
//!
//! `λ_i` carries weighted degree `i`. Monomials are exponent vectors of
//! fixed length `g`, ordered lexicographically, which keeps every
//! construction in the crate deterministic.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::Rational;

/// Exponent vector of a monomial: entry `i` is the exponent of `λ_{i+1}`.
pub type ExpVec = Vec<u8>;

/// Weighted degree `sum (i+1) * e_i` of an exponent vector.
pub fn expvec_degree(exp: &ExpVec) -> u32 {
    exp.iter()
        .enumerate()
        .map(|(i, &e)| (i as u32 + 1) * e as u32)
        .sum()
}

/// True if no exponent exceeds 1.
pub fn expvec_is_squarefree(exp: &ExpVec) -> bool {
    exp.iter().all(|&e| e <= 1)
}

/// A polynomial in `λ_1, ..., λ_g` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPoly {
    genus: u32,
    terms: BTreeMap<ExpVec, Rational>,
}

impl LambdaPoly {
    pub fn zero(genus: u32) -> Self {
        LambdaPoly {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(genus: u32) -> Self {
        let mut p = LambdaPoly::zero(genus);
        p.add_term(vec![0; genus as usize], Rational::from_integer(1.into()));
        p
    }

    /// Single generator `λ_k` (1-based). Panics if `k` is out of range.
    pub fn generator(genus: u32, k: u32) -> Self {
        assert!(k >= 1 && k <= genus, "generator index out of range");
        let mut exp = vec![0u8; genus as usize];
        exp[k as usize - 1] = 1;
        let mut p = LambdaPoly::zero(genus);
        p.add_term(exp, Rational::from_integer(1.into()));
        p
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add `coeff * λ^exp`, dropping the entry if the total cancels.
    pub fn add_term(&mut self, exp: ExpVec, coeff: Rational) {
        assert_eq!(exp.len(), self.genus as usize, "exponent vector length");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &LambdaPoly) -> LambdaPoly {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, by: &Rational) -> LambdaPoly {
        if by.is_zero() {
            return LambdaPoly::zero(self.genus);
        }
        let mut out = LambdaPoly::zero(self.genus);
        for (e, c) in self.terms() {
            out.terms.insert(e.clone(), c * by);
        }
        out
    }

    pub fn mul(&self, other: &LambdaPoly) -> LambdaPoly {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        let mut out = LambdaPoly::zero(self.genus);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let exp: ExpVec = ea
                    .iter()
                    .zip(eb.iter())
                    .map(|(&x, &y)| {
                        x.checked_add(y).expect("exponent overflow")
                    })
                    .collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    /// Split into homogeneous parts by weighted degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, LambdaPoly> {
        let mut parts: BTreeMap<u32, LambdaPoly> = BTreeMap::new();
        for (e, c) in self.terms() {
            let d = expvec_degree(e);
            parts
                .entry(d)
                .or_insert_with(|| LambdaPoly::zero(self.genus))
                .add_term(e.clone(), c.clone());
        }
        parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    #[test]
    fn degree_and_squarefree() {
        assert_eq!(expvec_degree(&vec![1, 0, 1]), 4);
        assert_eq!(expvec_degree(&vec![2, 1]), 4);
        assert!(expvec_is_squarefree(&vec![1, 0, 1]));
        assert!(!expvec_is_squarefree(&vec![2, 0]));
    }

    #[test]
    fn cancellation_removes_terms() {
        let g = 2;
        let mut p = LambdaPoly::generator(g, 1);
        p.add_term(vec![1, 0], rat_int(-1));
        assert!(p.is_zero());
    }

    #[test]
    fn product_collects_degrees() {
        let g = 3;
        // (λ1 + λ2)^2 = λ1^2 + 2 λ1 λ2 + λ2^2
        let s = LambdaPoly::generator(g, 1).add(&LambdaPoly::generator(g, 2));
        let sq = s.mul(&s);
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.terms.get(&vec![1, 1, 0]), Some(&rat_int(2)));
        let parts = sq.homogeneous_parts();
        assert_eq!(parts.len(), 3); // degrees 2, 3, 4
        assert!(parts.contains_key(&3));
    }
}
