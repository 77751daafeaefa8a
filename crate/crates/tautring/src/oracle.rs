//! Independent brute-force model of the quotient ring, used as a
//! correctness oracle for the reduction tables in [`crate::ring`].
//!
//! Nothing here rewrites: for each weighted degree `d`, the full span of
//! monomials `λ^e` with `sum i e_i = d` is enumerated, the ideal slice
//! spanned by `p_{2k} * (monomial of degree d - 2k)` is row-reduced, and
//! every monomial is expressed in the square-free complement by reading the
//! reduced echelon form. This favors obviousness over speed.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::Rational;
use crate::linalg::QMatrix;
use crate::poly::{expvec_degree, expvec_is_squarefree, ExpVec, LambdaPoly};
use crate::ring::{mumford_graded_relation, RingContext, SquareFreeMonomial, TautClass, Variant};

/// All exponent vectors of weighted degree `degree` in `λ_1 .. λ_genus`,
/// in lexicographic order.
pub fn monomials_of_degree(genus: u32, degree: u32) -> Vec<ExpVec> {
    let mut out = Vec::new();
    let mut current = vec![0u8; genus as usize];
    fn rec(pos: usize, remaining: u32, genus: u32, current: &mut ExpVec, out: &mut Vec<ExpVec>) {
        if pos == genus as usize {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let weight = pos as u32 + 1;
        let max_e = remaining / weight;
        for e in 0..=max_e.min(u8::MAX as u32) {
            current[pos] = e as u8;
            rec(pos + 1, remaining - e * weight, genus, current, out);
        }
        current[pos] = 0;
    }
    rec(0, degree, genus, &mut current, &mut out);
    out.sort();
    out
}

/// One weighted degree of the quotient, computed by dense row reduction.
pub struct DegreeSlice {
    genus: u32,
    degree: u32,
    monomials: Vec<ExpVec>,
    index: BTreeMap<ExpVec, usize>,
    /// rank of the relation matrix on this degree
    rank: usize,
    squarefree_count: usize,
    /// normal form of each monomial over square-free bitmasks
    projection: Vec<Vec<(u32, Rational)>>,
}

impl DegreeSlice {
    pub fn build(genus: u32, degree: u32) -> DegreeSlice {
        let monomials = monomials_of_degree(genus, degree);
        let total = monomials.len();

        // columns: non-square-free monomials first, square-free last, each
        // group in lexicographic order
        let mut nonsf: Vec<usize> = Vec::new();
        let mut sf: Vec<usize> = Vec::new();
        for (i, m) in monomials.iter().enumerate() {
            if expvec_is_squarefree(m) {
                sf.push(i);
            } else {
                nonsf.push(i);
            }
        }
        let col_of_monomial: BTreeMap<usize, usize> = nonsf
            .iter()
            .chain(sf.iter())
            .enumerate()
            .map(|(col, &mono)| (mono, col))
            .collect();

        // relation rows: p_{2k} times every monomial of degree d - 2k
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for k in 1..=genus {
            if 2 * k > degree {
                break;
            }
            let rel = mumford_graded_relation(genus, k).expect("k in range");
            for lower in monomials_of_degree(genus, degree - 2 * k) {
                let mut row = vec![Rational::zero(); total];
                for (exp, coeff) in rel.terms() {
                    let prod: ExpVec = exp
                        .iter()
                        .zip(lower.iter())
                        .map(|(&a, &b)| a + b)
                        .collect();
                    let mono_idx = monomials.binary_search(&prod).expect("degree bookkeeping");
                    row[col_of_monomial[&mono_idx]] += coeff;
                }
                rows.push(row);
            }
        }

        let mut matrix = if rows.is_empty() {
            QMatrix::zeros(0, total)
        } else {
            QMatrix::from_rows(rows)
        };
        let pivots = matrix.rref();
        let rank = pivots.len();

        // Every pivot must sit on a non-square-free column: a relation
        // supported on square-free monomials alone would contradict their
        // linear independence in the quotient. Together with the rank count
        // this pins the quotient dimension to the square-free count.
        assert!(
            pivots.iter().all(|&c| c < nonsf.len()),
            "pivot on a square-free column at genus {genus}, degree {degree}"
        );
        assert_eq!(
            rank,
            nonsf.len(),
            "rank defect at genus {genus}, degree {degree}"
        );

        let sf_mask: Vec<u32> = sf
            .iter()
            .map(|&i| {
                let mut bits = 0u32;
                for (pos, &e) in monomials[i].iter().enumerate() {
                    if e == 1 {
                        bits |= 1 << pos;
                    }
                }
                bits
            })
            .collect();

        let mut projection: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); total];
        for (sf_pos, &mono_idx) in sf.iter().enumerate() {
            projection[mono_idx] = vec![(sf_mask[sf_pos], Rational::from_integer(1.into()))];
        }
        for (row, &col) in pivots.iter().enumerate() {
            let mono_idx = nonsf[col];
            let mut nf = Vec::new();
            for (sf_pos, &_) in sf.iter().enumerate() {
                let c = matrix.get(row, nonsf.len() + sf_pos);
                if !c.is_zero() {
                    nf.push((sf_mask[sf_pos], -c.clone()));
                }
            }
            projection[mono_idx] = nf;
        }

        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();

        DegreeSlice {
            genus,
            degree,
            monomials,
            index,
            rank,
            squarefree_count: sf.len(),
            projection,
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn squarefree_count(&self) -> usize {
        self.squarefree_count
    }

    /// Normal form of one monomial of this degree.
    pub fn normal_form_of(&self, exp: &ExpVec) -> &[(u32, Rational)] {
        let idx = self.index[exp];
        &self.projection[idx]
    }
}

/// Reduction result together with a diagnostic flag recording whether any
/// input term exceeded the top degree (such terms are correctly zero, but
/// the caller may want to know).
pub struct OracleReduction {
    pub class: TautClass,
    pub degree_truncated: bool,
}

/// A disagreement between the ring tables and the oracle.
#[derive(Debug)]
pub struct OracleMismatch {
    pub generator: u32,
    pub monomial: SquareFreeMonomial,
    pub table: TautClass,
    pub oracle: TautClass,
}

/// Outcome of comparing every reduction-table entry against the oracle.
pub struct OracleCompareReport {
    pub genus: u32,
    pub entries_checked: usize,
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleCompareReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Slice cache plus the entry points `normal_form` and `compare`.
pub struct Oracle {
    genus: u32,
    slices: BTreeMap<u32, DegreeSlice>,
}

impl Oracle {
    pub fn new(genus: u32) -> Oracle {
        Oracle {
            genus,
            slices: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn slice(&mut self, degree: u32) -> &DegreeSlice {
        let genus = self.genus;
        self.slices
            .entry(degree)
            .or_insert_with(|| DegreeSlice::build(genus, degree))
    }

    /// Image of an arbitrary polynomial in the square-free basis, computed
    /// solely by row reduction. Terms of weighted degree above `g(g+1)/2`
    /// reduce to zero and set the diagnostic flag.
    pub fn normal_form(&mut self, p: &LambdaPoly) -> OracleReduction {
        assert_eq!(p.genus(), self.genus, "genus mismatch in oracle");
        let top = Variant::Compact.top_degree(self.genus);
        let mut truncated = false;
        let mut class = TautClass::zero(self.genus, Variant::Compact);
        for (degree, part) in p.homogeneous_parts() {
            if degree > top {
                truncated = true;
                continue;
            }
            let slice = self.slice(degree);
            let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
            for (exp, coeff) in part.terms() {
                for (mask, c) in slice.normal_form_of(exp) {
                    let entry = acc.entry(*mask).or_insert_with(Rational::zero);
                    *entry += coeff * c;
                }
            }
            for (mask, c) in acc {
                class.add_term(SquareFreeMonomial::from_bits(mask), c);
            }
        }
        OracleReduction {
            class,
            degree_truncated: truncated,
        }
    }

    /// Check every reduction-table entry of `ring` against this oracle.
    pub fn compare(&mut self, ring: &RingContext) -> OracleCompareReport {
        assert_eq!(ring.genus(), self.genus, "genus mismatch in oracle");
        let g = self.genus;
        let mut entries_checked = 0;
        let mut mismatches = Vec::new();
        for k in 1..=g {
            for bits in 0..1u32 << g {
                let mono = SquareFreeMonomial::from_bits(bits);
                let mut exp = vec![0u8; g as usize];
                for i in mono.indices() {
                    exp[i as usize - 1] = 1;
                }
                exp[k as usize - 1] += 1;
                let mut poly = LambdaPoly::zero(g);
                poly.add_term(exp, Rational::from_integer(1.into()));
                let oracle_nf = self.normal_form(&poly).class;
                let table_nf = ring.table_entry(k, mono);
                entries_checked += 1;
                if oracle_nf != table_nf {
                    mismatches.push(OracleMismatch {
                        generator: k,
                        monomial: mono,
                        table: table_nf,
                        oracle: oracle_nf,
                    });
                }
            }
        }
        OracleCompareReport {
            genus: g,
            entries_checked,
            mismatches,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::ring::build_ring;

    #[test]
    fn monomial_enumeration() {
        // degree 4 at g=2: λ1^4, λ1^2 λ2, λ2^2
        let monos = monomials_of_degree(2, 4);
        assert_eq!(monos, vec![vec![0, 2], vec![2, 1], vec![4, 0]]);
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn slice_rank_counts_squarefree_complement() {
        for g in 1..=4u32 {
            for d in 0..=Variant::Compact.top_degree(g) {
                let slice = DegreeSlice::build(g, d);
                assert_eq!(
                    slice.rank() + slice.squarefree_count(),
                    slice.monomial_count(),
                    "g={g}, d={d}"
                );
            }
        }
    }

    #[test]
    fn normal_forms_match_hand_reductions() {
        let mut oracle = Oracle::new(2);

        // λ1^2 = 2 λ2 at g=2
        let mut p = LambdaPoly::zero(2);
        p.add_term(vec![2, 0], rat_int(1));
        let red = oracle.normal_form(&p);
        assert!(!red.degree_truncated);
        assert_eq!(
            red.class,
            TautClass::monomial(2, Variant::Compact, &[2])
                .unwrap()
                .scaled(&rat_int(2))
        );

        // λ1^3 = 2 λ1 λ2 at g=2
        let mut p = LambdaPoly::zero(2);
        p.add_term(vec![3, 0], rat_int(1));
        assert_eq!(
            oracle.normal_form(&p).class,
            TautClass::monomial(2, Variant::Compact, &[1, 2])
                .unwrap()
                .scaled(&rat_int(2))
        );

        // square-free input is fixed
        let sf = TautClass::monomial(2, Variant::Compact, &[1, 2]).unwrap();
        assert_eq!(oracle.normal_form(&sf.to_poly()).class, sf);
    }

    #[test]
    fn degree_overflow_is_flagged() {
        let mut oracle = Oracle::new(2);
        let mut p = LambdaPoly::zero(2);
        p.add_term(vec![4, 0], rat_int(1)); // degree 4 > 3
        let red = oracle.normal_form(&p);
        assert!(red.degree_truncated);
        assert!(red.class.is_zero());
    }

    #[test]
    fn tables_agree_with_oracle_at_small_genus() {
        for g in 1..=3 {
            let ring = build_ring(g).unwrap();
            let report = Oracle::new(g).compare(&ring);
            assert_eq!(report.entries_checked, (g as usize) << g);
            assert!(report.is_clean(), "mismatches at g={g}");
        }
    }
}
