//! The tautological ring of the (compactified) moduli of principally
//! polarized abelian varieties in its square-free monomial basis.
//!
//! The ring is `Q[λ_1, ..., λ_g]` modulo the ideal generated by the graded
//! pieces of `(1 + λ_1 + ... + λ_g)(1 - λ_1 + λ_2 - ...) - 1`. The 2^g
//! square-free monomials `λ_I`, `I ⊆ {1, ..., g}`, form a basis of the
//! quotient, concentrated in weighted degrees `0 .. g(g+1)/2`.
//!
//! Three variants share the same reduction tables:
//!
//! * `Compact` — the full quotient ring, integration weighted by `gamma_g`;
//! * `Lagrangian` — the Chow ring of the Lagrangian Grassmannian `LG(g)`,
//!   identical as a ring, integration normalized so the full monomial has
//!   degree 1;
//! * `Open` — the further quotient by `(λ_g)`, whose basis consists of the
//!   square-free monomials not containing `λ_g`.
//!
//! Normal forms are computed by rewriting with the square rule
//! `λ_k^2 = 2 sum_{i=1}^{k} (-1)^{i-1} λ_{k-i} λ_{k+i}` (with `λ_0 = 1` and
//! `λ_j = 0` for `j > g`): each application replaces a repeated index pair
//! `{k, k}` by the strictly dominance-larger `{k-i, k+i}`, so the rewriting
//! terminates, and linear independence of the square-free monomials makes
//! the result order-independent. The `oracle` module re-derives the same
//! normal forms by dense row reduction with no rewriting, and the two are
//! compared entry by entry in the test suites.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, gamma_g, parse_rational, Rational};
use crate::poly::{ExpVec, LambdaPoly};

/// Hard cap on the genus for ring construction; tables, basis enumeration
/// and monomial spans all stay in the seconds-to-minutes range below it.
pub const MAX_GENUS: u32 = 10;

/// Genus beyond which front ends should demand an explicit opt-in flag.
pub const DEFAULT_GENUS_CAP: u32 = 8;

/// Ring variant: which moduli-space normalization a class lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Toroidal compactification; socle in degree `g(g+1)/2`.
    Compact,
    /// Open moduli space, quotient by `(λ_g)`; socle in degree `g(g-1)/2`.
    Open,
    /// Lagrangian Grassmannian normalization (same ring as `Compact`).
    Lagrangian,
}

impl Variant {
    /// Wire code used in JSON and CLI flags.
    pub fn code(self) -> &'static str {
        match self {
            Variant::Compact => "cpt",
            Variant::Open => "open",
            Variant::Lagrangian => "lg",
        }
    }

    pub fn parse(code: &str) -> Result<Variant, String> {
        match code {
            "cpt" => Ok(Variant::Compact),
            "open" => Ok(Variant::Open),
            "lg" => Ok(Variant::Lagrangian),
            other => Err(format!(
                "unknown variant `{other}` (expected `cpt`, `open` or `lg`)"
            )),
        }
    }

    /// Top nonzero degree of the ring at the given genus.
    pub fn top_degree(self, genus: u32) -> u32 {
        match self {
            Variant::Compact | Variant::Lagrangian => genus * (genus + 1) / 2,
            Variant::Open => genus * (genus - 1) / 2,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Errors from class construction and ring operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassError {
    GenusMismatch { left: u32, right: u32 },
    VariantMismatch { left: Variant, right: Variant },
    WrongVariant { op: &'static str, variant: Variant },
    InvalidIndex { index: u32, genus: u32 },
    DuplicateIndex { index: u32 },
    OpenTopIndex { genus: u32 },
}

impl fmt::Display for ClassError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassError::GenusMismatch { left, right } => {
                write!(f, "genus mismatch: {left} vs {right}")
            }
            ClassError::VariantMismatch { left, right } => {
                write!(f, "variant mismatch: {left} vs {right}")
            }
            ClassError::WrongVariant { op, variant } => {
                write!(f, "operation `{op}` is not defined for variant `{variant}`")
            }
            ClassError::InvalidIndex { index, genus } => {
                write!(f, "index {index} out of range 1..={genus}")
            }
            ClassError::DuplicateIndex { index } => {
                write!(f, "duplicate index {index} in square-free monomial")
            }
            ClassError::OpenTopIndex { genus } => {
                write!(f, "monomial contains λ_{genus}, which vanishes in the open variant")
            }
        }
    }
}

impl std::error::Error for ClassError {}

/// Errors from ring construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingError {
    GenusOutOfRange { genus: u32, max: u32 },
    IndexOutOfRange { index: u32, genus: u32 },
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::GenusOutOfRange { genus, max } => {
                write!(f, "genus {genus} outside supported range 1..={max}")
            }
            RingError::IndexOutOfRange { index, genus } => {
                write!(f, "generator index {index} out of range 1..={genus}")
            }
        }
    }
}

impl std::error::Error for RingError {}

/// A square-free monomial `λ_I` for `I ⊆ {1, ..., g}`, stored as a bitmask
/// (bit `i-1` set means `λ_i` appears). The empty set is the ring unit.
///
/// Ordering is lexicographic on the ascending index list, so
/// `1 < λ_1 < λ_1 λ_2 < λ_1 λ_3 < λ_2 < ...`; this is the canonical term
/// order used in every serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SquareFreeMonomial {
    bits: u32,
}

impl SquareFreeMonomial {
    pub const UNIT: SquareFreeMonomial = SquareFreeMonomial { bits: 0 };

    pub(crate) fn from_bits(bits: u32) -> Self {
        SquareFreeMonomial { bits }
    }

    pub(crate) fn bits(self) -> u32 {
        self.bits
    }

    /// The full monomial `λ_1 λ_2 ... λ_g`.
    pub fn full(genus: u32) -> Self {
        SquareFreeMonomial {
            bits: (1u32 << genus) - 1,
        }
    }

    /// Build from a list of distinct indices in `1..=genus`.
    pub fn from_indices(indices: &[u32], genus: u32) -> Result<Self, ClassError> {
        let mut bits = 0u32;
        for &i in indices {
            if i < 1 || i > genus {
                return Err(ClassError::InvalidIndex { index: i, genus });
            }
            let bit = 1u32 << (i - 1);
            if bits & bit != 0 {
                return Err(ClassError::DuplicateIndex { index: i });
            }
            bits |= bit;
        }
        Ok(SquareFreeMonomial { bits })
    }

    /// Ascending list of generator indices.
    pub fn indices(self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut b = self.bits;
        while b != 0 {
            out.push(b.trailing_zeros() + 1);
            b &= b - 1;
        }
        out
    }

    /// Weighted degree: the sum of the indices.
    pub fn degree(self) -> u32 {
        self.indices().iter().sum()
    }

    pub fn is_unit(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, index: u32) -> bool {
        index >= 1 && self.bits & (1 << (index - 1)) != 0
    }

    /// Text form with indices in descending order: `l3*l2`, or `1` for the
    /// unit monomial.
    pub fn render(self) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let mut idx = self.indices();
        idx.reverse();
        idx.iter()
            .map(|i| format!("l{i}"))
            .collect::<Vec<_>>()
            .join("*")
    }

    fn as_expvec(self, genus: u32) -> ExpVec {
        let mut exp = vec![0u8; genus as usize];
        for i in self.indices() {
            exp[i as usize - 1] = 1;
        }
        exp
    }
}

impl Ord for SquareFreeMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.bits;
        let mut b = other.bits;
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                (false, false) => {}
            }
            let ia = a.trailing_zeros();
            let ib = b.trailing_zeros();
            if ia != ib {
                return ia.cmp(&ib);
            }
            a &= a - 1;
            b &= b - 1;
        }
    }
}

impl PartialOrd for SquareFreeMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A tautological class: a rational linear combination of square-free
/// monomials, tagged with its genus and ring variant.
///
/// The term map is the normal form; two classes are equal exactly when
/// their term maps are identical. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautClass {
    genus: u32,
    variant: Variant,
    terms: BTreeMap<SquareFreeMonomial, Rational>,
}

impl TautClass {
    pub fn zero(genus: u32, variant: Variant) -> Self {
        TautClass {
            genus,
            variant,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(genus: u32, variant: Variant) -> Self {
        let mut c = TautClass::zero(genus, variant);
        c.add_term(SquareFreeMonomial::UNIT, Rational::one());
        c
    }

    /// The class of a single square-free monomial with coefficient 1.
    pub fn monomial(genus: u32, variant: Variant, indices: &[u32]) -> Result<Self, ClassError> {
        let mono = SquareFreeMonomial::from_indices(indices, genus)?;
        if variant == Variant::Open && mono.contains(genus) {
            return Err(ClassError::OpenTopIndex { genus });
        }
        let mut c = TautClass::zero(genus, variant);
        c.add_term(mono, Rational::one());
        Ok(c)
    }

    pub fn from_terms<I>(genus: u32, variant: Variant, terms: I) -> Result<Self, ClassError>
    where
        I: IntoIterator<Item = (SquareFreeMonomial, Rational)>,
    {
        let mut c = TautClass::zero(genus, variant);
        for (mono, coeff) in terms {
            for i in mono.indices() {
                if i > genus {
                    return Err(ClassError::InvalidIndex { index: i, genus });
                }
            }
            if variant == Variant::Open && mono.contains(genus) {
                return Err(ClassError::OpenTopIndex { genus });
            }
            c.add_term(mono, coeff);
        }
        Ok(c)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SquareFreeMonomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, mono: &SquareFreeMonomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, mono: SquareFreeMonomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
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

    fn assert_compatible(&self, other: &TautClass) {
        assert_eq!(self.genus, other.genus, "genus mismatch in class arithmetic");
        assert_eq!(
            self.variant, other.variant,
            "variant mismatch in class arithmetic"
        );
    }

    pub fn plus(&self, other: &TautClass) -> TautClass {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn minus(&self, other: &TautClass) -> TautClass {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn scaled(&self, by: &Rational) -> TautClass {
        let mut out = TautClass::zero(self.genus, self.variant);
        if by.is_zero() {
            return out;
        }
        for (m, c) in self.terms() {
            out.terms.insert(*m, c * by);
        }
        out
    }

    /// Weighted degree when the class is homogeneous; `None` for the zero
    /// class or a mixed-degree sum.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next()?;
        if degrees.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// The part of the class in a single weighted degree.
    pub fn degree_part(&self, degree: u32) -> TautClass {
        let mut out = TautClass::zero(self.genus, self.variant);
        for (m, c) in self.terms() {
            if m.degree() == degree {
                out.terms.insert(*m, c.clone());
            }
        }
        out
    }

    /// Drop every term containing `λ_g` and retag as the open variant.
    pub fn restrict_open(&self) -> Result<TautClass, ClassError> {
        if self.variant != Variant::Compact {
            return Err(ClassError::WrongVariant {
                op: "restrict_open",
                variant: self.variant,
            });
        }
        let mut out = TautClass::zero(self.genus, Variant::Open);
        for (m, c) in self.terms() {
            if !m.contains(self.genus) {
                out.terms.insert(*m, c.clone());
            }
        }
        Ok(out)
    }

    /// Re-tag between the `Compact` and `Lagrangian` variants (identical
    /// rings), or lift an `Open` class to `Compact` on the same monomials.
    pub fn with_variant(&self, variant: Variant) -> Result<TautClass, ClassError> {
        if variant == Variant::Open && self.variant != Variant::Open {
            // a genuine quotient map must go through restrict_open
            return Err(ClassError::WrongVariant {
                op: "with_variant(open)",
                variant: self.variant,
            });
        }
        let mut out = self.clone();
        out.variant = variant;
        Ok(out)
    }

    /// View as an unreduced polynomial (it is already in normal form).
    pub fn to_poly(&self) -> LambdaPoly {
        let mut p = LambdaPoly::zero(self.genus);
        for (m, c) in self.terms() {
            p.add_term(m.as_expvec(self.genus), c.clone());
        }
        p
    }

    /// Deterministic text rendering: terms in canonical order as
    /// `coeff * l3*l2`, joined by ` + `; the unit monomial renders as the
    /// bare coefficient and the zero class as `0`.
    pub fn render_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|(m, c)| {
                if m.is_unit() {
                    format_rational(c)
                } else {
                    format!("{} * {}", format_rational(c), m.render())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Coefficients of the Poincaré polynomial `prod_{i=1}^{g} (1 + t^i)`
/// (the open variant stops at `g - 1`). Entry `d` is the basis dimension in
/// weighted degree `d`.
pub fn poincare_coefficients(genus: u32, variant: Variant) -> Vec<u64> {
    let upper = match variant {
        Variant::Compact | Variant::Lagrangian => genus,
        Variant::Open => genus - 1,
    };
    let top: usize = (1..=upper as usize).sum();
    let mut coeffs = vec![0u64; top + 1];
    coeffs[0] = 1;
    for i in 1..=upper as usize {
        for d in (i..=top).rev() {
            coeffs[d] += coeffs[d - i];
        }
    }
    coeffs
}

type NormalForm = Vec<(u32, Rational)>;

/// Immutable per-genus reduction tables: for every generator `λ_k` and every
/// basis monomial, the normal form of their product.
///
/// Construction is single-threaded; afterwards the context is read-only and
/// safe to share across threads.
pub struct RingContext {
    genus: u32,
    /// `tables[k-1][mask]` is the normal form of `λ_k * λ_mask`.
    tables: Vec<Vec<NormalForm>>,
}

/// Build the reduction tables for a genus. Fails outside `1..=MAX_GENUS`.
pub fn build_ring(genus: u32) -> Result<RingContext, RingError> {
    if genus < 1 || genus > MAX_GENUS {
        return Err(RingError::GenusOutOfRange {
            genus,
            max: MAX_GENUS,
        });
    }
    let size = 1usize << genus;
    let mut memo: HashMap<ExpVec, NormalForm> = HashMap::new();
    let mut tables = Vec::with_capacity(genus as usize);
    for k in 1..=genus {
        let bit = 1u32 << (k - 1);
        let mut per_gen = Vec::with_capacity(size);
        for mask in 0..size as u32 {
            if mask & bit == 0 {
                per_gen.push(vec![(mask | bit, Rational::one())]);
            } else {
                let mono = SquareFreeMonomial::from_bits(mask);
                let mut exp = mono.as_expvec(genus);
                exp[k as usize - 1] += 1;
                per_gen.push(reduce_expvec(&exp, genus, &mut memo));
            }
        }
        tables.push(per_gen);
    }
    Ok(RingContext { genus, tables })
}

/// Rewrite an exponent vector to its square-free normal form with the
/// square rule, largest squared index first. Each step strictly increases
/// the sorted index multiset in dominance order, so the recursion
/// terminates; memoization keeps it polynomial in practice.
fn reduce_expvec(
    exp: &ExpVec,
    genus: u32,
    memo: &mut HashMap<ExpVec, NormalForm>,
) -> NormalForm {
    if let Some(hit) = memo.get(exp) {
        return hit.clone();
    }
    let result = match exp.iter().rposition(|&e| e >= 2) {
        None => {
            let mut bits = 0u32;
            for (i, &e) in exp.iter().enumerate() {
                if e == 1 {
                    bits |= 1 << i;
                }
            }
            vec![(bits, Rational::one())]
        }
        Some(pos) => {
            let r = pos as u32 + 1;
            let mut base = exp.clone();
            base[pos] -= 2;
            let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
            for i in 1..=r {
                let hi = r + i;
                if hi > genus {
                    continue;
                }
                let mut next = base.clone();
                next[hi as usize - 1] += 1;
                if i < r {
                    next[(r - i) as usize - 1] += 1;
                }
                let coeff = if i % 2 == 1 {
                    Rational::from_integer(2.into())
                } else {
                    Rational::from_integer((-2).into())
                };
                for (mask, c) in reduce_expvec(&next, genus, memo) {
                    let entry = acc.entry(mask).or_insert_with(Rational::zero);
                    *entry += coeff.clone() * c;
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        }
    };
    memo.insert(exp.clone(), result.clone());
    result
}

impl RingContext {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    fn check_class(&self, a: &TautClass) -> Result<(), ClassError> {
        if a.genus != self.genus {
            return Err(ClassError::GenusMismatch {
                left: a.genus,
                right: self.genus,
            });
        }
        Ok(())
    }

    /// Normal form of `λ_k * a`.
    pub fn apply_generator(&self, k: u32, a: &TautClass) -> Result<TautClass, ClassError> {
        self.check_class(a)?;
        if k < 1 || k > self.genus {
            return Err(ClassError::InvalidIndex {
                index: k,
                genus: self.genus,
            });
        }
        if a.variant == Variant::Open && k == self.genus {
            return Ok(TautClass::zero(self.genus, Variant::Open));
        }
        let open = a.variant == Variant::Open;
        let gbit = 1u32 << (self.genus - 1);
        let table = &self.tables[k as usize - 1];
        let mut out = TautClass::zero(self.genus, a.variant);
        for (mono, c) in a.terms() {
            for (mask, tc) in &table[mono.bits() as usize] {
                if open && mask & gbit != 0 {
                    continue;
                }
                out.add_term(SquareFreeMonomial::from_bits(*mask), c * tc);
            }
        }
        Ok(out)
    }

    /// Normal form of a product of two basis monomials in the compact ring.
    fn basis_product(&self, ma: u32, mb: u32) -> NormalForm {
        if ma & mb == 0 {
            return vec![(ma | mb, Rational::one())];
        }
        let mut cur: BTreeMap<u32, Rational> = BTreeMap::new();
        cur.insert(ma, Rational::one());
        let mut rest = mb;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize; // 0-based
            rest &= rest - 1;
            let table = &self.tables[k];
            let mut next: BTreeMap<u32, Rational> = BTreeMap::new();
            for (mask, c) in &cur {
                for (m2, c2) in &table[*mask as usize] {
                    let entry = next.entry(*m2).or_insert_with(Rational::zero);
                    *entry += c * c2;
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        cur.into_iter().collect()
    }

    /// Normal-form product. Bilinear, commutative, associative; the unit is
    /// the empty monomial. Requires matching genus and variant.
    pub fn mul(&self, a: &TautClass, b: &TautClass) -> Result<TautClass, ClassError> {
        self.check_class(a)?;
        self.check_class(b)?;
        if a.variant != b.variant {
            return Err(ClassError::VariantMismatch {
                left: a.variant,
                right: b.variant,
            });
        }
        let open = a.variant == Variant::Open;
        let gbit = 1u32 << (self.genus - 1);
        let mut out = TautClass::zero(self.genus, a.variant);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let coeff = ca * cb;
                for (mask, c) in self.basis_product(ma.bits(), mb.bits()) {
                    if open && mask & gbit != 0 {
                        continue;
                    }
                    out.add_term(SquareFreeMonomial::from_bits(mask), &coeff * c);
                }
            }
        }
        Ok(out)
    }

    /// Product of a list of classes (empty product is the unit).
    pub fn product(
        &self,
        variant: Variant,
        factors: &[TautClass],
    ) -> Result<TautClass, ClassError> {
        let mut acc = TautClass::one(self.genus, variant);
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Normal form of an arbitrary polynomial in the λ generators.
    ///
    /// Reduction happens in the compact ring; for the open variant the
    /// result is then restricted (terms containing `λ_g` dropped).
    pub fn normal_form(&self, p: &LambdaPoly, variant: Variant) -> TautClass {
        assert_eq!(p.genus(), self.genus, "genus mismatch in normal_form");
        let mut memo: HashMap<ExpVec, NormalForm> = HashMap::new();
        let gbit = 1u32 << (self.genus - 1);
        let open = variant == Variant::Open;
        let mut out = TautClass::zero(self.genus, variant);
        for (exp, coeff) in p.terms() {
            for (mask, c) in reduce_expvec(exp, self.genus, &mut memo) {
                if open && mask & gbit != 0 {
                    continue;
                }
                out.add_term(SquareFreeMonomial::from_bits(mask), coeff * &c);
            }
        }
        out
    }

    /// Basis monomials of one weighted degree, in canonical order.
    pub fn basis(&self, degree: u32, variant: Variant) -> Vec<SquareFreeMonomial> {
        let mut out: Vec<SquareFreeMonomial> = (0..1u32 << self.genus)
            .map(SquareFreeMonomial::from_bits)
            .filter(|m| m.degree() == degree)
            .filter(|m| variant != Variant::Open || !m.contains(self.genus))
            .collect();
        out.sort();
        out
    }

    /// Per-degree basis dimensions.
    pub fn dimensions(&self, variant: Variant) -> Vec<u64> {
        let top = variant.top_degree(self.genus);
        (0..=top)
            .map(|d| self.basis(d, variant).len() as u64)
            .collect()
    }

    /// Direct table access for the oracle comparison: normal form of
    /// `λ_k * λ_mask` as a class.
    pub fn table_entry(&self, k: u32, mono: SquareFreeMonomial) -> TautClass {
        let mut out = TautClass::zero(self.genus, Variant::Compact);
        for (mask, c) in &self.tables[k as usize - 1][mono.bits() as usize] {
            out.add_term(SquareFreeMonomial::from_bits(*mask), c.clone());
        }
        out
    }
}

/// Degree-`2k` graded piece of Mumford's relation,
/// `p_{2k} = sum_{i+j=2k, 0<=i,j<=g} (-1)^j λ_i λ_j` (with `λ_0 = 1`),
/// which vanishes in the quotient ring. Normalized by the overall sign
/// `(-1)^k` so the coefficient of `λ_k^2` is `+1`; written out, this is the
/// square rule `λ_k^2 - 2 sum_{i=1}^{k} (-1)^{i-1} λ_{k-i} λ_{k+i}`.
pub fn mumford_graded_relation(genus: u32, k: u32) -> Result<LambdaPoly, RingError> {
    if k < 1 || k > genus {
        return Err(RingError::IndexOutOfRange { index: k, genus });
    }
    let overall = if k % 2 == 0 { 1 } else { -1 };
    let mut p = LambdaPoly::zero(genus);
    for i in 0..=2 * k {
        let j = 2 * k - i;
        if i > genus || j > genus {
            continue;
        }
        let mut exp = vec![0u8; genus as usize];
        if i > 0 {
            exp[i as usize - 1] += 1;
        }
        if j > 0 {
            exp[j as usize - 1] += 1;
        }
        let sign = if j % 2 == 0 { overall } else { -overall };
        p.add_term(exp, Rational::from_integer(sign.into()));
    }
    Ok(p)
}

/// Integration over the Lagrangian Grassmannian: the coefficient of the
/// full monomial `λ_1 ... λ_g`. Defined for the `Lagrangian` and `Compact`
/// variants.
pub fn integrate_lg(a: &TautClass) -> Result<Rational, ClassError> {
    if a.variant() == Variant::Open {
        return Err(ClassError::WrongVariant {
            op: "integrate_lg",
            variant: a.variant(),
        });
    }
    Ok(a.coeff(&SquareFreeMonomial::full(a.genus())))
}

/// Integration over the compact moduli space: `gamma_g` times the
/// Lagrangian-Grassmannian integral.
pub fn integrate_abar(a: &TautClass) -> Result<Rational, ClassError> {
    if a.variant() != Variant::Compact {
        return Err(ClassError::WrongVariant {
            op: "integrate_abar",
            variant: a.variant(),
        });
    }
    Ok(gamma_g(a.genus()) * a.coeff(&SquareFreeMonomial::full(a.genus())))
}

/// Integration over the open moduli space: lift to the compact variant,
/// multiply by `λ_g`, integrate. Independent of the lift because lifts
/// differ by multiples of `λ_g` and `λ_g^2 = 0`; concretely this is
/// `gamma_g` times the coefficient of `λ_1 ... λ_{g-1}`.
pub fn integrate_open(a: &TautClass) -> Result<Rational, ClassError> {
    if a.variant() != Variant::Open {
        return Err(ClassError::WrongVariant {
            op: "integrate_open",
            variant: a.variant(),
        });
    }
    let g = a.genus();
    let socle = SquareFreeMonomial::from_bits(SquareFreeMonomial::full(g).bits() >> 1);
    Ok(gamma_g(g) * a.coeff(&socle))
}

/// Eagerly built contexts for every genus up to a bound, immutable (and
/// freely shareable) afterwards.
pub struct RingCache {
    rings: BTreeMap<u32, RingContext>,
}

impl RingCache {
    pub fn up_to(gmax: u32) -> Result<RingCache, RingError> {
        let mut rings = BTreeMap::new();
        for g in 1..=gmax {
            rings.insert(g, build_ring(g)?);
        }
        Ok(RingCache { rings })
    }

    /// Panics when the genus was not prebuilt; cache construction is the
    /// caller's responsibility.
    pub fn get(&self, genus: u32) -> &RingContext {
        self.rings
            .get(&genus)
            .unwrap_or_else(|| panic!("ring context for genus {genus} not built"))
    }

    pub fn max_genus(&self) -> u32 {
        self.rings.keys().max().copied().unwrap_or(0)
    }
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermDto {
    monomial: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct TautClassDto {
    g: u32,
    variant: String,
    terms: Vec<TermDto>,
}

impl TautClass {
    pub fn to_json_value(&self) -> serde_json::Value {
        let dto = TautClassDto {
            g: self.genus,
            variant: self.variant.code().to_string(),
            terms: self
                .terms()
                .map(|(m, c)| TermDto {
                    monomial: m.indices(),
                    coeff: format_rational(c),
                })
                .collect(),
        };
        serde_json::to_value(dto).expect("serialization cannot fail")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<TautClass, String> {
        let dto: TautClassDto =
            serde_json::from_str(s).map_err(|e| format!("invalid class JSON: {e}"))?;
        if dto.g < 1 || dto.g > MAX_GENUS {
            return Err(format!("genus {} outside supported range 1..={MAX_GENUS}", dto.g));
        }
        let variant = Variant::parse(&dto.variant)?;
        let mut class = TautClass::zero(dto.g, variant);
        for term in &dto.terms {
            let mono = SquareFreeMonomial::from_indices(&term.monomial, dto.g)
                .map_err(|e| e.to_string())?;
            if variant == Variant::Open && mono.contains(dto.g) {
                return Err(ClassError::OpenTopIndex { genus: dto.g }.to_string());
            }
            let coeff = parse_rational(&term.coeff)?;
            class.add_term(mono, coeff);
        }
        Ok(class)
    }
}
