//! Gorenstein pairings, the tautological projection operator, and the
//! Schur-determinant formulas for the projections of product loci.
//!
//! For a partition `g = g_1 + ... + g_l`, the projection of the product
//! locus is a rational multiple of a Schur determinant
//! `det(λ_{v_i - i + j})` in the quotient ring, with `λ_0 = 1` and
//! `λ_k = 0` outside `0..=g`:
//!
//! * on the compact space, the `g x g` determinant of the vector `alpha`
//!   (blocks `g - g_1 - ... - g_i` of size `g_i`), with prefactor
//!   `gamma_{g_1} ... gamma_{g_l} / gamma_g`;
//! * on the open space, the same prefactor times
//!   `λ_{g-1} ... λ_{g-l+1}` times the `(g-l) x (g-l)` determinant of the
//!   vector `beta` built from `g* = g - l` and `g_i* = g_i - 1`.
//!
//! The module also provides the splitting homomorphism induced by the
//! decomposition of the Hodge bundle over a product, factor-wise
//! integration, Gram matrices of the pairings, the projection (exact
//! linear solve against a pairing functional), annihilator computations,
//! and the verification routines cross-checking the determinant formulas
//! against split-and-integrate evaluations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{format_rational, gamma_g, parse_rational, Rational};
use crate::linalg::{self, QMatrix};
use crate::report::VerifyReport;
use crate::ring::{
    integrate_abar, integrate_lg, integrate_open, ClassError, RingCache, RingContext,
    SquareFreeMonomial, TautClass, Variant,
};

/// An ordered tuple of positive integers summing to the genus, indexing a
/// product locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductPartition {
    parts: Vec<u32>,
    genus: u32,
}

impl ProductPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, String> {
        if parts.is_empty() {
            return Err("partition must have at least one part".to_string());
        }
        if parts.iter().any(|&p| p == 0) {
            return Err("partition parts must be positive".to_string());
        }
        let genus = parts.iter().sum();
        Ok(ProductPartition { parts, genus })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Codimension of the product locus: `sum_{i > j} g_i g_j`.
    pub fn codim(&self) -> u32 {
        let mut acc = 0;
        for i in 1..self.parts.len() {
            for j in 0..i {
                acc += self.parts[i] * self.parts[j];
            }
        }
        acc
    }

    /// The length-`g` vector `alpha`: for each part `g_i`, a block of size
    /// `g_i` holding `g - g_1 - ... - g_i`. Weakly decreasing, ending in a
    /// zero block.
    pub fn alpha_vector(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.genus as usize);
        let mut remaining = self.genus as i64;
        for &p in &self.parts {
            remaining -= p as i64;
            for _ in 0..p {
                out.push(remaining);
            }
        }
        out
    }

    /// The length-`(g - l)` vector `beta`: blocks of size `g_i* = g_i - 1`
    /// holding `g* - g_1* - ... - g_i*`, where `g* = g - l`. Parts equal to
    /// 1 contribute empty blocks.
    pub fn beta_vector(&self) -> Vec<i64> {
        let g_star = self.genus as i64 - self.parts.len() as i64;
        let mut out = Vec::with_capacity(g_star.max(0) as usize);
        let mut remaining = g_star;
        for &p in &self.parts {
            let p_star = p as i64 - 1;
            remaining -= p_star;
            for _ in 0..p_star {
                out.push(remaining);
            }
        }
        out
    }

    /// Product of the `gamma_{g_i}`.
    pub fn gamma_product(&self) -> Rational {
        let mut acc = Rational::one();
        for &p in &self.parts {
            acc *= gamma_g(p);
        }
        acc
    }
}

impl fmt::Display for ProductPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All unordered partitions of `g` (descending parts), in a deterministic
/// order.
pub fn partitions(g: u32) -> Vec<ProductPartition> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for next in (1..=remaining.min(max)).rev() {
            prefix.push(next);
            rec(remaining - next, next, prefix, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(g, g, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|parts| ProductPartition::new(parts).expect("valid by construction"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Entry {
    Zero,
    One,
    Lambda(u32),
}

/// Normal form of the determinant `det(λ_{v_i - i + j})_{1<=i,j<=n}` in the
/// quotient ring, with `λ_0 = 1` and `λ_k = 0` for `k < 0` or `k > g` (and
/// additionally `λ_g = 0` in the open variant).
///
/// Cofactor expansion over rows ordered by their number of structural
/// zeros, with minors memoized on the set of unused columns.
pub fn schur_det(v: &[i64], ring: &RingContext, variant: Variant) -> TautClass {
    let n = v.len();
    let g = ring.genus();
    if n == 0 {
        return TautClass::one(g, variant);
    }
    assert!(n <= 32, "determinant size out of range");
    let entry_of = |idx: i64| -> Entry {
        if idx < 0 || idx > g as i64 {
            Entry::Zero
        } else if idx == 0 {
            Entry::One
        } else if variant == Variant::Open && idx == g as i64 {
            Entry::Zero
        } else {
            Entry::Lambda(idx as u32)
        }
    };
    let matrix: Vec<Vec<Entry>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| entry_of(v[i] - i as i64 + j as i64))
                .collect()
        })
        .collect();

    // expand along rows with the most zeros first; track the permutation sign
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| {
        let zeros = matrix[i].iter().filter(|&&e| e == Entry::Zero).count();
        (std::cmp::Reverse(zeros), i)
    });
    let mut sign_swaps = 0usize;
    for a in 0..n {
        for b in (a + 1)..n {
            if order[a] > order[b] {
                sign_swaps += 1;
            }
        }
    }

    let mut memo: HashMap<u32, TautClass> = HashMap::new();
    let full_mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    fn minor(
        depth: usize,
        colmask: u32,
        order: &[usize],
        matrix: &[Vec<Entry>],
        ring: &RingContext,
        variant: Variant,
        memo: &mut HashMap<u32, TautClass>,
    ) -> TautClass {
        let g = ring.genus();
        if colmask == 0 {
            return TautClass::one(g, variant);
        }
        if let Some(hit) = memo.get(&colmask) {
            return hit.clone();
        }
        let row = order[depth];
        let mut acc = TautClass::zero(g, variant);
        let mut pos = 0usize;
        let mut rest = colmask;
        while rest != 0 {
            let col = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let entry = matrix[row][col];
            if entry != Entry::Zero {
                let sub = minor(depth + 1, colmask & !(1 << col), order, matrix, ring, variant, memo);
                let signed = if pos % 2 == 0 { sub } else { sub.scaled(&-Rational::one()) };
                let term = match entry {
                    Entry::One => signed,
                    Entry::Lambda(t) => ring
                        .apply_generator(t, &signed)
                        .expect("entry index within genus"),
                    Entry::Zero => unreachable!(),
                };
                acc = acc.plus(&term);
            }
            pos += 1;
        }
        memo.insert(colmask, acc.clone());
        acc
    }

    let det = minor(0, full_mask, &order, &matrix, ring, variant, &mut memo);
    if sign_swaps % 2 == 0 {
        det
    } else {
        det.scaled(&-Rational::one())
    }
}

/// Projection of the product locus on the compact moduli space:
/// `(gamma_{g_1} ... gamma_{g_l} / gamma_g) * det(λ_{alpha_i - i + j})`.
pub fn product_projection_cpt(p: &ProductPartition, ring: &RingContext) -> TautClass {
    assert_eq!(p.genus(), ring.genus(), "partition genus mismatch");
    let prefactor = p.gamma_product() / gamma_g(p.genus());
    schur_det(&p.alpha_vector(), ring, Variant::Compact).scaled(&prefactor)
}

/// Projection of the product locus on the open moduli space:
/// the same prefactor times `λ_{g-1} ... λ_{g-l+1}` times the `beta`
/// determinant, reduced in the quotient by `(λ_g)`.
pub fn product_projection_open(p: &ProductPartition, ring: &RingContext) -> TautClass {
    assert_eq!(p.genus(), ring.genus(), "partition genus mismatch");
    let g = p.genus();
    let prefactor = p.gamma_product() / gamma_g(g);
    let mut acc = schur_det(&p.beta_vector(), ring, Variant::Open);
    for m in 1..p.len() as u32 {
        acc = ring
            .apply_generator(g - m, &acc)
            .expect("socle prefix index within genus");
    }
    acc.scaled(&prefactor)
}

/// A class on a product of moduli factors: a rational combination of
/// tuples of square-free monomials, one per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorClass {
    factors: Vec<u32>,
    terms: BTreeMap<Vec<SquareFreeMonomial>, Rational>,
}

impl TensorClass {
    pub fn zero(factors: Vec<u32>) -> Self {
        TensorClass {
            factors,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(factors: Vec<u32>) -> Self {
        let unit = vec![SquareFreeMonomial::UNIT; factors.len()];
        let mut t = TensorClass::zero(factors);
        t.add_term(unit, Rational::one());
        t
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<SquareFreeMonomial>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, tuple: Vec<SquareFreeMonomial>, coeff: Rational) {
        assert_eq!(tuple.len(), self.factors.len(), "tuple arity mismatch");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(tuple) {
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

    pub fn plus(&self, other: &TensorClass) -> TensorClass {
        assert_eq!(self.factors, other.factors, "factor mismatch");
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, by: &Rational) -> TensorClass {
        let mut out = TensorClass::zero(self.factors.clone());
        if by.is_zero() {
            return out;
        }
        for (t, c) in self.terms() {
            out.terms.insert(t.clone(), c * by);
        }
        out
    }

    /// Componentwise product, reducing each factor in its own ring.
    pub fn mul(&self, other: &TensorClass, rings: &RingCache) -> TensorClass {
        assert_eq!(self.factors, other.factors, "factor mismatch");
        let mut out = TensorClass::zero(self.factors.clone());
        for (ta, ca) in self.terms() {
            for (tb, cb) in other.terms() {
                // per-factor normal forms of the monomial products
                let mut factor_classes: Vec<Vec<(SquareFreeMonomial, Rational)>> =
                    Vec::with_capacity(self.factors.len());
                for (i, &gi) in self.factors.iter().enumerate() {
                    let ring = rings.get(gi);
                    let a = class_of_monomial(gi, ta[i]);
                    let b = class_of_monomial(gi, tb[i]);
                    let prod = ring.mul(&a, &b).expect("well-formed tensor component");
                    factor_classes.push(prod.terms().map(|(m, c)| (*m, c.clone())).collect());
                }
                // distribute
                let base = ca * cb;
                let mut stack: Vec<(usize, Vec<SquareFreeMonomial>, Rational)> =
                    vec![(0, Vec::new(), base)];
                while let Some((i, tuple, coeff)) = stack.pop() {
                    if i == factor_classes.len() {
                        out.add_term(tuple, coeff);
                        continue;
                    }
                    for (m, c) in &factor_classes[i] {
                        let mut next = tuple.clone();
                        next.push(*m);
                        stack.push((i + 1, next, &coeff * c));
                    }
                }
            }
        }
        out
    }
}

fn class_of_monomial(genus: u32, mono: SquareFreeMonomial) -> TautClass {
    let mut c = TautClass::zero(genus, Variant::Compact);
    c.add_term(mono, Rational::one());
    c
}

/// The splitting homomorphism of a product decomposition: each generator
/// maps by the total-Chern-class splitting
/// `λ_k -> sum_{k_1 + ... + k_l = k} λ_{k_1} ⊗ ... ⊗ λ_{k_l}`
/// and the map extends multiplicatively.
pub fn split_pullback(
    a: &TautClass,
    p: &ProductPartition,
    rings: &RingCache,
) -> Result<TensorClass, ClassError> {
    if a.variant() == Variant::Open {
        return Err(ClassError::WrongVariant {
            op: "split_pullback",
            variant: a.variant(),
        });
    }
    if a.genus() != p.genus() {
        return Err(ClassError::GenusMismatch {
            left: a.genus(),
            right: p.genus(),
        });
    }
    let factors: Vec<u32> = p.parts().to_vec();
    let mut gen_images: HashMap<u32, TensorClass> = HashMap::new();
    let mut image_of_generator = |k: u32| -> TensorClass {
        if let Some(hit) = gen_images.get(&k) {
            return hit.clone();
        }
        let mut img = TensorClass::zero(factors.clone());
        // compositions of k bounded by the factor genera
        let mut tuple: Vec<u32> = vec![0; factors.len()];
        fn rec(
            i: usize,
            remaining: u32,
            factors: &[u32],
            tuple: &mut Vec<u32>,
            img: &mut TensorClass,
        ) {
            if i == factors.len() {
                if remaining == 0 {
                    let monos: Vec<SquareFreeMonomial> = tuple
                        .iter()
                        .zip(factors.iter())
                        .map(|(&ki, &gi)| {
                            if ki == 0 {
                                SquareFreeMonomial::UNIT
                            } else {
                                SquareFreeMonomial::from_indices(&[ki], gi)
                                    .expect("composition bounded by factor genus")
                            }
                        })
                        .collect();
                    img.add_term(monos, Rational::one());
                }
                return;
            }
            for ki in 0..=remaining.min(factors[i]) {
                tuple[i] = ki;
                rec(i + 1, remaining - ki, factors, tuple, img);
            }
            tuple[i] = 0;
        }
        rec(0, k, &factors, &mut tuple, &mut img);
        gen_images.insert(k, img.clone());
        img
    };

    let mut out = TensorClass::zero(factors.clone());
    for (mono, coeff) in a.terms() {
        let mut acc = TensorClass::one(factors.clone());
        for k in mono.indices() {
            let img = image_of_generator(k);
            acc = acc.mul(&img, rings);
        }
        out = out.plus(&acc.scaled(coeff));
    }
    Ok(out)
}

/// Multilinear extension of factor-wise Lagrangian-Grassmannian
/// integration: only tuples in which every component is its factor's full
/// monomial contribute, each with weight 1.
pub fn product_integral(t: &TensorClass) -> Rational {
    let fulls: Vec<SquareFreeMonomial> = t
        .factors()
        .iter()
        .map(|&g| SquareFreeMonomial::full(g))
        .collect();
    let mut acc = Rational::zero();
    for (tuple, coeff) in t.terms() {
        if *tuple == fulls {
            acc += coeff;
        }
    }
    acc
}

/// Gram matrix of the pairing in one codimension: rows are the degree-`k`
/// basis monomials, columns the complementary-degree basis monomials, and
/// the entry is the integral of their product (times `λ_g` in the open
/// variant). Square by the symmetry of the Poincaré polynomial.
pub struct GramMatrix {
    pub codim: u32,
    pub rows: Vec<SquareFreeMonomial>,
    pub cols: Vec<SquareFreeMonomial>,
    pub matrix: QMatrix,
}

pub fn gram_matrix(ring: &RingContext, k: u32, variant: Variant) -> GramMatrix {
    let g = ring.genus();
    let top = variant.top_degree(g);
    assert!(k <= top, "codimension exceeds top degree");
    let rows = ring.basis(k, variant);
    let cols = ring.basis(top - k, variant);
    let mut matrix = QMatrix::zeros(rows.len(), cols.len());
    for (i, a) in rows.iter().enumerate() {
        let ca = {
            let mut c = TautClass::zero(g, variant);
            c.add_term(*a, Rational::one());
            c
        };
        for (j, b) in cols.iter().enumerate() {
            let mut cb = TautClass::zero(g, variant);
            cb.add_term(*b, Rational::one());
            let prod = ring.mul(&ca, &cb).expect("basis classes are compatible");
            let value = match variant {
                Variant::Compact => integrate_abar(&prod),
                Variant::Open => integrate_open(&prod),
                Variant::Lagrangian => integrate_lg(&prod),
            }
            .expect("variant matches integral");
            matrix.set(i, j, value);
        }
    }
    GramMatrix {
        codim: k,
        rows,
        cols,
        matrix,
    }
}

/// Errors from pairing-functional validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionalError {
    UnsupportedVariant(Variant),
    CodimOutOfRange { codim: u32, top: u32 },
    MissingMonomials(Vec<String>),
    ExtraMonomials(Vec<String>),
    Invalid(String),
}

impl fmt::Display for FunctionalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionalError::UnsupportedVariant(v) => {
                write!(f, "pairing functionals are defined for `cpt` and `open`, not `{v}`")
            }
            FunctionalError::CodimOutOfRange { codim, top } => {
                write!(f, "codimension {codim} exceeds top degree {top}")
            }
            FunctionalError::MissingMonomials(ms) => {
                write!(f, "functional is missing values for monomials: {}", ms.join(", "))
            }
            FunctionalError::ExtraMonomials(ms) => {
                write!(f, "functional has values for monomials outside the complementary basis: {}", ms.join(", "))
            }
            FunctionalError::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for FunctionalError {}

/// The pairing data of a (possibly non-tautological) codimension-`k` cycle
/// class: its pairings against every basis monomial of the complementary
/// degree.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingFunctional {
    genus: u32,
    variant: Variant,
    codim: u32,
    values: BTreeMap<SquareFreeMonomial, Rational>,
}

impl PairingFunctional {
    /// Build and validate: the keys must cover the complementary-degree
    /// basis exactly.
    pub fn new(
        ring: &RingContext,
        variant: Variant,
        codim: u32,
        values: BTreeMap<SquareFreeMonomial, Rational>,
    ) -> Result<Self, FunctionalError> {
        if variant == Variant::Lagrangian {
            return Err(FunctionalError::UnsupportedVariant(variant));
        }
        let g = ring.genus();
        let top = variant.top_degree(g);
        if codim > top {
            return Err(FunctionalError::CodimOutOfRange { codim, top });
        }
        let basis = ring.basis(top - codim, variant);
        let missing: Vec<String> = basis
            .iter()
            .filter(|m| !values.contains_key(m))
            .map(|m| m.render())
            .collect();
        if !missing.is_empty() {
            return Err(FunctionalError::MissingMonomials(missing));
        }
        let extra: Vec<String> = values
            .keys()
            .filter(|m| !basis.contains(m))
            .map(|m| m.render())
            .collect();
        if !extra.is_empty() {
            return Err(FunctionalError::ExtraMonomials(extra));
        }
        Ok(PairingFunctional {
            genus: g,
            variant,
            codim,
            values,
        })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn codim(&self) -> u32 {
        self.codim
    }

    pub fn values(&self) -> impl Iterator<Item = (&SquareFreeMonomial, &Rational)> {
        self.values.iter()
    }

    pub fn value(&self, mono: &SquareFreeMonomial) -> Rational {
        self.values
            .get(mono)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "g": self.genus,
            "variant": self.variant.code(),
            "codim": self.codim,
            "values": self
                .values()
                .map(|(m, v)| {
                    serde_json::json!({
                        "monomial": m.indices(),
                        "value": format_rational(v),
                    })
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serialization cannot fail")
    }

    /// Parse and validate against the ring's complementary basis.
    pub fn from_json(s: &str, ring: &RingContext) -> Result<Self, FunctionalError> {
        #[derive(serde::Deserialize)]
        struct ValueDto {
            monomial: Vec<u32>,
            value: String,
        }
        #[derive(serde::Deserialize)]
        struct Dto {
            g: u32,
            variant: String,
            codim: u32,
            values: Vec<ValueDto>,
        }
        let dto: Dto = serde_json::from_str(s)
            .map_err(|e| FunctionalError::Invalid(format!("invalid functional JSON: {e}")))?;
        if dto.g != ring.genus() {
            return Err(FunctionalError::Invalid(format!(
                "functional genus {} does not match ring genus {}",
                dto.g,
                ring.genus()
            )));
        }
        let variant = Variant::parse(&dto.variant).map_err(FunctionalError::Invalid)?;
        let mut values = BTreeMap::new();
        for v in &dto.values {
            let mono = SquareFreeMonomial::from_indices(&v.monomial, dto.g)
                .map_err(|e| FunctionalError::Invalid(e.to_string()))?;
            let value = parse_rational(&v.value).map_err(FunctionalError::Invalid)?;
            if values.insert(mono, value).is_some() {
                return Err(FunctionalError::Invalid(format!(
                    "duplicate monomial {} in functional",
                    mono.render()
                )));
            }
        }
        PairingFunctional::new(ring, variant, dto.codim, values)
    }
}

/// Pairing of two classes under the variant's pairing: the integral of
/// their product (against `λ_g` in the open variant).
pub fn pair(ring: &RingContext, a: &TautClass, b: &TautClass) -> Result<Rational, ClassError> {
    let prod = ring.mul(a, b)?;
    match a.variant() {
        Variant::Compact => integrate_abar(&prod),
        Variant::Open => integrate_open(&prod),
        Variant::Lagrangian => integrate_lg(&prod),
    }
}

/// The pairing functional of a homogeneous tautological class, i.e. the
/// data the projection operator consumes.
pub fn pairing_functional_of(
    t: &TautClass,
    ring: &RingContext,
) -> Result<PairingFunctional, FunctionalError> {
    let codim = t.homogeneous_degree().ok_or_else(|| {
        FunctionalError::Invalid("class must be homogeneous and nonzero".to_string())
    })?;
    let top = t.variant().top_degree(t.genus());
    if codim > top {
        return Err(FunctionalError::CodimOutOfRange { codim, top });
    }
    let mut values = BTreeMap::new();
    for b in ring.basis(top - codim, t.variant()) {
        let mut cb = TautClass::zero(t.genus(), t.variant());
        cb.add_term(b, Rational::one());
        let v = pair(ring, t, &cb).map_err(|e| FunctionalError::Invalid(e.to_string()))?;
        values.insert(b, v);
    }
    PairingFunctional::new(ring, t.variant(), codim, values)
}

/// The pairing functional of a product locus, derived internally via the
/// splitting homomorphism and factor-wise integration (scaled by the
/// factors' `gamma` constants). In the open variant, the lift of each test
/// monomial is multiplied by `λ_g` before splitting.
pub fn product_pairing_functional(
    p: &ProductPartition,
    variant: Variant,
    rings: &RingCache,
) -> Result<PairingFunctional, FunctionalError> {
    if variant == Variant::Lagrangian {
        return Err(FunctionalError::UnsupportedVariant(variant));
    }
    let g = p.genus();
    let ring = rings.get(g);
    let codim = p.codim();
    let top = variant.top_degree(g);
    if codim > top {
        return Err(FunctionalError::CodimOutOfRange { codim, top });
    }
    let gamma_factor = p.gamma_product();
    let mut values = BTreeMap::new();
    for b in ring.basis(top - codim, variant) {
        let mut lift = TautClass::zero(g, Variant::Compact);
        lift.add_term(b, Rational::one());
        if variant == Variant::Open {
            lift = ring
                .apply_generator(g, &lift)
                .expect("λ_g within range");
        }
        let split = split_pullback(&lift, p, rings)
            .map_err(|e| FunctionalError::Invalid(e.to_string()))?;
        values.insert(b, &gamma_factor * product_integral(&split));
    }
    PairingFunctional::new(ring, variant, codim, values)
}

/// The tautological projection: the unique tautological class with the
/// same pairings as the functional. Solves the Gram system exactly.
///
/// Panics if the Gram matrix is singular: non-degeneracy of the pairing is
/// a structural property of the ring, so a singular matrix is an internal
/// invariant violation, not a recoverable input condition.
pub fn project(f: &PairingFunctional, ring: &RingContext) -> TautClass {
    let g = ring.genus();
    assert_eq!(f.genus(), g, "functional genus mismatch");
    let gram = gram_matrix(ring, f.codim(), f.variant());
    let n = gram.rows.len();
    // solve sum_i x_i <b_i, c_j> = f(c_j): transpose system
    let mut at = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            at.set(j, i, gram.matrix.get(i, j).clone());
        }
    }
    let rhs: Vec<Rational> = gram.cols.iter().map(|c| f.value(c)).collect();
    let solution = linalg::solve(&at, &rhs)
        .unwrap_or_else(|| panic!("singular Gram matrix at genus {g}, codim {}", f.codim()));
    let mut out = TautClass::zero(g, f.variant());
    for (x, b) in solution.into_iter().zip(gram.rows.iter()) {
        out.add_term(*b, x);
    }
    out
}

/// Basis of the annihilator of a set of classes, degree by degree: the
/// kernel of `v -> (gen_1 v, ..., gen_r v)` on each graded piece.
pub fn annihilator(
    gens: &[TautClass],
    ring: &RingContext,
    variant: Variant,
) -> Result<Vec<TautClass>, ClassError> {
    let top = variant.top_degree(ring.genus());
    let mut out = Vec::new();
    for d in 0..=top {
        out.extend(annihilator_degree(gens, ring, variant, d)?);
    }
    Ok(out)
}

/// The degree-`d` slice of the annihilator.
pub fn annihilator_degree(
    gens: &[TautClass],
    ring: &RingContext,
    variant: Variant,
    degree: u32,
) -> Result<Vec<TautClass>, ClassError> {
    let g = ring.genus();
    let basis = ring.basis(degree, variant);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    // coordinate space: the full square-free basis of the variant
    let full_basis: Vec<SquareFreeMonomial> = {
        let top = variant.top_degree(g);
        (0..=top).flat_map(|d| ring.basis(d, variant)).collect()
    };
    let coord: BTreeMap<SquareFreeMonomial, usize> = full_basis
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i))
        .collect();

    let mut matrix = QMatrix::zeros(gens.len() * full_basis.len(), basis.len());
    for (col, v) in basis.iter().enumerate() {
        let mut vc = TautClass::zero(g, variant);
        vc.add_term(*v, Rational::one());
        for (t, gen) in gens.iter().enumerate() {
            let prod = ring.mul(gen, &vc)?;
            for (m, c) in prod.terms() {
                matrix.set(t * full_basis.len() + coord[m], col, c.clone());
            }
        }
    }
    let kernel = linalg::kernel_basis(&matrix);
    Ok(kernel
        .into_iter()
        .map(|x| {
            let mut cls = TautClass::zero(g, variant);
            for (coeff, mono) in x.into_iter().zip(basis.iter()) {
                cls.add_term(*mono, coeff);
            }
            cls
        })
        .collect())
}

/// Coordinates of the degree-`d` slice of the ideal generated by a
/// homogeneous class: the span of `gen * m` over basis monomials `m` of
/// degree `d - deg(gen)`, as rows over the degree-`d` basis.
pub fn ideal_degree_matrix(
    gen: &TautClass,
    ring: &RingContext,
    variant: Variant,
    degree: u32,
) -> QMatrix {
    let g = ring.genus();
    let gen_degree = gen
        .homogeneous_degree()
        .expect("ideal_degree_matrix expects a homogeneous generator");
    let target = ring.basis(degree, variant);
    let coord: BTreeMap<SquareFreeMonomial, usize> = target
        .iter()
        .enumerate()
        .map(|(i, m)| (*m, i))
        .collect();
    if degree < gen_degree {
        return QMatrix::zeros(0, target.len());
    }
    let lower = ring.basis(degree - gen_degree, variant);
    let mut rows = Vec::new();
    for m in &lower {
        let mut mc = TautClass::zero(g, variant);
        mc.add_term(*m, Rational::one());
        let prod = ring.mul(gen, &mc).expect("compatible classes");
        let mut row = vec![Rational::zero(); target.len()];
        for (mono, c) in prod.terms() {
            row[coord[mono]] = c.clone();
        }
        rows.push(row);
    }
    if rows.is_empty() {
        QMatrix::zeros(0, target.len())
    } else {
        QMatrix::from_rows(rows)
    }
}

/// Check that `Ann(λ_{g-1}, ..., λ_{g-l+1}) = (λ_{g-1} ... λ_{g-l+1})` in
/// the open ring, degree by degree.
pub fn annihilator_is_principal(ring: &RingContext, ell: u32) -> Result<bool, ClassError> {
    let g = ring.genus();
    assert!(ell >= 2 && ell <= g, "need 2 <= l <= g");
    let gens: Vec<TautClass> = (1..ell)
        .map(|m| TautClass::monomial(g, Variant::Open, &[g - m]).expect("index in range"))
        .collect();
    let product_indices: Vec<u32> = (1..ell).map(|m| g - m).collect();
    let principal = TautClass::monomial(g, Variant::Open, &product_indices)?;
    let top = Variant::Open.top_degree(g);
    for d in 0..=top {
        let ann = annihilator_degree(&gens, ring, Variant::Open, d)?;
        let basis = ring.basis(d, Variant::Open);
        let coord: BTreeMap<SquareFreeMonomial, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i))
            .collect();
        let ann_matrix = if ann.is_empty() {
            QMatrix::zeros(0, basis.len())
        } else {
            QMatrix::from_rows(
                ann.iter()
                    .map(|cls| {
                        let mut row = vec![Rational::zero(); basis.len()];
                        for (m, c) in cls.terms() {
                            row[coord[m]] = c.clone();
                        }
                        row
                    })
                    .collect(),
            )
        };
        let ideal_matrix = ideal_degree_matrix(&principal, ring, Variant::Open, d);
        if !linalg::row_space_equal(&ann_matrix, &ideal_matrix) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cross-check of the compact determinant formula: for every partition of
/// `g` and every basis monomial `P` of complementary degree, the
/// Lagrangian-Grassmannian integral of `det(alpha) * P` must equal the
/// factor-wise integral of the split pullback of `P`.
pub fn verify_thm15(g: u32, rings: &RingCache) -> VerifyReport {
    let mut report = VerifyReport::new("thm15");
    let ring = rings.get(g);
    let top = Variant::Compact.top_degree(g);
    for p in partitions(g) {
        let codim = p.codim();
        let det = schur_det(&p.alpha_vector(), ring, Variant::Lagrangian);
        let basis = ring.basis(top - codim, Variant::Lagrangian);
        let mut failures = Vec::new();
        for mono in &basis {
            let mut pc = TautClass::zero(g, Variant::Lagrangian);
            pc.add_term(*mono, Rational::one());
            let lhs = integrate_lg(&ring.mul(&det, &pc).expect("compatible classes"))
                .expect("lagrangian integral");
            let split = split_pullback(&pc, &p, rings).expect("lagrangian class splits");
            let rhs = product_integral(&split);
            if lhs != rhs {
                failures.push(format!(
                    "P={}: det side {} vs split side {}",
                    mono.render(),
                    format_rational(&lhs),
                    format_rational(&rhs)
                ));
            }
        }
        report.push(
            format!("g={g} parts={p} schur-vs-split"),
            failures.is_empty(),
            if failures.is_empty() {
                format!("{} complementary monomials", basis.len())
            } else {
                failures.join("; ")
            },
        );
    }
    report
}

/// Cross-check of the open factorization: restricting the compact
/// determinant must equal `λ_{g-1} ... λ_{g-l+1}` times the `beta`
/// determinant, and the two product-projection routes must agree.
pub fn verify_thm16(g: u32, rings: &RingCache) -> VerifyReport {
    let mut report = VerifyReport::new("thm16");
    let ring = rings.get(g);
    for p in partitions(g) {
        let alpha_restricted = schur_det(&p.alpha_vector(), ring, Variant::Compact)
            .restrict_open()
            .expect("compact determinant restricts");
        let mut beta_side = schur_det(&p.beta_vector(), ring, Variant::Open);
        for m in 1..p.len() as u32 {
            beta_side = ring
                .apply_generator(g - m, &beta_side)
                .expect("socle prefix within range");
        }
        report.push(
            format!("g={g} parts={p} determinant-factorization"),
            alpha_restricted == beta_side,
            if alpha_restricted == beta_side {
                String::new()
            } else {
                format!(
                    "restricted alpha det {} vs beta side {}",
                    alpha_restricted.render_text(),
                    beta_side.render_text()
                )
            },
        );

        let open_route = product_projection_open(&p, ring);
        let restricted_route = product_projection_cpt(&p, ring)
            .restrict_open()
            .expect("compact projection restricts");
        report.push(
            format!("g={g} parts={p} projection-restriction"),
            open_route == restricted_route,
            if open_route == restricted_route {
                String::new()
            } else {
                format!(
                    "open route {} vs restricted compact {}",
                    open_route.render_text(),
                    restricted_route.render_text()
                )
            },
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{bernoulli, rat, rat_int};
    use crate::ring::build_ring;
    use num_traits::Signed;

    fn part(parts: &[u32]) -> ProductPartition {
        ProductPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn alpha_vectors() {
        assert_eq!(part(&[1, 5]).alpha_vector(), vec![5, 0, 0, 0, 0, 0]);
        assert_eq!(part(&[4]).alpha_vector(), vec![0, 0, 0, 0]);
        assert_eq!(part(&[1, 1, 2]).alpha_vector(), vec![3, 2, 0, 0]);
    }

    #[test]
    fn beta_vectors() {
        // (1, g-1): empty block then a zero block of size g-2
        assert_eq!(part(&[1, 5]).beta_vector(), vec![0, 0, 0, 0]);
        assert_eq!(part(&[2, 2]).beta_vector(), vec![1, 0]);
        assert_eq!(part(&[4]).beta_vector(), vec![0, 0, 0]);
        assert_eq!(part(&[1, 1, 1, 1]).beta_vector(), Vec::<i64>::new());
    }

    #[test]
    fn codims() {
        assert_eq!(part(&[1, 1]).codim(), 1);
        assert_eq!(part(&[1, 1, 2]).codim(), 5);
        assert_eq!(part(&[3]).codim(), 0);
        // codim equals the weight of alpha
        for p in partitions(6) {
            let alpha_sum: i64 = p.alpha_vector().iter().sum();
            assert_eq!(alpha_sum, p.codim() as i64);
        }
    }

    #[test]
    fn partition_enumeration() {
        let ps: Vec<String> = partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(ps, vec!["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    /// Permutation-sum determinant over the ring, as an independent oracle
    /// for the memoized cofactor expansion.
    fn schur_det_permanent_style(v: &[i64], ring: &RingContext, variant: Variant) -> TautClass {
        let n = v.len();
        let g = ring.genus();
        if n == 0 {
            return TautClass::one(g, variant);
        }
        let mut result = TautClass::zero(g, variant);
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            // sign of the permutation
            let mut sign = 0;
            for a in 0..n {
                for b in (a + 1)..n {
                    if perm[a] > perm[b] {
                        sign += 1;
                    }
                }
            }
            let mut term = TautClass::one(g, variant);
            let mut zero = false;
            for (i, &j) in perm.iter().enumerate() {
                let idx = v[i] - i as i64 + j as i64;
                if idx < 0 || idx > g as i64 || (variant == Variant::Open && idx == g as i64) {
                    zero = true;
                    break;
                }
                if idx > 0 {
                    term = ring.apply_generator(idx as u32, &term).unwrap();
                }
            }
            if !zero {
                let signed = if sign % 2 == 0 {
                    term
                } else {
                    term.scaled(&-Rational::one())
                };
                result = result.plus(&signed);
            }
            // next permutation (lexicographic)
            let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        result
    }

    #[test]
    fn schur_det_small_cases() {
        let r2 = build_ring(2).unwrap();
        assert_eq!(
            schur_det(&[1, 0], &r2, Variant::Compact),
            TautClass::monomial(2, Variant::Compact, &[1]).unwrap()
        );
        assert_eq!(
            schur_det(&[0, 0], &r2, Variant::Compact),
            TautClass::one(2, Variant::Compact)
        );
        let r4 = build_ring(4).unwrap();
        assert_eq!(
            schur_det(&[3, 0, 0, 0], &r4, Variant::Compact),
            TautClass::monomial(4, Variant::Compact, &[3]).unwrap()
        );
    }

    #[test]
    fn schur_det_matches_permutation_expansion() {
        for g in 2..=4u32 {
            let ring = build_ring(g).unwrap();
            for p in partitions(g) {
                for variant in [Variant::Compact, Variant::Open] {
                    let fast = schur_det(&p.alpha_vector(), &ring, variant);
                    let slow = schur_det_permanent_style(&p.alpha_vector(), &ring, variant);
                    assert_eq!(fast, slow, "alpha det at g={g}, p={p}, {variant}");
                }
            }
        }
    }

    #[test]
    fn genus_four_projections() {
        let ring = build_ring(4).unwrap();
        // (1,1,2) on the open space: 420 λ3 λ2
        let p = part(&[1, 1, 2]);
        let proj = product_projection_open(&p, &ring);
        let expected = TautClass::monomial(4, Variant::Open, &[2, 3])
            .unwrap()
            .scaled(&rat_int(420));
        assert_eq!(proj, expected);

        // (1,1,1,1) on the open space: 4200 λ3 λ2 λ1
        let p = part(&[1, 1, 1, 1]);
        let proj = product_projection_open(&p, &ring);
        let expected = TautClass::monomial(4, Variant::Open, &[1, 2, 3])
            .unwrap()
            .scaled(&rat_int(4200));
        assert_eq!(proj, expected);

        // (2,2) on the open space: 42 λ3 λ1
        let p = part(&[2, 2]);
        let proj = product_projection_open(&p, &ring);
        let expected = TautClass::monomial(4, Variant::Open, &[1, 3])
            .unwrap()
            .scaled(&rat_int(42));
        assert_eq!(proj, expected);
    }

    #[test]
    fn single_part_projection_is_unit() {
        for g in 1..=5 {
            let ring = build_ring(g).unwrap();
            let p = part(&[g]);
            assert_eq!(
                product_projection_cpt(&p, &ring),
                TautClass::one(g, Variant::Compact)
            );
            assert_eq!(
                product_projection_open(&p, &ring),
                TautClass::one(g, Variant::Open)
            );
        }
    }

    #[test]
    fn one_rest_projection_closed_form() {
        // (1, g-1): (g / (6 |B_2g|)) λ_{g-1} on the compact space
        for g in 2..=6u32 {
            let ring = build_ring(g).unwrap();
            let p = part(&[1, g - 1]);
            let coeff = rat_int(g as i64) / (rat_int(6) * bernoulli(2 * g as usize).abs());
            let expected = TautClass::monomial(g, Variant::Compact, &[g - 1])
                .unwrap()
                .scaled(&coeff);
            assert_eq!(product_projection_cpt(&p, &ring), expected, "g={g}");
        }
    }

    #[test]
    fn ordering_invariance_of_projections() {
        let ring = build_ring(5).unwrap();
        let orders = [
            vec![1, 2, 2],
            vec![2, 1, 2],
            vec![2, 2, 1],
        ];
        let reference_cpt = product_projection_cpt(&part(&orders[0]), &ring);
        let reference_open = product_projection_open(&part(&orders[0]), &ring);
        for o in &orders[1..] {
            assert_eq!(product_projection_cpt(&part(o), &ring), reference_cpt);
            assert_eq!(product_projection_open(&part(o), &ring), reference_open);
        }
    }

    #[test]
    fn split_pullback_small_cases() {
        let rings = RingCache::up_to(2).unwrap();
        let p = part(&[1, 1]);

        // λ2 over (1,1): λ1 ⊗ λ1
        let l2 = TautClass::monomial(2, Variant::Compact, &[2]).unwrap();
        let split = split_pullback(&l2, &p, &rings).unwrap();
        let m1 = SquareFreeMonomial::from_indices(&[1], 1).unwrap();
        let mut expected = TensorClass::zero(vec![1, 1]);
        expected.add_term(vec![m1, m1], Rational::one());
        assert_eq!(split, expected);

        // λ1 over (1,1): λ1 ⊗ 1 + 1 ⊗ λ1
        let l1 = TautClass::monomial(2, Variant::Compact, &[1]).unwrap();
        let split = split_pullback(&l1, &p, &rings).unwrap();
        let mut expected = TensorClass::zero(vec![1, 1]);
        expected.add_term(vec![m1, SquareFreeMonomial::UNIT], Rational::one());
        expected.add_term(vec![SquareFreeMonomial::UNIT, m1], Rational::one());
        assert_eq!(split, expected);

        // the unit splits to the unit
        let one = TautClass::one(2, Variant::Compact);
        assert_eq!(
            split_pullback(&one, &p, &rings).unwrap(),
            TensorClass::one(vec![1, 1])
        );
    }

    #[test]
    fn split_pullback_is_ring_homomorphism() {
        let rings = RingCache::up_to(4).unwrap();
        let ring = rings.get(4);
        let p = part(&[2, 2]);
        let a = TautClass::monomial(4, Variant::Compact, &[1, 2]).unwrap();
        let b = TautClass::monomial(4, Variant::Compact, &[2])
            .unwrap()
            .scaled(&rat(3, 2))
            .plus(&TautClass::one(4, Variant::Compact));
        let lhs = split_pullback(&ring.mul(&a, &b).unwrap(), &p, &rings).unwrap();
        let rhs = split_pullback(&a, &p, &rings)
            .unwrap()
            .mul(&split_pullback(&b, &p, &rings).unwrap(), &rings);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_integral_values() {
        let rings = RingCache::up_to(2).unwrap();
        let m1 = SquareFreeMonomial::from_indices(&[1], 1).unwrap();

        // λ1 ⊗ λ1 over (1,1) integrates to 1
        let mut t = TensorClass::zero(vec![1, 1]);
        t.add_term(vec![m1, m1], Rational::one());
        assert_eq!(product_integral(&t), rat_int(1));

        // 1 ⊗ 1 is not top degree
        assert_eq!(product_integral(&TensorClass::one(vec![1, 1])), rat_int(0));

        // (λ1λ2) ⊗ λ1 over (2,1)
        let m12 = SquareFreeMonomial::from_indices(&[1, 2], 2).unwrap();
        let mut t = TensorClass::zero(vec![2, 1]);
        t.add_term(vec![m12, m1], Rational::one());
        assert_eq!(product_integral(&t), rat_int(1));
        let _ = rings;
    }

    #[test]
    fn gram_matrix_values() {
        let r2 = build_ring(2).unwrap();
        let gram = gram_matrix(&r2, 1, Variant::Compact);
        assert_eq!(gram.rows.len(), 1);
        assert_eq!(*gram.matrix.get(0, 0), rat(1, 5760));

        let gram = gram_matrix(&r2, 0, Variant::Open);
        assert_eq!(*gram.matrix.get(0, 0), rat(1, 5760));

        let r1 = build_ring(1).unwrap();
        let gram = gram_matrix(&r1, 0, Variant::Compact);
        assert_eq!(*gram.matrix.get(0, 0), rat(1, 24));
    }

    #[test]
    fn gram_matrices_nonsingular_small() {
        for g in 1..=5u32 {
            let ring = build_ring(g).unwrap();
            for variant in [Variant::Compact, Variant::Open] {
                let top = variant.top_degree(g);
                for k in 0..=top {
                    let gram = gram_matrix(&ring, k, variant);
                    assert_eq!(gram.rows.len(), gram.cols.len(), "g={g} k={k} {variant}");
                    assert_eq!(
                        gram.matrix.rank(),
                        gram.rows.len(),
                        "singular at g={g} k={k} {variant}"
                    );
                }
            }
        }
    }

    #[test]
    fn project_is_idempotent_on_tautological_classes() {
        let ring = build_ring(3).unwrap();
        for variant in [Variant::Compact, Variant::Open] {
            let top = variant.top_degree(3);
            for d in 0..=top {
                for mono in ring.basis(d, variant) {
                    let mut t = TautClass::zero(3, variant);
                    t.add_term(mono, rat(5, 3));
                    let f = pairing_functional_of(&t, &ring).unwrap();
                    assert_eq!(project(&f, &ring), t);
                }
            }
        }
    }

    #[test]
    fn project_zero_functional() {
        let ring = build_ring(2).unwrap();
        let top = Variant::Compact.top_degree(2);
        let values: BTreeMap<_, _> = ring
            .basis(top - 1, Variant::Compact)
            .into_iter()
            .map(|m| (m, Rational::zero()))
            .collect();
        let f = PairingFunctional::new(&ring, Variant::Compact, 1, values).unwrap();
        assert!(project(&f, &ring).is_zero());
    }

    #[test]
    fn product_functional_gives_projection_ten_lambda1() {
        let rings = RingCache::up_to(2).unwrap();
        let p = part(&[1, 1]);
        let f = product_pairing_functional(&p, Variant::Open, &rings).unwrap();
        assert_eq!(f.codim(), 1);
        // the single complementary value is gamma_1^2 = 1/576
        assert_eq!(f.value(&SquareFreeMonomial::UNIT), rat(1, 576));
        let proj = project(&f, rings.get(2));
        let expected = TautClass::monomial(2, Variant::Open, &[1])
            .unwrap()
            .scaled(&rat_int(10));
        assert_eq!(proj, expected);
        // and it agrees with the determinant route
        assert_eq!(product_projection_open(&p, rings.get(2)), expected);
    }

    #[test]
    fn functional_validation_names_offending_monomials() {
        let ring = build_ring(2).unwrap();
        // codim 1 in the compact variant: complementary basis is {λ2}
        let values = BTreeMap::new();
        let err = PairingFunctional::new(&ring, Variant::Compact, 1, values).unwrap_err();
        match err {
            FunctionalError::MissingMonomials(ms) => assert_eq!(ms, vec!["l2"]),
            other => panic!("unexpected error {other:?}"),
        }

        let mut values = BTreeMap::new();
        values.insert(SquareFreeMonomial::from_indices(&[2], 2).unwrap(), rat_int(1));
        values.insert(SquareFreeMonomial::from_indices(&[1], 2).unwrap(), rat_int(1));
        let err = PairingFunctional::new(&ring, Variant::Compact, 1, values).unwrap_err();
        match err {
            FunctionalError::ExtraMonomials(ms) => assert_eq!(ms, vec!["l1"]),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn annihilator_small_cases() {
        // g=3: Ann(λ2) = (λ2) in the open ring
        let ring = build_ring(3).unwrap();
        assert!(annihilator_is_principal(&ring, 2).unwrap());

        // gens = {1}: zero ideal
        let one = TautClass::one(3, Variant::Open);
        let ann = annihilator(&[one], &ring, Variant::Open).unwrap();
        assert!(ann.is_empty());

        // g=4: Ann(λ3, λ2) = (λ3 λ2)
        let ring = build_ring(4).unwrap();
        assert!(annihilator_is_principal(&ring, 3).unwrap());
    }

    #[test]
    fn verify_suites_small() {
        let rings = RingCache::up_to(3).unwrap();
        for g in 2..=3 {
            let r15 = verify_thm15(g, &rings);
            assert!(r15.all_passed(), "thm15 failed at g={g}");
            let r16 = verify_thm16(g, &rings);
            assert!(r16.all_passed(), "thm16 failed at g={g}");
        }
    }

    #[test]
    fn functional_json_round_trip() {
        let rings = RingCache::up_to(2).unwrap();
        let p = part(&[1, 1]);
        let f = product_pairing_functional(&p, Variant::Open, &rings).unwrap();
        let json = f.to_json();
        let back = PairingFunctional::from_json(&json, rings.get(2)).unwrap();
        assert_eq!(f, back);
    }
}
