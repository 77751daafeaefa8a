//! Exact computer algebra in the tautological rings of the moduli of
//! principally polarized abelian varieties and the isomorphic Chow ring of
//! the Lagrangian Grassmannian.
//!
//! The crate provides:
//!
//! - [`arith`]: Bernoulli numbers, zeta values at negative odd integers,
//!   and the proportionality constants `gamma_g`, all in exact rational
//!   arithmetic;
//! - [`ring`]: the quotient ring `Q[λ_1, ..., λ_g]` modulo Mumford's
//!   relation in the square-free monomial basis, with multiplication,
//!   normal forms, and the three integration normalizations;
//! - [`oracle`]: an independent brute-force implementation of the same
//!   quotient by dense row reduction, used to cross-check the ring tables;
//! - [`projection`]: Gorenstein pairings, the projection operator, and the
//!   Schur-determinant formulas for the projections of product loci;
//! - [`realmult`]: Schur classes, zeta constants and Euler-class identities
//!   for the loci of abelian varieties with real multiplication;
//! - [`suites`]: named verification suites driving all of the above.

pub mod arith;
pub mod oracle;
pub mod linalg;
pub mod poly;
pub mod projection;
pub mod report;
pub mod ring;

pub use arith::{bernoulli, gamma_g, zeta_neg, Rational};
pub use ring::{
    build_ring, integrate_abar, integrate_lg, integrate_open, RingCache, RingContext,
    SquareFreeMonomial, TautClass, Variant,
};
