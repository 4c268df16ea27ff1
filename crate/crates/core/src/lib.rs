//! Translation-invariant star products on ℝᵐ and their α*-cohomology.
//!
//! A translation-invariant product is fixed by a 2-cocycle `α` through
//!
//! ```text
//! (f ⋆ g)~(p+q) ∋ f̃(q) g̃(p) e^{α(p+q, q)}
//! ```
//!
//! This crate evaluates such products on finite plane-wave sums
//! ([`modefield`]), implements the cochain complex and its coboundary
//! ([`cochain`]), validates and classifies cocycles by the antisymmetric
//! matrix of their harmonic representative ([`cocycle`]), and checks the
//! integral identity relating products that differ by a coboundary
//! ([`equivalence`]). Named products and seeded generators live in
//! [`catalog`].

pub mod catalog;
pub mod cochain;
pub mod cocycle;
pub mod diff;
pub mod equivalence;
pub mod error;
pub mod json;
pub mod modefield;
pub mod momentum;
pub mod polynomial;
pub mod report;
pub mod sampling;

pub use cochain::{coboundary, NCochain};
pub use cocycle::{
    classify, coordinate_commutator, harmonic_projection, BlackBoxCocycle, Cocycle, ComplexMatrix,
    StarCocycle, ThetaClass,
};
pub use equivalence::{gauge_transform, GaugeCochain};
pub use error::{Error, Result};
pub use modefield::{integral, star, star_chain, ModeField};
pub use momentum::MomentumVector;
pub use num_complex::Complex64;
pub use polynomial::Polynomial;
pub use report::Report;
