//! Finite sesquicategories: 2-cell structures over finite categories.
//!
//! The crate models a category together with a system of 2-cells between
//! parallel morphisms that can be summed vertically and whiskered by
//! morphisms on both sides, without assuming a horizontal composition.
//! On top of that it decides when the naturality condition holds (making
//! the data a 2-category), computes commutators and naturalizations,
//! checks cartesianness, and verifies pseudocategory coherence in both
//! its natural and non-natural forms.
//!
//! Module map:
//! - [`algebra`]: finite groups, monoids, chain complexes, internal
//!   categories, crossed modules, and preset instances.
//! - [`fincat`]: finite categories (explicit tables or structured
//!   carriers), pullbacks, mediators.
//! - [`cellstruct`]: 2-cell structures, axiom validation, structure
//!   morphisms.
//! - [`naturality`]: the naturality relation, horizontal composition,
//!   commutators.
//! - [`constructions`]: the canonical structures (discrete, codiscrete,
//!   action-based, conjugation, derivations, homotopies, internal
//!   transformations).
//! - [`cartesian`]: pullback preservation and induced product cells.
//! - [`naturalize`]: reflection into natural structures by congruence
//!   closure.
//! - [`pseudocat`]: pseudocategory data, coherence checking, and the two
//!   concrete builders.
//! - [`report`]: findings, validation reports, error type.

pub mod algebra;
pub mod cartesian;
pub mod cellstruct;
pub mod constructions;
pub mod fincat;
pub mod naturality;
pub mod naturalize;
pub mod pseudocat;
pub mod report;
