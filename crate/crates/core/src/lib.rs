//! Grothendieck groups of finitely presented exact categories, finitely
//! generated abelian groups, and the classification of dense (co)resolving
//! subcategories by subgroups of K₀ containing the image of a generator.
//!
//! The crate is organized in four layers:
//!
//! * [`intlinalg`] — exact integer linear algebra: Hermite and Smith normal
//!   forms with unimodular transformations, lattice membership.
//! * [`abelian`] — finitely generated abelian groups presented as a free
//!   group modulo a relation lattice, with subgroup enumeration.
//! * [`excat`] — finite presentations of exact categories, their K₀, and the
//!   classification of dense (co)resolving subcategories, with a bounded
//!   brute-force verifier for the correspondence.
//! * [`cartan`] — quivers with monomial relations, nonzero-path enumeration,
//!   Cartan matrices and the divisor-count formula for dense resolving
//!   subcategories of module categories.
//!
//! All arithmetic is arbitrary precision. Every operation is a pure function
//! on immutable values; with the `parallel` feature (default) the heavier
//! scans run on rayon but results and orderings stay deterministic.

pub mod abelian;
pub mod cartan;
pub mod excat;
pub mod intlinalg;

mod par;
