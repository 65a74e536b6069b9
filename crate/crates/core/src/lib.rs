//! Finite-dimensional commutative associative algebras and prehomogeneous
//! modules of commutative linear algebraic groups.
//!
//! A commutative linear algebraic group is isomorphic to `(G_m)^r x (G_a)^s`.
//! Every prehomogeneous module of such a group is the module `A` of a
//! finite-dimensional commutative associative unital algebra acted on by its
//! unit group `G(A)`. This crate makes both directions of that correspondence
//! executable over the rationals:
//!
//! - [`present`] parses algebra presentations `K[x1,..,xk]/(g1,..,gs)` and
//!   ships the built-in classification of the 42 local algebras of dimension
//!   at most 6.
//! - [`groebner`] computes reduced Groebner bases and standard-monomial bases
//!   of zero-dimensional quotients.
//! - [`algebra`] builds structure constants, checks axioms, decomposes into
//!   local summands, and computes isomorphism-distinguishing fingerprints and
//!   orbit data.
//! - [`rep`] constructs the symbolic matrix representation of the unit group
//!   `G(A)` on `A` via exponentials of nilpotents.
//! - [`reconstruct`] goes the other way: from a commuting matrix family with
//!   an open orbit back to the algebra, through commutant computation.
//! - [`action`] verifies parameterized polynomial actions on affine space
//!   (translations, the Hirzebruch-surface family, block examples).
//!
//! All arithmetic is exact over arbitrary-precision rationals; nothing in the
//! core uses floating point.
//!
//! Sweeps over the built-in table (verification, pairwise comparison, round
//! trips) run data-parallel through [`sweep`] when the `parallel` feature
//! (default) is enabled, with an identical sequential fallback when it is not.

pub mod action;
pub mod algebra;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod partitions;
pub mod poly;
pub mod present;
pub mod rat;
pub mod reconstruct;
pub mod rep;
pub mod sweep;

pub use error::{Error, Result};
pub use rat::Rat;
