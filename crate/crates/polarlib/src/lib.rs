//! Exact computation of polar degrees, Euclidean distance (ED) degrees,
//! Chern-Mather class degrees, and focal-locus degrees of algebraic
//! varieties.
//!
//! The library has two independent pipelines that cross-validate each other:
//!
//! * closed-form engines over the integers ([`rankcalc`], [`focal`]) that
//!   evaluate classical formulas on polar ranks, Plücker invariants, and
//!   Chern-class data, and
//! * an exact computational pipeline ([`poly`], [`elim`], [`critsys`],
//!   [`counting`]) that counts critical points of specific varieties by
//!   building determinantal systems and eliminating variables with
//!   resultants, entirely over the rationals.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod error;
pub mod poly;
pub mod parse;
pub mod elim;
pub mod critsys;
pub mod rankcalc;
pub mod counting;
pub mod focal;

pub use error::{Error, Warning};
pub use parse::parse_polynomial;
pub use poly::{integer, merged_vars, rational, LinearChange, Monomial, Poly, Rational};
