//! Exact-arithmetic engine for representation theory of small finite
//! classical groups.
//!
//! The crate builds three families of matrix groups over odd-characteristic
//! finite fields (general linear, odd special orthogonal, and quasi-split
//! non-split even special orthogonal), computes their character tables by the
//! class-algebra method in exact cyclotomic arithmetic, and evaluates the
//! Bessel functions, zeta sums, intertwining operators and gamma factors
//! attached to generic representations twisted by general linear groups.
//! Every quantity is exact: values live in cyclotomic fields with rational
//! coefficients, and all comparisons are equality, never tolerance.

pub mod chartab;
pub mod cyclo;
pub mod error;
pub mod fq;
pub mod group;
pub mod mat;
pub mod reps;
pub mod subgroups;
pub mod unip;
pub mod weyl;
pub mod zeta;

pub use error::{Error, Result};
