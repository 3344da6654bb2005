// SPDX-License-Identifier: Apache-2.0

//! Exact symbolic engine for quasi-polyadic and polyadic equality set
//! algebras over the weak rational space `V`: all finite-support sequences
//! `s: ω → ℚ`.
//!
//! Elements of `℘(V)` are represented as disjunctions of conjunctions of
//! signed affine constraints `Σ r_i s_i = t` whose coefficient sequences are
//! eventually constant. That fragment is closed under every operation of the
//! algebra (Boolean operations, cylindrification over finite and cofinite
//! coordinate sets, substitution along finite transformations, diagonals),
//! and emptiness is decidable by exact Gaussian elimination.
//!
//! Module map:
//!
//! - [`constraint`]: rationals, points, coefficient sequences, atoms.
//! - [`qe`]: literals, cells, elements, satisfiability with witnesses,
//!   projection, and semantic equality.
//! - [`ops`]: the algebra operations and dimension sets.
//! - [`term`]: expression trees over the algebra.
//! - [`constructions`]: hyperplane families, closure operators, `G(X)`
//!   enumeration, the small-ideal classification, and generator search.
//! - [`fusion`]: single-generator fusion, recovery, and compression checks.
//! - [`sampling`]: seeded random generators for property checks.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constraint;
pub mod constructions;
pub mod error;
pub mod fusion;
mod linear;
pub mod ops;
pub mod qe;
pub mod sampling;
pub mod term;

pub use constraint::{Atom, AtomClass, CoeffSeq, Point, Rational};
pub use error::Error;
pub use ops::{DimSet, GammaSpec, Transformation};
pub use qe::{Cell, Element, Literal};
pub use term::{Branch, Term};
