//! Toolkit for continuous propositional logic and its algebraic semantics.
//!
//! The crate provides:
//!
//! - exact dyadic/rational scalar arithmetic ([`arith`]);
//! - ASTs, parsers and evaluators for continuous terms and lattice-group
//!   terms, plus the hat translation between them ([`term`]);
//! - continuous-algebra instances and constructions: the standard unit
//!   interval, its dual, finite operation tables, products, quotients and
//!   lattice-group images, with axiom audits ([`algebra`]);
//! - 2-divisible lattice-ordered groups with strong unit ([`group`]);
//! - an exact decision kernel for equational validity over the standard
//!   algebra with counterexample extraction ([`decide`]);
//! - the propositional logic itself: formulas, valuations, axiom schemata,
//!   a Hilbert-style proof checker and the formula-to-term bridge ([`cpl`]);
//! - a batch CLI surface ([`cli`], binary `cpl`).

pub mod algebra;
pub mod arith;
pub mod cli;
pub mod cpl;
pub mod decide;
pub mod group;
mod lp;
mod parse;
pub mod sampling;
pub mod term;

pub use arith::{Dyadic, Rational, UnitDyadic};
