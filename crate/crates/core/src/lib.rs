//! A workbench for finite distributive lattices with a commutative monoidal
//! operation and an implication (DLCMI) and their neighbour varieties.
//!
//! * [`algebra`]: finite algebras and the derived term operations.
//! * [`varieties`]: axiom checkers with counterexample witnesses.
//! * [`congruence`]: principal congruences, both by closure and by the
//!   `t_n^k` characterization, and the congruence lattice.
//! * [`compat`]: compatible functions and implicitly defined operations.
//! * [`factory`]: named constructions, isomorphism and enumeration.
//! * [`document`]: the JSON file formats.
//! * [`cli`]: the `dlcmi` command line.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod compat;
pub mod congruence;
pub mod document;
pub mod factory;
pub mod varieties;

pub use algebra::{AlgebraError, Element, FiniteAlgebra, Op, Table};
pub use varieties::{VarietyReport, VarietyTag};
