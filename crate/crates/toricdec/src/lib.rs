//! Exact-arithmetic toolkit for fine-graded modules over homogeneous
//! coordinate rings of toric varieties.
//!
//! The crate computes and verifies graded primary decompositions of
//! fine-graded modules over Cox rings: fans and their combinatorics,
//! divisor class groups via Smith normal forms, monomial ideal
//! arithmetic including irreducible decomposition, degreewise evaluation
//! of module expressions by exact rational linear algebra, chart
//! localization, and the decomposition checks built on top (gap modules,
//! descent filtering, primary verification, Zariski 1-forms).
//!
//! All arithmetic is exact: arbitrary-precision integers for lattice
//! computations and exact rationals for the degreewise linear algebra.
//! Floating point is never used.

pub mod cox;
pub mod doc;
pub mod engine;
pub mod error;
pub mod fan;
pub mod ideal;
pub mod ishida;
pub mod lattice;
pub mod matrix;
pub mod par;
pub mod pipeline;
pub mod report;
mod simplex;

pub use error::{Error, Result};
