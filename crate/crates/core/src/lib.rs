//! Exact symbolic computation with the Dunkl-Opdam subalgebra of G(m,1,n)
//! and type-A graded Hecke algebras.

pub mod algebra;
pub mod clifford;
pub mod dirac;
pub mod error;
pub mod group;
pub mod langlands;
pub mod linalg;
pub mod report;
pub mod reps;
pub mod scalar;

pub use error::{Error, Result};
