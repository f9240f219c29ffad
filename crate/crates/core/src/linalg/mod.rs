//! Exact dense linear algebra over Q(zeta_L).

pub mod cpoly;
mod eigen;
mod matrix;
mod subspace;

pub use eigen::{
    charpoly, eigenspaces_from_candidates, field_roots, generalized_eigenspace,
    simultaneous_generalized_eigenspaces,
};
pub use matrix::{Matrix, Vector};
pub use subspace::{
    image, intersect, kernel, largest_invariant_subspace, map_subspace, preimage, quotient_op,
    restrict, restrict_to_basis, rref, spin, unit, Subspace,
};
