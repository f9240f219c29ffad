//! The Dirac element in H (x) C(V), the square identities, and Dirac cohomology
//! of finite-dimensional modules.

mod element;
mod module;
mod square;

pub use element::HCElement;
pub use square::{dirac_derivation, dirac_element, dirac_square_check, DiracReport};
pub use module::{
    clifford_left_matrix, dirac_cohomology, dirac_cohomology_blockwise, dirac_matrix,
    parabolic_dirac_matrix, type_a_dirac_cohomology_dim, weight_space_dirac, BlockwiseReport,
    DcRecord, DiracCohomology,
};
