//! Finite-dimensional modules: validation, torus weights, block parabolics,
//! parabolic induction and restriction, and simplicity tests.

mod construct;
mod irreducible;
mod module;
mod weights;

pub use construct::{
    character_module, parabolic_induce, pullback_from_type_a, restrict_to_weight,
    type_a_one_dim, type_a_principal_series,
};
pub use irreducible::{
    algebra_dimension, composition_factors, find_isomorphism, hom_space, irreducibility,
    is_irreducible, IrreducibilityReport, BURNSIDE_MAX_DIM,
};
pub use module::{check_module, validate_module, HModule};
pub use weights::{
    block_label, generalized_weights, mu_character, orbit_composition, stab_subalgebra,
    twist_character, weight_decomposition, weight_space, BlockCharacter, ParabolicDatum,
    TorusCharacter, Weight,
};
