//! PBW normal-form engine for the Dunkl-Opdam subalgebra and type-A graded
//! Hecke algebras.

mod bforms;
mod casimir;
mod descriptor;
mod element;
mod families;
mod reference;
mod verify;

pub use bforms::{
    drinfeld_conditions, extract_bforms, extract_bforms_raw, permutation_rho, BForms,
};
pub use casimir::{casimirs, CasimirData, CoverTerm};
pub use descriptor::{divided_difference, Descriptor, Mode, PushTerm, ZMono};
pub use element::{mono_add, mono_degree, unit_mono, zero_mono, DOElement};
#[allow(unused_imports)]
pub(crate) use element::fmt_mono;
pub use families::{build_family, family, jm, kappa, scale_element, Family};
pub use reference::nf_mul_reference;
pub use verify::{
    jacobi_pbw_check, jacobi_pbw_check_seeded, random_element, verify_presentations, ASSOC_SEED,
    ASSOC_TRIPLES,
};
