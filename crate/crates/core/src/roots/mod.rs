//! Roots of gl(p+q|r+s) relative to `h`, and restricted roots relative to `a`.

pub mod oracle;
pub mod restricted;
pub mod table;
pub mod weights;

pub use oracle::{oracle_verify_roots, weight_space_decomposition, OracleReport, WeightSpace};
pub use restricted::{
    flip_positive_system, is_positive_system, positive_closed_form, positive_restricted_system, positive_systems_within, prop_rho_checks,
    restricted_root_data, restricted_root_data_closed_form, rho_alpha, simple_roots, weyl_vector, weyl_vector_supertrace,
    RestrictedRootDatum, RhoCheck, RootSystem,
};
pub use table::{full_root_table, FullRootDatum};
pub use weights::{restrict_weight, AStarWeight, HWeight};
