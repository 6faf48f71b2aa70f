//! The Lazard functor from nilpotent Lie rings of class below `p` to finite
//! p-groups via the truncated BCH series, group-side invariants, and the
//! class-two inverse.

mod bch;
mod functor;
mod group;
mod iso;
mod subgroups;

pub use bch::{
    bch_terms, cross_check, expand_series, log_exp_product, max_denominator_prime, BchSeries, BchTerm, Letter,
};
pub use functor::{gp, lie_subrings_and_ideals, lp_class2, verify_ml_properties, MlReport};
pub use group::{commutator_and_subgroups, element_order, group_type, AssocCoverage, CommutatorData, GroupTable};
pub use iso::{
    extend_homomorphism, find_isomorphism, generating_set, group_invariants, groups_isomorphic, is_isomorphism,
    GroupInvariants,
};
pub use subgroups::{all_subgroups, closure, ElementSet, Subgroup};
