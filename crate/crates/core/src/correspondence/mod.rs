//! Structures on `U = ⊕ Z/p^{λ_i}` and `V = ⊕ F_p[T]/(T^{λ_i})`, the action of
//! admissible pairs on them, and the side-flipping map `θ`.

mod action;
mod automorphisms;
mod orbits;
mod pairs;
mod verify;

pub use action::{act, PreparedPair};
pub use automorphisms::{endomorphism_count, module_automorphisms, ModuleAutomorphism};
pub use orbits::{are_isomorphic, orbits, rep_file_name, tensor_space, tensor_space_size, Filter, Orbit, OrbitReport};
pub use pairs::{admissible_pairs, pairs_with_patterns, patterns, AdmissiblePair, PairGroup};
pub use verify::{
    element_alternating, element_jacobi, element_lower_central_series, verify_gencorr, verify_tensor, GencorrReport,
};

#[allow(unused_imports)]
pub(crate) use action::act_alpha;
#[allow(unused_imports)]
pub(crate) use orbits::{orbit_partition, prepare};
