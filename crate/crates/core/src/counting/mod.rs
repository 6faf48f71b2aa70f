//! Counting groups of order `p^n` whose derived subgroup has exponent
//! dividing `p`, through central nilpotent endomorphisms of nilpotent Lie
//! algebras and their automorphism orbits.

mod cset;
mod nendo;
mod totals;
mod transversal;

pub use cset::{
    aut_lie, aut_lie_candidates, c_set, c_set_lambda, conjugation_orbit_sum, orbit_sum, CentralNilEndo, OrbitSum,
};
pub use nendo::{n_endo, verify_ne_equals_c, NeReport};
pub use totals::{count_partition, count_report, count_total, CountReport, PartitionCount};
pub use transversal::{
    brute_transversal, transversal_from_dir, transversal_k, Completeness, Transversal, TransversalSource, MANIFEST,
};
