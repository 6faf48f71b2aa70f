use crate::error::{Error, Result};

/// Caps on exhaustive enumerations. Every operation that enumerates checks
/// the relevant cap first and fails with [`Error::Budget`] instead of running.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest general-linear or admissible-pair group enumerated.
    pub gl_order: u128,
    /// Largest tensor space enumerated (before filtering).
    pub tensor_space: u128,
    /// Largest group order for which associativity is checked on all triples.
    pub assoc_full_order: usize,
    /// Number of random triples checked above `assoc_full_order`.
    pub assoc_samples: usize,
    /// Largest group order for subgroup-lattice and property verification.
    pub lattice_order: usize,
    /// Largest group order for backtracking isomorphism tests.
    pub iso_order: usize,
    /// Largest number of candidate maps enumerated for endomorphism searches.
    pub endo_candidates: u128,
    /// Largest (tensors x pairs) product checked exhaustively in verifiers.
    pub verify_work: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            gl_order: 10_000_000,
            tensor_space: 1_000_000,
            assoc_full_order: 243,
            assoc_samples: 1_000_000,
            lattice_order: 243,
            iso_order: 81,
            endo_candidates: 10_000_000,
            verify_work: 1_000_000,
        }
    }
}

impl Budget {
    pub(crate) fn check(what: &str, size: u128, limit: u128) -> Result<()> {
        if size > limit {
            Err(Error::budget(what, size, limit))
        } else {
            Ok(())
        }
    }
}
