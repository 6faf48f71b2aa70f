use std::path::PathBuf;

use clap::Args;
use plie_core::linear::is_prime;
use plie_core::{Budget, Error, Partition, Result, Side};

/// Budget caps shared by every command.
#[derive(Args, Clone, Debug)]
pub struct BudgetArgs {
    /// Largest general-linear or admissible-pair group enumerated.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub gl_cap: u64,
    /// Largest tensor space enumerated before filtering.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub tensor_cap: u64,
    /// Largest group order whose associativity is checked on all triples.
    #[arg(long, global = true, default_value_t = 243, value_parser = clap::value_parser!(u64).range(1..))]
    pub assoc_cap: u64,
    /// Random triples checked above the associativity cap.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub assoc_samples: u64,
    /// Largest group order for subgroup lattices and isomorphism tests.
    #[arg(long, global = true, default_value_t = 243, value_parser = clap::value_parser!(u64).range(1..))]
    pub lattice_cap: u64,
    /// Largest number of candidate maps in endomorphism searches.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub endo_cap: u64,
    /// Largest tensors-times-pairs product checked exhaustively by `verify`.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub verify_cap: u64,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        Budget {
            gl_order: self.gl_cap as u128,
            tensor_space: self.tensor_cap as u128,
            assoc_full_order: self.assoc_cap as usize,
            assoc_samples: self.assoc_samples as usize,
            lattice_order: self.lattice_cap as usize,
            iso_order: Budget::default().iso_order.min(self.lattice_cap as usize),
            endo_candidates: self.endo_cap as u128,
            verify_work: self.verify_cap as u128,
        }
    }
}

/// Validated settings for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u64,
    pub n: usize,
    pub partition: Option<Partition>,
    pub side: Side,
    pub lie: bool,
    pub nilpotent: bool,
    pub budget: Budget,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub workers: usize,
}

impl RunConfig {
    pub fn require_prime(p: u64) -> Result<()> {
        if is_prime(p) {
            Ok(())
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Sizes the global thread pool; `0` keeps the default.
    pub fn install_workers(&self) -> Result<()> {
        if self.workers == 0 {
            return Ok(());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build_global()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))
    }

    /// Correspondence and counting need `p ≥ n`.
    pub fn require_p_at_least_n(&self, what: &str) -> Result<()> {
        if (self.p as u128) < self.n as u128 {
            return Err(Error::Precondition(format!("{what} requires p ≥ n (p={}, n={})", self.p, self.n)));
        }
        Ok(())
    }
}

/// Parses `--partition` values such as `2,1`.
pub fn parse_partition(s: &str) -> std::result::Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

pub fn parse_side(s: &str) -> std::result::Result<Side, String> {
    s.parse::<Side>().map_err(|e| e.to_string())
}
