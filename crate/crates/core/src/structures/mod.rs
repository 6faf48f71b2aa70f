//! Bracket structures with values in `Ω₁`, their predicates, and `F_p` Lie
//! algebras.

mod format;
mod lie;
mod tensor;

pub use format::{parse_tensor, write_tensor};
pub use lie::{lie_invariants, FpLieAlgebra, LieInvariants};
pub use tensor::StructureTensor;
#[allow(unused_imports)]
pub(crate) use tensor::{lower_central_series, unit};

use std::sync::Arc;

use crate::error::Result;
use crate::linear::{MixedVector, Module, Partition, Side};

/// Canonical `Ω₁` basis of `U` or `V` plus membership tests for `Ω₁` and `℧₁`.
#[derive(Clone, Debug)]
pub struct Omega1Mho1 {
    module: Arc<Module>,
    pub basis: Vec<MixedVector>,
}

impl Omega1Mho1 {
    /// `p·x = 0` resp. `T·x = 0`.
    pub fn in_omega1(&self, x: &MixedVector) -> bool {
        self.module.in_omega1(x.coords())
    }

    /// `x ∈ p·U` resp. `x ∈ T·V`.
    pub fn in_mho1(&self, x: &MixedVector) -> bool {
        self.module.in_mho1(x.coords())
    }
}

pub fn omega1_mho1_bases(p: u64, shape: &Partition, side: Side) -> Result<Omega1Mho1> {
    let module = Module::new(p, shape.clone(), side)?;
    let basis = module.omega1_basis();
    Ok(Omega1Mho1 { module, basis })
}
