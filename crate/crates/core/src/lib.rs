//! Exhaustive small-instance computations relating rings of order `p^n` with
//! `p[R,R] = 0` to `F_p[T]/(T^n)`-algebras with `T[A,A] = 0`, the
//! Baker-Campbell-Hausdorff bridge between nilpotent Lie rings and p-groups,
//! and the orbit-sum counts of p-groups whose derived subgroup has exponent
//! dividing `p`.
//!
//! Conventions: matrices act on the right of row vectors, so `x * M` is the
//! image of `x`, and a product `A * B` means "apply `A`, then `B`".

#![allow(clippy::needless_range_loop)]

pub mod budget;
pub mod correspondence;
pub mod counting;
pub mod error;
pub mod lazard;
pub mod linear;
pub mod report;
pub mod structures;

pub use budget::Budget;
pub use error::{Error, Result};
pub use linear::{
    block_pattern_check, gl_enumerate, gl_order, jordan_type, rational_reduce, BlockPattern, FpMatrix, MixedVector,
    Module, Partition, Side,
};
pub use structures::{FpLieAlgebra, LieInvariants, StructureTensor};
