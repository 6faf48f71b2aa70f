//! Exact arithmetic over `F_p` and `Z/p^k`, partitions, matrices and the
//! modules `U = ⊕ Z/p^λ_i` and `V = ⊕ F_p[T]/(T^λ_i)`.

mod arith;
mod gl;
pub(crate) mod matrix;
mod partition;
mod vector;

pub use arith::{is_prime, mod_inverse, pow_checked, rational_reduce};
pub use gl::{gl_enumerate, gl_order, GlEnumerator};
pub use matrix::{block_pattern_check, jordan_type, span_basis, BlockPattern, FpMatrix};
pub use partition::Partition;
pub use vector::{MixedVector, Module, Side};
