use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linear::{span_basis, MixedVector, Module, Partition, Side};

/// Structure constants `α_ij^l` of a bracket on `U` (ring side) or `V`
/// (algebra side) whose values lie in `Ω₁`:
///
/// `[u_i, u_j] = Σ_l α_ij^l p^{λ_l-1} u_l`, `[v_i, v_j] = Σ_l α_ij^l T^{λ_l-1} v_l`.
///
/// Stored 0-based with `alpha[(i*t + j)*t + l]`, every entry in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    module: Arc<Module>,
    alpha: Vec<u64>,
}

impl StructureTensor {
    pub fn new(module: Arc<Module>, alpha: Vec<u64>) -> Result<Self> {
        let t = module.t();
        if alpha.len() != t * t * t {
            return Err(Error::Dimension(format!("{} coefficients for t = {t}", alpha.len())));
        }
        let p = module.p();
        let alpha = alpha.into_iter().map(|a| a % p).collect();
        Ok(StructureTensor { module, alpha })
    }

    pub fn zero(module: Arc<Module>) -> Self {
        let t = module.t();
        StructureTensor { module, alpha: vec![0; t * t * t] }
    }

    /// Tensor with the given 0-based `(i, j, l, value)` entries, zero elsewhere.
    pub fn from_entries(module: Arc<Module>, entries: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let mut out = Self::zero(module);
        for &(i, j, l, v) in entries {
            out.set(i, j, l, v)?;
        }
        Ok(out)
    }

    /// Sets `α_ij^l = v` and `α_ji^l = -v` for each entry.
    pub fn antisymmetric(module: Arc<Module>, entries: &[(usize, usize, usize, i64)]) -> Result<Self> {
        let mut out = Self::zero(module);
        for &(i, j, l, v) in entries {
            out.set(i, j, l, v)?;
            out.set(j, i, l, -v)?;
        }
        Ok(out)
    }

    /// The Heisenberg bracket `[x_1, x_2] = x_3` on shape `(1,1,1)`.
    pub fn heisenberg(p: u64, side: Side) -> Result<Self> {
        let m = Module::new(p, Partition::ones(3), side)?;
        Self::antisymmetric(m, &[(0, 1, 2, 1)])
    }

    /// Filiform bracket `[x_1, x_2] = x_3`, `[x_1, x_3] = x_4` on shape `(1,1,1,1)`.
    pub fn filiform4(p: u64, side: Side) -> Result<Self> {
        let m = Module::new(p, Partition::ones(4), side)?;
        Self::antisymmetric(m, &[(0, 1, 2, 1), (0, 2, 3, 1)])
    }

    pub fn module(&self) -> &Arc<Module> {
        &self.module
    }

    pub fn p(&self) -> u64 {
        self.module.p()
    }

    pub fn shape(&self) -> &Partition {
        self.module.shape()
    }

    pub fn side(&self) -> Side {
        self.module.side()
    }

    pub fn t(&self) -> usize {
        self.module.t()
    }

    pub fn alpha(&self) -> &[u64] {
        &self.alpha
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        let t = self.t();
        self.alpha[(i * t + j) * t + l]
    }

    pub fn set(&mut self, i: usize, j: usize, l: usize, v: i64) -> Result<()> {
        let t = self.t();
        if i >= t || j >= t || l >= t {
            return Err(Error::Dimension(format!("index ({i},{j},{l}) out of range for t = {t}")));
        }
        self.alpha[(i * t + j) * t + l] = v.rem_euclid(self.p() as i64) as u64;
        Ok(())
    }

    /// Same shape and side, new coefficients.
    pub fn with_alpha(&self, alpha: Vec<u64>) -> Result<Self> {
        Self::new(self.module.clone(), alpha)
    }

    /// `θ`: identical coefficients on the other side.
    pub fn theta(&self) -> StructureTensor {
        StructureTensor { module: self.module.with_side(self.side().flip()), alpha: self.alpha.clone() }
    }

    /// Bracket of two elements in `Ω₁` coordinates (mod `p`). Only `x̄, ȳ` matter.
    pub fn bracket_omega(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let t = self.t();
        let p = self.p();
        let mut out = vec![0u64; t];
        for i in 0..t {
            let xi = x[i] % p;
            if xi == 0 {
                continue;
            }
            for j in 0..t {
                let c = xi * (y[j] % p) % p;
                if c == 0 {
                    continue;
                }
                let row = &self.alpha[(i * t + j) * t..(i * t + j + 1) * t];
                for (o, &a) in out.iter_mut().zip(row) {
                    *o = (*o + c * a) % p;
                }
            }
        }
        out
    }

    /// Bracket of two coordinate vectors, as module coordinates.
    pub fn bracket_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.module.from_omega_coords(&self.bracket_omega(x, y))
    }

    pub fn bracket_eval(&self, x: &MixedVector, y: &MixedVector) -> Result<MixedVector> {
        if x.module() != &self.module || y.module() != &self.module {
            return Err(Error::Mismatch("bracket arguments do not live on the tensor's module".into()));
        }
        Ok(self.module.vector_unchecked(self.bracket_coords(x.coords(), y.coords())))
    }

    /// Factors through the exterior square: `α_ii^l = 0` and `α_ij^l = -α_ji^l`.
    pub fn is_alternating(&self) -> bool {
        let t = self.t();
        let p = self.p();
        (0..t).all(|i| {
            (0..t).all(|l| self.get(i, i, l) == 0)
                && (i + 1..t).all(|j| (0..t).all(|l| (self.get(i, j, l) + self.get(j, i, l)).is_multiple_of(p)))
        })
    }

    /// First `(i, j, k, m)` at which the cyclic double-bracket sum over the
    /// indices `l` with `λ_l = 1` is nonzero.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let t = self.t();
        let p = self.p();
        let ones = self.shape().ones_count();
        if ones == 0 {
            return None;
        }
        let tail = t - ones..t;
        for i in 0..t {
            for j in 0..t {
                for k in 0..t {
                    for m in 0..t {
                        let mut s = 0;
                        for l in tail.clone() {
                            s += self.get(i, j, l) * self.get(l, k, m)
                                + self.get(k, i, l) * self.get(l, j, m)
                                + self.get(j, k, l) * self.get(l, i, m);
                        }
                        if s % p != 0 {
                            return Some((i, j, k, m));
                        }
                    }
                }
            }
        }
        None
    }

    /// Jacobi identity. Always true when `λ_t ≥ 2`, since then `Ω₁ ⊆ ℧₁`.
    pub fn jacobi_holds(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    pub fn is_lie(&self) -> bool {
        self.is_alternating() && self.jacobi_holds()
    }

    /// The bracket induced on `R/℧₁(R)` (a `t`-dimensional `F_p`-algebra),
    /// returned on shape `(1,…,1)`: keeps `α_ij^l` exactly where `λ_l = 1`.
    pub fn quotient_by_mho1(&self) -> StructureTensor {
        let t = self.t();
        let parts = self.shape().parts();
        let mut alpha = self.alpha.clone();
        for (idx, a) in alpha.iter_mut().enumerate() {
            if parts[idx % t] != 1 {
                *a = 0;
            }
        }
        let module = Module::new(self.p(), Partition::ones(t), self.side()).expect("smaller than the source module");
        StructureTensor { module, alpha }
    }

    /// Nilpotency via the lower central series of the quotient by `℧₁`.
    pub fn is_nilpotent(&self) -> Result<bool> {
        if !self.is_alternating() {
            return Err(Error::NotLie("bracket is not alternating".into()));
        }
        if let Some(w) = self.jacobi_violation() {
            return Err(Error::NotLie(format!("Jacobi fails at {w:?}")));
        }
        let q = self.quotient_by_mho1();
        let t = self.t();
        let full: Vec<Vec<u64>> = (0..t).map(|i| unit(t, i)).collect();
        let (_, reached_zero) =
            lower_central_series(self.p(), t, full, |b| (0..t).map(|j| q.bracket_omega(b, &unit(t, j))).collect());
        Ok(reached_zero)
    }

    /// Dimensions over `F_p` of `R^2 ⊇ R^3 ⊇ …` (all inside `Ω₁`) for the full
    /// bracket, and whether the series reaches zero.
    pub fn derived_series_in_omega(&self) -> (Vec<usize>, bool) {
        let t = self.t();
        let p = self.p();
        let ones = self.shape().ones_count();
        let start: Vec<Vec<u64>> = (0..t * t).map(|ij| self.alpha[ij * t..(ij + 1) * t].to_vec()).collect();
        let start = span_basis(p, t, &start);
        // [Σ s_l ω_l, u_j] only sees the ω_l that survive mod p, i.e. λ_l = 1.
        lower_central_series(p, t, start, |s| {
            (0..t)
                .map(|j| {
                    let mut out = vec![0u64; t];
                    for l in t - ones..t {
                        if s[l] == 0 {
                            continue;
                        }
                        for m in 0..t {
                            out[m] = (out[m] + s[l] * self.get(l, j, m)) % p;
                        }
                    }
                    out
                })
                .collect()
        })
    }

    /// Nilpotency class of the full ring or algebra (`0` for the zero module,
    /// `1` when abelian), or `None` when not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        if self.t() == 0 {
            return Some(0);
        }
        let (dims, reached_zero) = self.derived_series_in_omega();
        reached_zero.then(|| dims.iter().filter(|&&d| d > 0).count() + 1)
    }
}

pub(crate) fn unit(t: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; t];
    v[i] = 1;
    v
}

/// Iterates `W ↦ span(step(w) for w in basis(W))` from `start`. Returns the
/// dimensions visited (ending in 0 when the series terminates) and whether it
/// reached zero. Stops when the dimension stops decreasing.
pub(crate) fn lower_central_series<F>(p: u64, dim: usize, start: Vec<Vec<u64>>, step: F) -> (Vec<usize>, bool)
where
    F: Fn(&[u64]) -> Vec<Vec<u64>>,
{
    let mut cur = span_basis(p, dim, &start);
    let mut dims = vec![cur.len()];
    loop {
        if cur.is_empty() {
            return (dims, true);
        }
        let images: Vec<Vec<u64>> = cur.iter().flat_map(|b| step(b)).collect();
        let next = span_basis(p, dim, &images);
        if next.len() >= cur.len() {
            return (dims, false);
        }
        dims.push(next.len());
        cur = next;
    }
}
