use super::tensor::{lower_central_series, unit};
use super::StructureTensor;
use crate::error::{Error, Result};
use crate::linear::{FpMatrix, Module, Partition, Side};

/// Isomorphism-invariant dimensions of a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieInvariants {
    pub center_dim: usize,
    pub derived_dim: usize,
    /// `dim K^1, dim K^2, …`, ending in 0 for nilpotent algebras.
    pub lcs_dims: Vec<usize>,
    /// Length of the lower central series; `None` if it never reaches 0.
    pub class: Option<usize>,
}

/// An `n`-dimensional Lie algebra over `F_p` given by its bracket on the
/// standard basis, `bracket[(i*n + j)*n + l]` the coefficient of `e_l` in
/// `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpLieAlgebra {
    p: u64,
    dim: usize,
    bracket: Vec<u64>,
    invariants: LieInvariants,
    center: Vec<Vec<u64>>,
}

impl FpLieAlgebra {
    pub fn new(p: u64, dim: usize, bracket: Vec<u64>) -> Result<Self> {
        let module = Module::new(p, Partition::ones(dim), Side::Ring)?;
        Self::from_tensor(&StructureTensor::new(module, bracket)?)
    }

    /// The underlying `F_p`-algebra of a tensor on shape `(1,…,1)`.
    pub fn from_tensor(t: &StructureTensor) -> Result<Self> {
        if t.shape().parts().iter().any(|&x| x != 1) {
            return Err(Error::Precondition(format!("shape {} is not (1,…,1)", t.shape())));
        }
        if !t.is_alternating() {
            return Err(Error::NotLie("bracket is not alternating".into()));
        }
        if let Some(w) = t.jacobi_violation() {
            return Err(Error::NotLie(format!("Jacobi fails at {w:?}")));
        }
        let mut k = FpLieAlgebra {
            p: t.p(),
            dim: t.t(),
            bracket: t.alpha().to_vec(),
            invariants: LieInvariants { center_dim: 0, derived_dim: 0, lcs_dims: vec![], class: None },
            center: vec![],
        };
        k.center = k.compute_center();
        k.invariants = k.compute_invariants();
        Ok(k)
    }

    pub fn abelian(p: u64, dim: usize) -> Result<Self> {
        Self::new(p, dim, vec![0; dim * dim * dim])
    }

    pub fn heisenberg(p: u64) -> Result<Self> {
        Self::from_tensor(&StructureTensor::heisenberg(p, Side::Ring)?)
    }

    pub fn filiform4(p: u64) -> Result<Self> {
        Self::from_tensor(&StructureTensor::filiform4(p, Side::Ring)?)
    }

    /// Heisenberg algebra plus a one-dimensional abelian summand.
    pub fn heisenberg_plus_line(p: u64) -> Result<Self> {
        let module = Module::new(p, Partition::ones(4), Side::Ring)?;
        Self::from_tensor(&StructureTensor::antisymmetric(module, &[(0, 1, 2, 1)])?)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_tensor(&self) -> &[u64] {
        &self.bracket
    }

    /// Coefficient of `e_l` in `[e_i, e_j]`.
    #[inline]
    pub fn coeff(&self, i: usize, j: usize, l: usize) -> u64 {
        self.bracket[(i * self.dim + j) * self.dim + l]
    }

    pub fn to_tensor(&self, side: Side) -> StructureTensor {
        let module = Module::new(self.p, Partition::ones(self.dim), side).expect("validated on construction");
        StructureTensor::new(module, self.bracket.clone()).expect("length matches")
    }

    pub fn bracket(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let n = self.dim;
        let p = self.p;
        let mut out = vec![0u64; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                let c = x[i] * y[j] % p;
                if c == 0 {
                    continue;
                }
                for (l, o) in out.iter_mut().enumerate() {
                    *o = (*o + c * self.coeff(i, j, l)) % p;
                }
            }
        }
        out
    }

    /// Basis of `Z(K)`.
    pub fn center_basis(&self) -> &[Vec<u64>] {
        &self.center
    }

    pub fn invariants(&self) -> &LieInvariants {
        &self.invariants
    }

    pub fn is_nilpotent(&self) -> bool {
        self.invariants.class.is_some()
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().all(|&a| a == 0)
    }

    /// Whether `[x g, y g] = [x, y] g` on all basis pairs.
    pub fn is_automorphism(&self, g: &FpMatrix) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = self.bracket(g.row(i), g.row(j));
                let bij = &self.bracket[(i * n + j) * n..(i * n + j + 1) * n];
                lhs == g.apply_row(bij)
            })
        })
    }

    fn compute_center(&self) -> Vec<Vec<u64>> {
        // x ∈ Z(K) iff Σ_i x_i α_ij^l = 0 for all j, l.
        let n = self.dim;
        let mut rows = Vec::with_capacity(n * n);
        for j in 0..n {
            for l in 0..n {
                rows.push((0..n).map(|i| self.coeff(i, j, l)).collect::<Vec<_>>());
            }
        }
        if n == 0 {
            return vec![];
        }
        FpMatrix::from_rows(self.p, &rows).expect("uniform rows").kernel()
    }

    fn compute_invariants(&self) -> LieInvariants {
        let n = self.dim;
        let full: Vec<Vec<u64>> = (0..n).map(|i| unit(n, i)).collect();
        let (lcs_dims, reached_zero) =
            lower_central_series(self.p, n, full, |b| (0..n).map(|j| self.bracket(b, &unit(n, j))).collect());
        LieInvariants {
            center_dim: self.center.len(),
            derived_dim: lcs_dims.get(1).copied().unwrap_or(0),
            class: reached_zero.then(|| lcs_dims.len().saturating_sub(1)),
            lcs_dims,
        }
    }
}

pub fn lie_invariants(k: &FpLieAlgebra) -> LieInvariants {
    k.invariants.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_examples() {
        let a = FpLieAlgebra::abelian(3, 3).unwrap();
        let i = lie_invariants(&a);
        assert_eq!((i.center_dim, i.derived_dim, i.class), (3, 0, Some(1)));

        let h = FpLieAlgebra::heisenberg(3).unwrap();
        let i = lie_invariants(&h);
        assert_eq!((i.center_dim, i.derived_dim, i.class), (1, 1, Some(2)));

        let f = FpLieAlgebra::filiform4(3).unwrap();
        let i = lie_invariants(&f);
        assert_eq!((i.center_dim, i.derived_dim, i.class), (1, 2, Some(3)));
        assert_eq!(i.lcs_dims, vec![4, 2, 1, 0]);
    }

    #[test]
    fn non_nilpotent_algebra_has_no_class() {
        // [x, y] = y
        let k = FpLieAlgebra::new(3, 2, vec![0, 0, 0, 1, 0, 2, 0, 0]).unwrap();
        assert!(!k.is_nilpotent());
        assert_eq!(k.invariants().center_dim, 0);
    }

    #[test]
    fn rejects_non_lie() {
        assert!(matches!(FpLieAlgebra::new(3, 1, vec![1]), Err(Error::NotLie(_))));
        // alternating, Jacobi fails: [e1,e2]=e1, [e2,e3]=e2, [e3,e1]=e3 style counterexample
        let m = Module::new(3, Partition::ones(3), Side::Ring).unwrap();
        let t = StructureTensor::antisymmetric(m, &[(0, 1, 0, 1), (1, 2, 0, 1)]).unwrap();
        if t.jacobi_violation().is_some() {
            assert!(FpLieAlgebra::from_tensor(&t).is_err());
        }
    }

    #[test]
    fn automorphism_check() {
        let h = FpLieAlgebra::heisenberg(3).unwrap();
        assert!(h.is_automorphism(&FpMatrix::identity(3, 3)));
        let swap = FpMatrix::from_rows(3, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert!(!h.is_automorphism(&swap));
        let swap_neg = FpMatrix::from_rows(3, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 2]]).unwrap();
        assert!(h.is_automorphism(&swap_neg));
    }
}
