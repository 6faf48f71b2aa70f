use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linear::{gl_enumerate, gl_order, jordan_type, FpMatrix, Partition};
use crate::structures::FpLieAlgebra;

/// `σ ∈ C(K)`: nilpotent, central image, and `[xσ, y] = [x, y]σ`.
#[derive(Clone, Debug)]
pub struct CentralNilEndo {
    pub sigma: FpMatrix,
    pub host: Arc<FpLieAlgebra>,
    pub jordan: Partition,
}

/// Coefficient rows of the linear conditions on the `n²` entries of `σ`
/// (unknown `σ_ia` at position `i*n + a`).
fn linear_conditions(k: &FpLieAlgebra) -> Vec<Vec<u64>> {
    let n = k.dim();
    let p = k.p();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // Im σ ⊆ Z(K): Σ_a σ_ia α_aj^l = 0
                let mut r = vec![0u64; n * n];
                for a in 0..n {
                    r[i * n + a] = k.coeff(a, j, l);
                }
                rows.push(r);
                // [e_i σ, e_j] = [e_i, e_j] σ: Σ_a σ_ia α_aj^l - Σ_b α_ij^b σ_bl = 0
                let mut r = vec![0u64; n * n];
                for a in 0..n {
                    r[i * n + a] = k.coeff(a, j, l);
                }
                for b in 0..n {
                    r[b * n + l] = (r[b * n + l] + p - k.coeff(i, j, b)) % p;
                }
                rows.push(r);
            }
        }
    }
    rows
}

fn is_nilpotent_matrix(m: &FpMatrix) -> bool {
    m.pow(m.rows() as u32).is_zero()
}

/// `C(K)`: solves the linear conditions, enumerates the solution space, and
/// keeps the nilpotent solutions. Sorted by matrix entries.
pub fn c_set(k: &FpLieAlgebra, budget: &Budget) -> Result<Vec<CentralNilEndo>> {
    if !k.is_nilpotent() {
        return Err(Error::Precondition("C(K) is defined for nilpotent algebras only".into()));
    }
    let n = k.dim();
    let p = k.p();
    if n == 0 {
        return Ok(vec![]);
    }
    let basis = FpMatrix::from_rows(p, &linear_conditions(k))?.kernel();
    let size = (p as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    Budget::check("C(K) solution space", size, budget.endo_candidates)?;
    let host = Arc::new(k.clone());
    let mut out: Vec<CentralNilEndo> = (0..size as u64)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut v = vec![0u64; n * n];
            for b in basis.iter().rev() {
                let c = idx % p;
                idx /= p;
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = (*x + c * y) % p;
                    }
                }
            }
            let sigma = FpMatrix::new(p, n, n, v).expect("n×n");
            is_nilpotent_matrix(&sigma).then_some(sigma)
        })
        .map(|sigma| {
            let jordan = jordan_type(&sigma).expect("nilpotent");
            CentralNilEndo { sigma, host: host.clone(), jordan }
        })
        .collect();
    out.sort_by(|a, b| a.sigma.cmp(&b.sigma));
    for s in &out {
        if !derived_in_kernel(k, &s.sigma) {
            return Err(Error::Consistency(format!("[K,K] not in the kernel of {}", s.sigma)));
        }
    }
    Ok(out)
}

/// `[x, y]σ = 0` for all basis pairs.
fn derived_in_kernel(k: &FpLieAlgebra, sigma: &FpMatrix) -> bool {
    let n = k.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let b: Vec<u64> = (0..n).map(|l| k.coeff(i, j, l)).collect();
            sigma.apply_row(&b).iter().all(|&x| x == 0)
        })
    })
}

/// Elements of `C(K)` with Jordan type `lam`.
pub fn c_set_lambda(k: &FpLieAlgebra, lam: &Partition, budget: &Budget) -> Result<Vec<CentralNilEndo>> {
    Ok(c_set(k, budget)?.into_iter().filter(|s| &s.jordan == lam).collect())
}

/// `Aut_Lie(K)` as the stabilizer of the bracket inside `GL_n(F_p)`.
pub fn aut_lie(k: &FpLieAlgebra, budget: &Budget) -> Result<Vec<FpMatrix>> {
    let n = k.dim();
    let all: Vec<FpMatrix> = gl_enumerate(n, k.p(), budget)?.collect();
    let out: Vec<FpMatrix> = all.into_par_iter().filter(|g| k.is_automorphism(g)).collect();
    let set: HashSet<&FpMatrix> = out.iter().collect();
    if let Some(g) = out.iter().find(|g| !set.contains(&g.inverse().expect("invertible"))) {
        return Err(Error::Consistency(format!("automorphism set not closed under inverse at {g}")));
    }
    Ok(out)
}

/// Order of `GL_n(F_p)`, the candidate count for [`aut_lie`].
pub fn aut_lie_candidates(k: &FpLieAlgebra) -> u128 {
    gl_order(k.dim(), k.p())
}

/// Reciprocal orbit-size sum of a conjugation action, with the orbit count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSum {
    pub value: BigRational,
    pub orbits: usize,
    pub set_size: usize,
}

impl OrbitSum {
    pub fn as_integer(&self) -> Option<u64> {
        self.value.is_integer().then(|| self.value.to_integer().try_into().ok()).flatten()
    }
}

/// `Σ_{σ ∈ set} 1/|σ^G|` for `σ ↦ g^{-1} σ g`; fails unless the set is a union
/// of orbits and the sum is an integer equal to the number of orbits.
pub fn conjugation_orbit_sum(set: &[FpMatrix], group: &[FpMatrix]) -> Result<OrbitSum> {
    let index: HashMap<&FpMatrix, usize> = set.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let inverses: Vec<FpMatrix> = group.par_iter().map(|g| g.inverse().expect("invertible")).collect();
    let mut orbit_size = vec![0usize; set.len()];
    let mut orbits = 0;
    for k in 0..set.len() {
        if orbit_size[k] != 0 {
            continue;
        }
        let mut images: Vec<FpMatrix> = group.par_iter().zip(&inverses).map(|(g, gi)| gi.mul(&set[k]).mul(g)).collect();
        images.sort();
        images.dedup();
        for img in &images {
            let j = *index.get(img).ok_or_else(|| Error::Consistency(format!("conjugate {img} leaves the set")))?;
            orbit_size[j] = images.len();
        }
        orbits += 1;
    }
    let value =
        orbit_size.iter().fold(BigRational::zero(), |acc, &s| acc + BigRational::new(BigInt::one(), BigInt::from(s)));
    if !value.is_integer() {
        return Err(Error::Consistency(format!("orbit sum {value} is not an integer")));
    }
    if value != BigRational::from_integer(BigInt::from(orbits)) {
        return Err(Error::Consistency(format!("orbit sum {value} differs from the orbit count {orbits}")));
    }
    Ok(OrbitSum { value, orbits, set_size: set.len() })
}

/// `Σ_{σ ∈ C(K, λ)} 1/|σ^{Aut_Lie(K)}|`.
pub fn orbit_sum(k: &FpLieAlgebra, lam: &Partition, budget: &Budget) -> Result<OrbitSum> {
    let set: Vec<FpMatrix> = c_set_lambda(k, lam, budget)?.into_iter().map(|s| s.sigma).collect();
    let aut = aut_lie(k, budget)?;
    conjugation_orbit_sum(&set, &aut)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// All `n×n` matrices satisfying the three conditions, by brute force.
    fn c_set_oracle(k: &FpLieAlgebra) -> Vec<FpMatrix> {
        let (n, p) = (k.dim(), k.p());
        let total = p.pow((n * n) as u32);
        let mut out = Vec::new();
        for mut idx in 0..total {
            let mut v = vec![0; n * n];
            for x in v.iter_mut().rev() {
                *x = idx % p;
                idx /= p;
            }
            let s = FpMatrix::new(p, n, n, v).unwrap();
            if !is_nilpotent_matrix(&s) {
                continue;
            }
            let center_ok = (0..n).all(|i| (0..n).all(|j| k.bracket(s.row(i), &unit(n, j)).iter().all(|&x| x == 0)));
            let compat = (0..n).all(|i| {
                (0..n).all(|j| {
                    let lhs = k.bracket(s.row(i), &unit(n, j));
                    let rhs = s.apply_row(&k.bracket(&unit(n, i), &unit(n, j)));
                    lhs == rhs
                })
            });
            if center_ok && compat {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    fn unit(n: usize, i: usize) -> Vec<u64> {
        let mut u = vec![0; n];
        u[i] = 1;
        u
    }

    #[test]
    fn c_set_matches_brute_force() {
        let b = Budget::default();
        for k in [
            FpLieAlgebra::abelian(3, 3).unwrap(),
            FpLieAlgebra::heisenberg(3).unwrap(),
            FpLieAlgebra::abelian(2, 2).unwrap(),
            FpLieAlgebra::heisenberg(2).unwrap(),
            FpLieAlgebra::abelian(5, 2).unwrap(),
        ] {
            let fast: Vec<FpMatrix> = c_set(&k, &b).unwrap().into_iter().map(|s| s.sigma).collect();
            assert_eq!(fast, c_set_oracle(&k));
        }
    }

    #[test]
    fn c_set_sizes() {
        let b = Budget::default();
        assert_eq!(c_set(&FpLieAlgebra::abelian(3, 3).unwrap(), &b).unwrap().len(), 729);
        assert_eq!(c_set(&FpLieAlgebra::heisenberg(3).unwrap(), &b).unwrap().len(), 9);
        // nilpotent 2×2 matrices over F_3: p^{n²-n} = 9
        assert_eq!(c_set(&FpLieAlgebra::abelian(3, 2).unwrap(), &b).unwrap().len(), 9);
    }

    #[test]
    fn jordan_filtration_partitions_c_set() {
        let b = Budget::default();
        for k in [FpLieAlgebra::abelian(3, 3).unwrap(), FpLieAlgebra::heisenberg(3).unwrap()] {
            let total: usize = Partition::all(3).iter().map(|l| c_set_lambda(&k, l, &b).unwrap().len()).sum();
            assert_eq!(total, c_set(&k, &b).unwrap().len());
        }
        let h = FpLieAlgebra::heisenberg(3).unwrap();
        assert!(c_set_lambda(&h, &part(&[3]), &b).unwrap().is_empty());
        let a = FpLieAlgebra::abelian(3, 3).unwrap();
        assert_eq!(c_set_lambda(&a, &part(&[1, 1, 1]), &b).unwrap().len(), 1);
    }

    #[test]
    fn automorphism_groups() {
        let b = Budget::default();
        assert_eq!(aut_lie(&FpLieAlgebra::abelian(3, 3).unwrap(), &b).unwrap().len(), 11232);
        let h = aut_lie(&FpLieAlgebra::heisenberg(3).unwrap(), &b).unwrap();
        assert_eq!(h.len(), 432);
        let set: HashSet<&FpMatrix> = h.iter().collect();
        assert!(h.iter().all(|x| h.iter().all(|y| set.contains(&x.mul(y)))));
        assert_eq!(aut_lie(&FpLieAlgebra::abelian(5, 1).unwrap(), &b).unwrap().len(), 4);
    }

    #[test]
    fn orbit_sums() {
        let b = Budget::default();
        let a = FpLieAlgebra::abelian(3, 3).unwrap();
        let h = FpLieAlgebra::heisenberg(3).unwrap();
        assert_eq!(orbit_sum(&a, &part(&[3]), &b).unwrap().as_integer(), Some(1));
        assert_eq!(orbit_sum(&a, &part(&[1, 1, 1]), &b).unwrap().as_integer(), Some(1));
        assert_eq!(orbit_sum(&h, &part(&[1, 1, 1]), &b).unwrap().as_integer(), Some(1));
        assert_eq!(orbit_sum(&h, &part(&[2, 1]), &b).unwrap().as_integer(), Some(1));
    }

    #[test]
    fn rejects_non_nilpotent() {
        let k = FpLieAlgebra::new(3, 2, vec![0, 0, 0, 1, 0, 2, 0, 0]).unwrap();
        assert!(matches!(c_set(&k, &Budget::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_union_of_orbits_is_rejected() {
        let g = gl_enumerate(2, 3, &Budget::default()).unwrap().collect::<Vec<_>>();
        let s = FpMatrix::from_rows(3, &[vec![0, 1], vec![0, 0]]).unwrap();
        assert!(matches!(conjugation_orbit_sum(&[s], &g), Err(Error::Consistency(_))));
    }
}
