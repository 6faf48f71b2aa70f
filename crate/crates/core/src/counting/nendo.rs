use rayon::prelude::*;

use super::cset::c_set;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lazard::{extend_homomorphism, generating_set, GroupTable};
use crate::structures::FpLieAlgebra;

/// `N_E`: endomorphisms `σ` of `E` with `Im σ ⊆ Z(E)` whose `n`-fold
/// composite is trivial, as index maps, sorted.
pub fn n_endo(e: &GroupTable, n: usize, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let gens = generating_set(e);
    let center: Vec<usize> = e.center().iter().collect();
    let total = (center.len() as u128).checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
    Budget::check("generator images into the center", total, budget.endo_candidates)?;
    let mut out: Vec<Vec<usize>> = (0..total as u64)
        .into_par_iter()
        .filter_map(|mut k| {
            let mut images = vec![0usize; gens.len()];
            for img in images.iter_mut().rev() {
                *img = center[(k % center.len() as u64) as usize];
                k /= center.len() as u64;
            }
            let map = extend_homomorphism(e, e, &gens, &images)?;
            let trivial = (0..e.order()).all(|x| (0..n).fold(x, |y, _| map[y]) == 0);
            trivial.then_some(map)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Outcome of comparing `N_E` with `C(K)` for `E = gp(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeReport {
    pub n_endo: usize,
    pub c_set: usize,
    pub equal: bool,
    /// A map in one set and not the other.
    pub witness: Option<Vec<usize>>,
}

/// Compares `N_E` and `C(K)` as sets of maps on the common underlying set.
/// `E` must carry its source tensor, on shape `(1,…,1)`.
pub fn verify_ne_equals_c(e: &GroupTable, budget: &Budget) -> Result<NeReport> {
    let t = e.provenance().ok_or_else(|| Error::Precondition("group does not record its source structure".into()))?;
    let k = FpLieAlgebra::from_tensor(t)?;
    let m = t.module();
    let n = k.dim();
    let ne = n_endo(e, n, budget)?;
    let mut cs: Vec<Vec<usize>> = c_set(&k, budget)?
        .into_iter()
        .map(|s| (0..e.order()).map(|x| m.index_of(&s.sigma.apply_row(&m.coords_of(x)))).collect())
        .collect();
    cs.sort();
    let witness = ne
        .iter()
        .find(|x| cs.binary_search(x).is_err())
        .or_else(|| cs.iter().find(|x| ne.binary_search(x).is_err()))
        .cloned();
    Ok(NeReport { n_endo: ne.len(), c_set: cs.len(), equal: ne == cs, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lazard::gp;
    use crate::linear::{Module, Partition, Side};
    use crate::structures::StructureTensor;

    fn abelian(p: u64, n: usize) -> GroupTable {
        let m = Module::new(p, Partition::ones(n), Side::Ring).unwrap();
        gp(&StructureTensor::zero(m), &Budget::default()).unwrap()
    }

    #[test]
    fn n_endo_examples() {
        let b = Budget::default();
        assert_eq!(n_endo(&abelian(3, 3), 3, &b).unwrap().len(), 729);
        let h = gp(&StructureTensor::heisenberg(3, Side::Ring).unwrap(), &b).unwrap();
        assert_eq!(n_endo(&h, 3, &b).unwrap().len(), 9);
        // x ↦ kx on Z/27 with 27 | k³, i.e. 3 | k
        let m = Module::new(3, Partition::new(vec![3]).unwrap(), Side::Ring).unwrap();
        let c27 = gp(&StructureTensor::zero(m), &b).unwrap();
        assert_eq!(n_endo(&c27, 3, &b).unwrap().len(), 9);
    }

    #[test]
    fn ne_equals_c() {
        let b = Budget::default();
        for e in [abelian(3, 3), abelian(3, 2), gp(&StructureTensor::heisenberg(3, Side::Ring).unwrap(), &b).unwrap()] {
            let r = verify_ne_equals_c(&e, &b).unwrap();
            assert!(r.equal, "{r:?}");
        }
        assert_eq!(verify_ne_equals_c(&abelian(3, 2), &b).unwrap().c_set, 9);
    }

    #[test]
    fn requires_provenance() {
        let b = Budget::default();
        let plain = GroupTable::parse(&abelian(3, 2).to_text(), &b).unwrap();
        assert!(matches!(verify_ne_equals_c(&plain, &b), Err(Error::Precondition(_))));
    }
}
