use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::action::{act_alpha, PreparedPair};
use super::pairs::{admissible_pairs, PairGroup};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linear::{Module, Partition, Side};
use crate::structures::{write_tensor, StructureTensor};

/// Which tensors to keep. `nilpotent` implies `alternating` and `jacobi`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Filter {
    pub alternating: bool,
    pub jacobi: bool,
    pub nilpotent: bool,
}

impl Filter {
    pub const NONE: Filter = Filter { alternating: false, jacobi: false, nilpotent: false };
    pub const ALTERNATING: Filter = Filter { alternating: true, jacobi: false, nilpotent: false };
    pub const LIE: Filter = Filter { alternating: true, jacobi: true, nilpotent: false };
    pub const LIE_NILPOTENT: Filter = Filter { alternating: true, jacobi: true, nilpotent: true };

    pub fn normalized(self) -> Filter {
        if self.nilpotent {
            Filter::LIE_NILPOTENT
        } else {
            self
        }
    }

    pub fn accepts(&self, t: &StructureTensor) -> bool {
        let f = self.normalized();
        (!f.alternating || t.is_alternating())
            && (!f.jacobi || t.jacobi_holds())
            && (!f.nilpotent || t.is_nilpotent().unwrap_or(false))
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalized();
        let names: Vec<&str> = [(n.alternating, "alternating"), (n.jacobi, "jacobi"), (n.nilpotent, "nilpotent")]
            .into_iter()
            .filter_map(|(on, s)| on.then_some(s))
            .collect();
        if names.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&names.join(","))
        }
    }
}

/// Number of tensors enumerated before filtering.
pub fn tensor_space_size(module: &Module, filter: Filter) -> u128 {
    let t = module.t() as u32;
    let free = if filter.normalized().alternating { t * t.saturating_sub(1) / 2 * t } else { t * t * t };
    (module.p() as u128).checked_pow(free).unwrap_or(u128::MAX)
}

/// Every tensor on `module` passing `filter`, in lexicographic order of
/// coefficients. Alternating filters enumerate only the `i < j` coefficients.
pub fn tensor_space(module: &Arc<Module>, filter: Filter, budget: &Budget) -> Result<Vec<StructureTensor>> {
    let filter = filter.normalized();
    let size = tensor_space_size(module, filter);
    Budget::check(
        &format!("tensor space on shape ({}) at p={}", module.shape(), module.p()),
        size,
        budget.tensor_space,
    )?;
    let t = module.t();
    let p = module.p();
    let free: Vec<(usize, usize, usize)> = if filter.alternating {
        (0..t).flat_map(|i| (i + 1..t).flat_map(move |j| (0..t).map(move |l| (i, j, l)))).collect()
    } else {
        (0..t).flat_map(|i| (0..t).flat_map(move |j| (0..t).map(move |l| (i, j, l)))).collect()
    };
    let out = (0..size as u64)
        .into_par_iter()
        .filter_map(|mut k| {
            let mut alpha = vec![0u64; t * t * t];
            for &(i, j, l) in free.iter().rev() {
                let v = k % p;
                k /= p;
                alpha[(i * t + j) * t + l] = v;
                if filter.alternating {
                    alpha[(j * t + i) * t + l] = (p - v) % p;
                }
            }
            let tensor = StructureTensor::new(module.clone(), alpha).unwrap();
            filter.accepts(&tensor).then_some(tensor)
        })
        .collect::<Vec<_>>();
    let mut out = out;
    out.sort_by(|a, b| a.alpha().cmp(b.alpha()));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically least tensor of the orbit.
    pub representative: StructureTensor,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub p: u64,
    pub shape: Partition,
    pub side: Side,
    pub filter: Filter,
    pub group_order: usize,
    pub tensor_count: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    /// Summary block, naming representative files `rep_000.txt`, `rep_001.txt`, ….
    pub fn summary(&self) -> String {
        let mut s = format!(
            "p={} lambda={} side={} filter={}\ngroup_order={}\ntensors={}\norbits={}\n",
            self.p,
            self.shape,
            self.side,
            self.filter,
            self.group_order,
            self.tensor_count,
            self.count()
        );
        for (k, o) in self.orbits.iter().enumerate() {
            s.push_str(&format!("orbit size={} rep={}\n", o.size, rep_file_name(k)));
        }
        s
    }

    /// `(file name, contents)` for every representative.
    pub fn representative_files(&self) -> Vec<(String, String)> {
        self.orbits.iter().enumerate().map(|(k, o)| (rep_file_name(k), write_tensor(&o.representative))).collect()
    }
}

pub fn rep_file_name(k: usize) -> String {
    format!("rep_{k:03}.txt")
}

pub(crate) fn prepare(group: &PairGroup) -> Vec<PreparedPair> {
    (0..group.len()).into_par_iter().map(|k| PreparedPair::new(&group.get(k))).collect()
}

/// Partition `tensors` (all on one module, sorted) into orbits under `group`.
/// Fails if some image leaves the set, i.e. the set is not a union of orbits.
pub(crate) fn orbit_partition(tensors: &[StructureTensor], group: &[PreparedPair]) -> Result<Vec<Orbit>> {
    let Some(first) = tensors.first() else {
        return Ok(vec![]);
    };
    let (t, p) = (first.t(), first.p());
    let index: HashMap<&[u64], usize> = tensors.iter().enumerate().map(|(k, x)| (x.alpha(), k)).collect();
    let mut visited = vec![false; tensors.len()];
    let mut orbits = Vec::new();
    for (k, seed) in tensors.iter().enumerate() {
        if visited[k] {
            continue;
        }
        let mut images: Vec<Vec<u64>> = group.par_iter().map(|g| act_alpha(seed.alpha(), t, p, g)).collect();
        images.sort_unstable();
        images.dedup();
        for img in &images {
            match index.get(img.as_slice()) {
                Some(&j) => visited[j] = true,
                None => {
                    return Err(Error::Consistency(format!(
                        "orbit of tensor #{k} leaves the filtered set (image {img:?})"
                    )))
                }
            }
        }
        orbits.push(Orbit { representative: seed.with_alpha(images[0].clone())?, size: images.len() });
    }
    Ok(orbits)
}

/// Isomorphism classes of the filtered structures on `(shape, side)`, as
/// orbits of the admissible-pair group.
pub fn orbits(shape: &Partition, p: u64, side: Side, filter: Filter, budget: &Budget) -> Result<OrbitReport> {
    let module = Module::new(p, shape.clone(), side)?;
    let group = admissible_pairs(shape, p, side, budget)?;
    let tensors = tensor_space(&module, filter, budget)?;
    let prepared = prepare(&group);
    let orbits = orbit_partition(&tensors, &prepared)?;
    Ok(OrbitReport {
        p,
        shape: shape.clone(),
        side,
        filter: filter.normalized(),
        group_order: group.len(),
        tensor_count: tensors.len(),
        orbits,
    })
}

/// Whether some admissible pair carries `a` to `b`.
pub fn are_isomorphic(a: &StructureTensor, b: &StructureTensor, budget: &Budget) -> Result<bool> {
    if a.module() != b.module() {
        return Err(Error::Mismatch("tensors live on different modules".into()));
    }
    let group = admissible_pairs(a.shape(), a.p(), a.side(), budget)?;
    let (t, p) = (a.t(), a.p());
    Ok((0..group.len())
        .into_par_iter()
        .any(|k| act_alpha(a.alpha(), t, p, &PreparedPair::new(&group.get(k))) == b.alpha()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::{act, AdmissiblePair};
    use crate::linear::FpMatrix;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lie_nilpotent_orbit_counts_p3() {
        let b = Budget::default();
        let r = orbits(&part(&[1, 1, 1]), 3, Side::Ring, Filter::LIE_NILPOTENT, &b).unwrap();
        assert_eq!(r.count(), 2);
        assert_eq!(r.orbits.iter().map(|o| o.size).collect::<Vec<_>>(), vec![1, 26]);
        assert!(r.orbits[0].representative.alpha().iter().all(|&a| a == 0));
        let r = orbits(&part(&[2, 1]), 3, Side::Ring, Filter::LIE_NILPOTENT, &b).unwrap();
        assert_eq!(r.count(), 2);
        assert_eq!(r.tensor_count, 3);
        let r = orbits(&part(&[3]), 3, Side::Ring, Filter::LIE_NILPOTENT, &b).unwrap();
        assert_eq!(r.count(), 1);
    }

    #[test]
    fn orbit_sizes_divide_group_order() {
        let b = Budget::default();
        for (shape, p, f) in [
            (part(&[2, 1]), 3, Filter::NONE),
            (part(&[1, 1, 1]), 3, Filter::ALTERNATING),
            (part(&[1, 1]), 2, Filter::NONE),
            (part(&[2, 2]), 3, Filter::ALTERNATING),
        ] {
            let r = orbits(&shape, p, Side::Ring, f, &b).unwrap();
            assert_eq!(r.orbits.iter().map(|o| o.size).sum::<usize>(), r.tensor_count);
            for o in &r.orbits {
                assert_eq!(r.group_order % o.size, 0, "{shape} {f}");
            }
        }
    }

    #[test]
    fn predicates_are_orbit_constant() {
        let b = Budget::default();
        for shape in [part(&[3]), part(&[2, 1]), part(&[1, 1, 1])] {
            let module = Module::new(3, shape.clone(), Side::Ring).unwrap();
            let all = tensor_space(&module, Filter::ALTERNATING, &b).unwrap();
            let group = prepare(&admissible_pairs(&shape, 3, Side::Ring, &b).unwrap());
            let step = (group.len() / 40).max(1);
            for t in all.iter().step_by((all.len() / 200).max(1)) {
                let key = (t.is_alternating(), t.jacobi_holds(), t.is_lie() && t.is_nilpotent().unwrap());
                for g in group.iter().step_by(step) {
                    let img = t.with_alpha(act_alpha(t.alpha(), t.t(), 3, g)).unwrap();
                    let k2 = (img.is_alternating(), img.jacobi_holds(), img.is_lie() && img.is_nilpotent().unwrap());
                    assert_eq!(key, k2);
                    if key.1 && key.0 && t.shape().parts().iter().all(|&x| x == 1) {
                        let a = crate::FpLieAlgebra::from_tensor(t).unwrap();
                        let c = crate::FpLieAlgebra::from_tensor(&img).unwrap();
                        assert_eq!(a.invariants(), c.invariants());
                    }
                }
            }
        }
    }

    #[test]
    fn isomorphism_queries() {
        let b = Budget::default();
        let h = StructureTensor::heisenberg(3, Side::Ring).unwrap();
        let swap = FpMatrix::from_rows(3, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let relabeled = act(&h, &AdmissiblePair { e: swap.clone(), f: swap, side: Side::Ring }).unwrap();
        assert!(are_isomorphic(&h, &relabeled, &b).unwrap());
        let z = StructureTensor::zero(h.module().clone());
        assert!(!are_isomorphic(&z, &h, &b).unwrap());
        assert!(are_isomorphic(&h.theta(), &relabeled.theta(), &b).unwrap());
        assert!(are_isomorphic(&h, &h.theta(), &b).is_err());
    }

    #[test]
    fn tensor_space_counts_and_order() {
        let b = Budget::default();
        let m = Module::new(3, part(&[1, 1, 1]), Side::Ring).unwrap();
        let alt = tensor_space(&m, Filter::ALTERNATING, &b).unwrap();
        assert_eq!(alt.len(), 19683);
        assert!(alt.windows(2).all(|w| w[0].alpha() < w[1].alpha()));
        let ln = tensor_space(&m, Filter::LIE_NILPOTENT, &b).unwrap();
        assert_eq!(ln.len(), 27);
        assert!(tensor_space(&m, Filter::NONE, &b).is_err());
        assert_eq!(Filter::LIE.to_string(), "alternating,jacobi");
        assert_eq!(Filter { nilpotent: true, ..Filter::NONE }.to_string(), "alternating,jacobi,nilpotent");
    }
}
