use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::action::{act_alpha, PreparedPair};
use super::automorphisms::{module_automorphisms, ModuleAutomorphism};
use super::orbits::{orbit_partition, prepare, tensor_space, tensor_space_size, Filter, Orbit};
use super::pairs::{admissible_pairs, AdmissiblePair, PairGroup};
use crate::budget::Budget;
use crate::error::Result;
use crate::linear::{Module, Partition, Side};
use crate::report::{all_passed, render, Check};
use crate::structures::StructureTensor;

/// Outcome of the ring/algebra correspondence checks for one shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GencorrReport {
    pub p: u64,
    pub shape: Partition,
    pub checks: Vec<Check>,
    /// `(filter, ring orbit count, algebra orbit count)`.
    pub counts: Vec<(Filter, usize, usize)>,
}

impl GencorrReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }

    pub fn render(&self) -> String {
        let mut s = render(&format!("correspondence p={} shape=({})", self.p, self.shape), &self.checks);
        for (f, r, a) in &self.counts {
            s.push_str(&format!("  orbits[{f}] ring={r} algebra={a}\n"));
        }
        s
    }
}

/// Additive subgroup generated by `gens`, as a membership bitmap.
fn additive_closure(module: &Module, gens: &[Vec<u64>]) -> Vec<bool> {
    let mut seen = vec![false; module.order() as usize];
    seen[0] = true;
    let mut stack = vec![module.coords_of(0)];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = module.add_coords(&x, g);
            let k = module.index_of(&y);
            if !seen[k] {
                seen[k] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Orders of `R = R^1 ⊇ R^2 ⊇ …` computed on elements, and whether the series
/// reaches zero.
pub fn element_lower_central_series(t: &StructureTensor) -> (Vec<usize>, bool) {
    let m = t.module();
    let n = m.t();
    let units: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut u = vec![0; n];
            u[i] = 1;
            u
        })
        .collect();
    let mut gens = units.clone();
    let mut orders = vec![m.order() as usize];
    loop {
        let next: Vec<Vec<u64>> = gens.iter().flat_map(|g| units.iter().map(|u| t.bracket_coords(g, u))).collect();
        let members = additive_closure(m, &next);
        let size = members.iter().filter(|&&b| b).count();
        if size == 1 {
            orders.push(1);
            return (orders, true);
        }
        if size == *orders.last().unwrap() {
            return (orders, false);
        }
        orders.push(size);
        gens = next;
    }
}

/// `[[x,y],z] + [[z,x],y] + [[y,z],x] = 0` on all generator triples.
pub fn element_jacobi(t: &StructureTensor) -> bool {
    let m = t.module();
    let n = m.t();
    let unit = |i: usize| {
        let mut u = vec![0; n];
        u[i] = 1;
        u
    };
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let (x, y, z) = (unit(i), unit(j), unit(k));
                let a = t.bracket_coords(&t.bracket_coords(&x, &y), &z);
                let b = t.bracket_coords(&t.bracket_coords(&z, &x), &y);
                let c = t.bracket_coords(&t.bracket_coords(&y, &z), &x);
                m.add_coords(&m.add_coords(&a, &b), &c).iter().all(|&v| v == 0)
            })
        })
    })
}

/// `[x, x] = 0` for every element.
pub fn element_alternating(t: &StructureTensor) -> bool {
    let m = t.module();
    (0..m.order() as usize).all(|k| {
        let x = m.coords_of(k);
        t.bracket_coords(&x, &x).iter().all(|&v| v == 0)
    })
}

fn witness(t: &StructureTensor) -> String {
    format!("{:?}", t.alpha())
}

/// Indices `(pair, tensor)` to check: all when the product fits the budget,
/// otherwise a fixed pseudo-random selection of tensors for every pair.
fn work_plan(n_pairs: usize, n_tensors: usize, budget: &Budget) -> (Vec<(usize, usize)>, bool) {
    let total = n_pairs as u128 * n_tensors as u128;
    if total <= budget.verify_work {
        return ((0..n_pairs).flat_map(|g| (0..n_tensors).map(move |t| (g, t))).collect(), true);
    }
    let per = (budget.verify_work / n_pairs.max(1) as u128).max(1) as usize;
    let plan = (0..n_pairs)
        .flat_map(|g| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9 ^ g as u64);
            (0..per).map(move |_| (g, rng.gen_range(0..n_tensors))).collect::<Vec<_>>()
        })
        .collect();
    (plan, false)
}

fn coverage(exhaustive: bool, n: usize) -> String {
    if exhaustive {
        format!("{n} cases, exhaustive")
    } else {
        format!("{n} cases, sampled")
    }
}

/// Element-level transports agree with the matrix action of the induced pair.
fn transport_check(
    name: &str,
    autos: &[ModuleAutomorphism],
    induced: &[AdmissiblePair],
    tensors: &[StructureTensor],
    budget: &Budget,
) -> Result<Check> {
    if tensors.is_empty() {
        return Ok(Check::pass(name, "empty set"));
    }
    let (plan, exhaustive) = work_plan(autos.len(), tensors.len(), budget);
    let prepared: Vec<PreparedPair> = induced.par_iter().map(PreparedPair::new).collect();
    let (n, p) = (tensors[0].t(), tensors[0].p());
    let bad = plan.par_iter().map(|&(g, k)| -> Result<Option<(usize, usize)>> {
        let moved = autos[g].transport(&tensors[k])?;
        Ok((moved.alpha() != act_alpha(tensors[k].alpha(), n, p, &prepared[g])).then_some((g, k)))
    });
    let bad: Vec<Option<(usize, usize)>> = bad.collect::<Result<_>>()?;
    Ok(match bad.into_iter().flatten().next() {
        None => Check::pass(name, coverage(exhaustive, plan.len())),
        Some((g, k)) => Check::fail(name, format!("tensor {} pair {}", witness(&tensors[k]), induced[g])),
    })
}

/// Both the transport and the matrix action are `F_p`-linear in the
/// coefficients, so agreement on the `t³` unit tensors implies agreement on
/// every tensor of the module.
fn basis_transport_check(
    name: &str,
    module: &Arc<Module>,
    autos: &[ModuleAutomorphism],
    induced: &[AdmissiblePair],
) -> Result<Check> {
    let n = module.t();
    let basis: Vec<StructureTensor> = (0..n * n * n)
        .map(|k| {
            let mut alpha = vec![0u64; n * n * n];
            alpha[k] = 1;
            StructureTensor::new(module.clone(), alpha)
        })
        .collect::<Result<_>>()?;
    let all = Budget { verify_work: u128::MAX, ..Budget::default() };
    let mut c = transport_check(name, autos, induced, &basis, &all)?;
    if c.status == crate::report::Status::Pass {
        c.detail = format!("{} automorphisms on {} basis tensors", autos.len(), basis.len());
    }
    Ok(c)
}

/// `θ(T·g) = θ(T)·g` for every ring pair `g`, which must also be an algebra
/// pair, checked on the `t³` unit tensors; linearity extends it to all tensors.
fn basis_equivariance_check(ring: &Arc<Module>, ring_group: &PairGroup, alg_group: &PairGroup) -> Result<Check> {
    let name = "theta equivariance (all tensors, full pair group)";
    let n = ring.t();
    let p = ring.p();
    let basis: Vec<StructureTensor> = (0..n * n * n)
        .map(|k| {
            let mut alpha = vec![0u64; n * n * n];
            alpha[k] = 1;
            StructureTensor::new(ring.clone(), alpha)
        })
        .collect::<Result<_>>()?;
    let images: Vec<StructureTensor> = basis.iter().map(|t| t.theta()).collect();
    let alg_pairs: BTreeSet<AdmissiblePair> = alg_group.iter().collect();
    let bad = (0..ring_group.len()).into_par_iter().find_first(|&g| {
        let pair = ring_group.get(g);
        let across = AdmissiblePair { side: Side::Algebra, ..pair.clone() };
        if !alg_pairs.contains(&across) {
            return true;
        }
        let (on_ring, on_alg) = (PreparedPair::new(&pair), PreparedPair::new(&across));
        basis.iter().zip(&images).any(|(r, a)| {
            let moved = r.with_alpha(act_alpha(r.alpha(), n, p, &on_ring)).map(|t| t.theta());
            moved.map(|m| m.alpha() != act_alpha(a.alpha(), n, p, &on_alg).as_slice()).unwrap_or(true)
        })
    });
    Ok(match bad {
        None => Check::pass(name, format!("{} pairs on {} basis tensors", ring_group.len(), basis.len())),
        Some(g) => Check::fail(name, format!("pair {}", ring_group.get(g))),
    })
}

fn orbit_shape(orbits: &[Orbit]) -> Vec<usize> {
    let mut v: Vec<usize> = orbits.iter().map(|o| o.size).collect();
    v.sort_unstable();
    v
}

fn induced_set(autos: &[ModuleAutomorphism]) -> Result<Vec<AdmissiblePair>> {
    autos.par_iter().map(|a| a.induced_pair()).collect()
}

/// Checks that `θ` is a bijection between the filtered ring and algebra
/// structures on one shape, commutes with the automorphism actions, preserves
/// the Lie and nilpotency conditions, and matches orbit counts.
///
/// Pair groups are checked against the images of the module automorphism
/// groups, and both actions are checked against element-level transport.
pub fn verify_gencorr(shape: &Partition, p: u64, budget: &Budget) -> Result<GencorrReport> {
    let ring = Module::new(p, shape.clone(), Side::Ring)?;
    let alg = ring.with_side(Side::Algebra);
    let mut checks = Vec::new();
    let mut counts = Vec::new();

    let ring_group = admissible_pairs(shape, p, Side::Ring, budget)?;
    let alg_group = admissible_pairs(shape, p, Side::Algebra, budget)?;
    let ring_autos = module_automorphisms(&ring, budget)?;
    let alg_autos = module_automorphisms(&alg, budget)?;
    let ring_induced = induced_set(&ring_autos)?;
    let alg_induced = induced_set(&alg_autos)?;
    for (side, group, induced) in [(Side::Ring, &ring_group, &ring_induced), (Side::Algebra, &alg_group, &alg_induced)]
    {
        let from_autos: BTreeSet<&AdmissiblePair> = induced.iter().collect();
        let listed: BTreeSet<AdmissiblePair> = group.iter().collect();
        let ok = from_autos.len() == listed.len() && from_autos.iter().all(|g| listed.contains(*g));
        checks.push(Check::new(
            format!("{side} pair group equals image of module automorphisms"),
            ok,
            format!("|pairs|={} |image|={} |Aut|={}", listed.len(), from_autos.len(), induced.len()),
        ));
    }
    checks.push(basis_transport_check(
        "ring action matches transport (all tensors)",
        &ring,
        &ring_autos,
        &ring_induced,
    )?);
    checks.push(basis_transport_check(
        "algebra action matches transport (all tensors)",
        &alg,
        &alg_autos,
        &alg_induced,
    )?);
    checks.push(basis_equivariance_check(&ring, &ring_group, &alg_group)?);
    let alg_image: Vec<AdmissiblePair> = {
        let s: BTreeSet<&AdmissiblePair> = alg_induced.iter().collect();
        s.into_iter().cloned().collect()
    };

    for filter in [Filter::NONE, Filter::ALTERNATING, Filter::LIE, Filter::LIE_NILPOTENT] {
        let label = |what: &str| format!("[{filter}] {what}");
        if tensor_space_size(&ring, filter) > budget.tensor_space {
            checks.push(Check::skipped(
                label("all checks"),
                format!("tensor space {} exceeds {}", tensor_space_size(&ring, filter), budget.tensor_space),
            ));
            continue;
        }
        let rs = tensor_space(&ring, filter, budget)?;
        let als = tensor_space(&alg, filter, budget)?;

        // θ bijection and involution
        let alg_set: HashSet<&[u64]> = als.iter().map(|t| t.alpha()).collect();
        let images: Vec<StructureTensor> = rs.par_iter().map(|t| t.theta()).collect();
        let into = images.iter().find(|t| !alg_set.contains(t.alpha()) || t.side() != Side::Algebra);
        let distinct: HashSet<&[u64]> = images.iter().map(|t| t.alpha()).collect();
        checks.push(match into {
            Some(t) => Check::fail(label("theta bijection"), format!("image {} not in algebra set", witness(t))),
            None => Check::new(
                label("theta bijection"),
                distinct.len() == rs.len() && rs.len() == als.len(),
                format!("{} ring, {} algebra structures", rs.len(), als.len()),
            ),
        });
        let back = rs.par_iter().find_first(|t| &t.theta().theta() != *t);
        checks.push(match back {
            Some(t) => Check::fail(label("theta involution"), witness(t)),
            None => Check::pass(label("theta involution"), format!("{} cases", rs.len())),
        });

        // equivariance: θ(T·g) = θ(T)·g, with element-level transports on both sides
        let prepared = prepare(&ring_group);
        let (plan, exhaustive) = work_plan(prepared.len(), rs.len(), budget);
        let (n, pp) = (shape.len(), p);
        let bad = plan.par_iter().find_first(|&&(g, k)| {
            let lhs = act_alpha(rs[k].alpha(), n, pp, &prepared[g]);
            let rhs = act_alpha(images[k].alpha(), n, pp, &prepared[g]);
            lhs != rhs
        });
        checks.push(match bad {
            None => Check::pass(label("theta equivariance"), coverage(exhaustive, plan.len())),
            Some(&(g, k)) => Check::fail(
                label("theta equivariance"),
                format!("tensor {} pair {}", witness(&rs[k]), ring_group.get(g)),
            ),
        });
        checks.push(transport_check(&label("ring action matches transport"), &ring_autos, &ring_induced, &rs, budget)?);
        checks.push(transport_check(
            &label("algebra action matches transport"),
            &alg_autos,
            &alg_induced,
            &als,
            budget,
        )?);

        // Lie and nilpotency transfer, computed on elements on both sides
        let bad = rs.par_iter().zip(images.par_iter()).find_first(|(r, a)| {
            let lr = element_alternating(r) && element_jacobi(r);
            let la = element_alternating(a) && element_jacobi(a);
            lr != la || lr != r.is_lie()
        });
        checks.push(match bad {
            None => Check::pass(label("Lie iff Lie"), format!("{} cases", rs.len())),
            Some((r, _)) => Check::fail(label("Lie iff Lie"), witness(r)),
        });
        let bad = rs.par_iter().zip(images.par_iter()).filter(|(r, _)| r.is_lie()).find_first(|(r, a)| {
            let (sr, nr) = element_lower_central_series(r);
            let (sa, na) = element_lower_central_series(a);
            nr != na || sr.len() != sa.len() || r.is_nilpotent().ok() != Some(nr)
        });
        checks.push(match bad {
            None => Check::pass(label("nilpotent iff nilpotent"), ""),
            Some((r, _)) => Check::fail(label("nilpotent iff nilpotent"), witness(r)),
        });

        // orbit counts: ring side under the block-form group, algebra side
        // under the automorphism image
        let ring_orbits = orbit_partition(&rs, &prepared)?;
        let alg_prepared: Vec<PreparedPair> = alg_image.par_iter().map(PreparedPair::new).collect();
        let alg_orbits = orbit_partition(&als, &alg_prepared)?;
        checks.push(Check::new(
            label("orbit counts agree"),
            ring_orbits.len() == alg_orbits.len() && orbit_shape(&ring_orbits) == orbit_shape(&alg_orbits),
            format!("ring {} algebra {}", ring_orbits.len(), alg_orbits.len()),
        ));
        let divides = ring_orbits.iter().all(|o| ring_group.len() % o.size == 0)
            && alg_orbits.iter().all(|o| alg_image.len().is_multiple_of(o.size));
        checks.push(Check::new(label("orbit sizes divide group order"), divides, ""));
        counts.push((filter, ring_orbits.len(), alg_orbits.len()));
    }
    Ok(GencorrReport { p, shape: shape.clone(), checks, counts })
}

/// Checks one tensor: every admissible pair commutes with `θ`, element-level
/// Jacobi and nilpotency agree with the predicates and transfer through `θ`.
pub fn verify_tensor(t: &StructureTensor, budget: &Budget) -> Result<Vec<Check>> {
    let img = t.theta();
    let mut checks = Vec::new();
    let lie_elem = element_alternating(t) && element_jacobi(t);
    let lie_img = element_alternating(&img) && element_jacobi(&img);
    checks.push(Check::new(
        "Lie transfer",
        lie_elem == lie_img && lie_elem == t.is_lie() && t.is_lie() == img.is_lie(),
        if t.is_lie() { "Lie on both sides".to_string() } else { format!("not Lie: {:?}", t.jacobi_violation()) },
    ));
    // a tensor that is not Lie has no nilpotency to transfer
    if !t.is_lie() {
        checks.push(Check::fail("Jacobi transfer", format!("witness indices {:?}", t.jacobi_violation())));
        return Ok(checks);
    }
    let (_, nr) = element_lower_central_series(t);
    let (_, na) = element_lower_central_series(&img);
    checks.push(Check::new("nilpotent transfer", nr == na && t.is_nilpotent()? == nr, format!("nilpotent={nr}")));
    let group = admissible_pairs(t.shape(), t.p(), t.side(), budget)?;
    let (n, p) = (t.t(), t.p());
    let bad = (0..group.len()).into_par_iter().find_first(|&k| {
        let g = PreparedPair::new(&group.get(k));
        act_alpha(t.alpha(), n, p, &g) != act_alpha(img.alpha(), n, p, &g)
    });
    checks.push(match bad {
        None => Check::pass("theta equivariance", format!("{} pairs", group.len())),
        Some(k) => Check::fail("theta equivariance", format!("pair {}", group.get(k))),
    });
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_shapes_pass() {
        let b = Budget::default();
        for (shape, p) in [(part(&[2, 1]), 3), (part(&[1, 1]), 2), (part(&[3]), 3), (part(&[2, 1]), 2)] {
            let r = verify_gencorr(&shape, p, &b).unwrap();
            assert!(r.passed(), "{}", r.render());
            let (_, a, c) = r.counts.iter().find(|(f, _, _)| *f == Filter::LIE_NILPOTENT).unwrap();
            assert_eq!(a, c);
        }
        let r = verify_gencorr(&part(&[2, 1]), 3, &b).unwrap();
        assert!(r.counts.contains(&(Filter::LIE_NILPOTENT, 2, 2)));
    }

    #[test]
    fn element_series_matches_predicates() {
        let h = StructureTensor::heisenberg(3, Side::Ring).unwrap();
        assert_eq!(element_lower_central_series(&h), (vec![27, 3, 1], true));
        assert!(element_jacobi(&h) && element_alternating(&h));
        let m = Module::new(3, Partition::ones(2), Side::Algebra).unwrap();
        // [x, y] = y is Lie but not nilpotent
        let t = StructureTensor::antisymmetric(m, &[(0, 1, 1, 1)]).unwrap();
        assert!(!element_lower_central_series(&t).1);
        assert!(!t.is_nilpotent().unwrap());
    }

    #[test]
    fn corrupted_tensor_is_reported() {
        let m = Module::new(3, Partition::ones(3), Side::Ring).unwrap();
        let t = StructureTensor::antisymmetric(m, &[(0, 1, 0, 1), (1, 2, 1, 1), (0, 2, 2, 1)]).unwrap();
        if !t.jacobi_holds() {
            let checks = verify_tensor(&t, &Budget::default()).unwrap();
            assert!(!all_passed(&checks));
        }
        let good = verify_tensor(&StructureTensor::heisenberg(3, Side::Ring).unwrap(), &Budget::default()).unwrap();
        assert!(all_passed(&good));
    }
}
