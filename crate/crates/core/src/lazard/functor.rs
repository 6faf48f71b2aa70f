use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use super::bch::{bch_terms, BchSeries, Letter};
use super::group::GroupTable;
use super::subgroups::{all_subgroups, closure, ElementSet, Subgroup};
use crate::budget::Budget;
use crate::correspondence::module_automorphisms;
use crate::error::{Error, Result};
use crate::linear::{Module, Partition, Side};
use crate::report::{all_passed, render, Check};
use crate::structures::StructureTensor;

/// A BCH series with its coefficients reduced to per-component residues.
struct ReducedSeries {
    terms: Vec<(Vec<Letter>, Vec<u64>)>,
}

impl ReducedSeries {
    fn new(series: &BchSeries, module: &Module) -> Result<Self> {
        let terms = series
            .terms
            .iter()
            .map(|t| {
                let (num, den) =
                    t.coeff_i64().ok_or_else(|| Error::Hypothesis(format!("coefficient {} too large", t.coeff)))?;
                Ok((t.word.clone(), module.rational_residues(num, den)?))
            })
            .collect::<Result<_>>()?;
        Ok(ReducedSeries { terms })
    }

    fn eval(&self, t: &StructureTensor, x: &[u64], y: &[u64]) -> Vec<u64> {
        let m = t.module();
        let mut acc = vec![0u64; m.t()];
        for (word, res) in &self.terms {
            let pick = |l: &Letter| if *l == Letter::X { x } else { y };
            let (last, init) = word.split_last().expect("nonempty word");
            let mut v = pick(last).to_vec();
            for l in init.iter().rev() {
                v = t.bracket_coords(pick(l), &v);
            }
            m.add_into(&mut acc, &m.scale_residues(&v, res));
        }
        acc
    }
}

/// The group on the underlying set of a nilpotent Lie structure of class
/// `c < p`, with product given by the BCH series truncated at `c`.
pub fn gp(t: &StructureTensor, budget: &Budget) -> Result<GroupTable> {
    if !t.is_lie() {
        return Err(Error::Hypothesis("structure is not a Lie ring".into()));
    }
    let class = t.nilpotency_class().ok_or_else(|| Error::Hypothesis("structure is not nilpotent".into()))?;
    if class as u64 >= t.p() {
        return Err(Error::Hypothesis(format!("nilpotency class {class} is not below p={}", t.p())));
    }
    let m = t.module().clone();
    let order = m.order() as usize;
    let series = ReducedSeries::new(&bch_terms(class.max(1)), &m)?;
    let elems: Vec<Vec<u64>> = (0..order).map(|k| m.coords_of(k)).collect();
    let table: Vec<u32> = (0..order * order)
        .into_par_iter()
        .map(|k| m.index_of(&series.eval(t, &elems[k / order], &elems[k % order])) as u32)
        .collect();
    GroupTable::new(t.p(), table, budget)?.with_provenance(t.clone())
}

/// Addition table of a module on element indices.
fn addition(m: &Module) -> Vec<u32> {
    let n = m.order() as usize;
    let elems: Vec<Vec<u64>> = (0..n).map(|k| m.coords_of(k)).collect();
    (0..n * n).map(|k| m.index_of(&m.add_coords(&elems[k / n], &elems[k % n])) as u32).collect()
}

fn bracket_index(t: &StructureTensor, a: usize, b: usize) -> usize {
    let m = t.module();
    m.index_of(&t.bracket_coords(&m.coords_of(a), &m.coords_of(b)))
}

/// Additive subgroups closed under the bracket, and the ideals among them.
pub fn lie_subrings_and_ideals(t: &StructureTensor, budget: &Budget) -> Result<(Vec<Subgroup>, Vec<Subgroup>)> {
    let m = t.module();
    let n = m.order() as usize;
    Budget::check("subring lattice order", n as u128, budget.lattice_order as u128)?;
    let add = addition(m);
    let subgroups = all_subgroups(n, &|a, b| add[a * n + b] as usize);
    let units: Vec<usize> = (0..m.t())
        .map(|i| {
            let mut u = vec![0; m.t()];
            u[i] = 1;
            m.index_of(&u)
        })
        .collect();
    let subrings: Vec<Subgroup> = subgroups
        .into_iter()
        .filter(|h| {
            h.generators.iter().all(|&a| h.generators.iter().all(|&b| h.elements.contains(bracket_index(t, a, b))))
        })
        .collect();
    let ideals = subrings
        .iter()
        .filter(|h| h.generators.iter().all(|&a| units.iter().all(|&u| h.elements.contains(bracket_index(t, a, u)))))
        .cloned()
        .collect();
    Ok((subrings, ideals))
}

/// Report of the Lie ring / group dictionary for `G = gp(T)`.
#[derive(Clone, Debug)]
pub struct MlReport {
    pub checks: Vec<Check>,
}

impl MlReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }

    pub fn render(&self, title: &str) -> String {
        render(title, &self.checks)
    }
}

fn sets(v: &[Subgroup]) -> HashSet<&ElementSet> {
    v.iter().map(|h| &h.elements).collect()
}

/// Checks the dictionary between `T` and `G = gp(T)`: same underlying set,
/// same identity, element orders, vanishing of commutators and brackets,
/// subgroups vs subrings, normal subgroups vs ideals, commutator subgroups of
/// normal subgroups vs bracket ideals, and that Lie automorphisms are group
/// automorphisms.
pub fn verify_ml_properties(g: &GroupTable, t: &StructureTensor, budget: &Budget) -> Result<MlReport> {
    let m = t.module();
    let n = m.order() as usize;
    let mut checks = Vec::new();
    checks.push(Check::new(
        "same underlying set",
        g.order() == n && g.labels().map(|l| l.as_ref() == m.as_ref()).unwrap_or(false),
        format!("order {n}"),
    ));
    let zero_is_identity = m.index_of(&vec![0; m.t()]) == 0 && (0..n).all(|x| g.mul(0, x) == x && g.mul(x, 0) == x);
    checks.push(Check::new("identity is zero", zero_is_identity, ""));

    let (bad, cov) = g.associativity_violation(budget);
    checks.push(match bad {
        None => Check::pass("associativity", cov.to_string()),
        Some(w) => Check::fail("associativity", format!("triple {w:?}")),
    });

    let bad = (0..n).find(|&x| g.element_order(x) != m.additive_order(&m.coords_of(x)));
    checks.push(match bad {
        None => Check::pass("element orders equal additive orders", format!("{n} elements")),
        Some(x) => Check::fail("element orders equal additive orders", format!("element {:?}", m.coords_of(x))),
    });

    let bad = (0..n * n).into_par_iter().find_first(|&k| {
        let (x, y) = (k / n, k % n);
        (g.commutator(x, y) == 0) != (bracket_index(t, x, y) == 0)
    });
    checks.push(match bad {
        None => Check::pass("commutator trivial iff bracket zero", format!("{} pairs", n * n)),
        Some(k) => Check::fail(
            "commutator trivial iff bracket zero",
            format!("pair {:?}, {:?}", m.coords_of(k / n), m.coords_of(k % n)),
        ),
    });

    if n > budget.lattice_order {
        checks.push(Check::skipped("subgroups are subrings", format!("order {n} above lattice budget")));
        checks.push(Check::skipped("normal subgroups are ideals", ""));
        checks.push(Check::skipped("commutator subgroups are bracket ideals", ""));
    } else {
        let subgroups = g.subgroups(budget)?;
        let normal: Vec<Subgroup> = subgroups.iter().filter(|h| g.is_normal(&h.elements)).cloned().collect();
        let (subrings, ideals) = lie_subrings_and_ideals(t, budget)?;
        checks.push(Check::new(
            "subgroups are subrings",
            sets(&subgroups) == sets(&subrings),
            format!("{} subgroups, {} subrings", subgroups.len(), subrings.len()),
        ));
        checks.push(Check::new(
            "normal subgroups are ideals",
            sets(&normal) == sets(&ideals),
            format!("{} normal subgroups, {} ideals", normal.len(), ideals.len()),
        ));
        let add = addition(m);
        let pairs: Vec<(usize, usize)> =
            (0..normal.len()).flat_map(|a| (0..normal.len()).map(move |b| (a, b))).collect();
        let bad = pairs.par_iter().find_first(|&&(a, b)| {
            let (h, k) = (&normal[a], &normal[b]);
            let grp = g.commutator_subgroup(&h.elements, &k.elements);
            let gens: Vec<usize> = h
                .generators
                .iter()
                .flat_map(|&x| k.generators.iter().map(move |&y| (x, y)))
                .map(|(x, y)| bracket_index(t, x, y))
                .collect();
            let lie = closure(n, &|x, y| add[x * n + y] as usize, &gens);
            grp != lie
        });
        checks.push(match bad {
            None => Check::pass("commutator subgroups are bracket ideals", format!("{} pairs", pairs.len())),
            Some(&(a, b)) => Check::fail(
                "commutator subgroups are bracket ideals",
                format!("{:?} and {:?}", normal[a].elements, normal[b].elements),
            ),
        });
    }

    checks.push(functoriality_check(g, t, budget)?);
    Ok(MlReport { checks })
}

/// Every module automorphism preserving the bracket is a group automorphism.
fn functoriality_check(g: &GroupTable, t: &StructureTensor, budget: &Budget) -> Result<Check> {
    let name = "Lie automorphisms are group automorphisms";
    let m = t.module();
    let autos = match module_automorphisms(m, budget) {
        Ok(a) => a,
        Err(Error::Budget { size, .. }) => {
            return Ok(Check::skipped(name, format!("{size} endomorphisms above budget")))
        }
        Err(e) => return Err(e),
    };
    let n = m.order() as usize;
    let lie_autos: Vec<Vec<usize>> = autos
        .par_iter()
        .filter(|a| a.transport(t).map(|s| s == *t).unwrap_or(false))
        .map(|a| (0..n).map(|x| m.index_of(&a.apply(&m.coords_of(x)))).collect())
        .collect();
    let work = lie_autos.len() as u128 * (n as u128).pow(2);
    if work > budget.verify_work * 8 {
        return Ok(Check::skipped(name, format!("{work} products above budget")));
    }
    let bad = lie_autos
        .par_iter()
        .position_first(|pi| (0..n).any(|x| (0..n).any(|y| pi[g.mul(x, y)] != g.mul(pi[x], pi[y]))));
    Ok(match bad {
        None => Check::pass(name, format!("{} automorphisms", lie_autos.len())),
        Some(k) => Check::fail(name, format!("automorphism #{k}")),
    })
}

/// Finds `b_1, …, b_t` of orders `p^{λ_i}` with `c ↦ Σ c_i b_i` bijective, in
/// an abelian group given by `add`. Prefers the standard basis of `labels`.
fn abelian_basis(p: u64, n: usize, add: &[u32], labels: Option<&Arc<Module>>) -> Result<(Partition, Vec<usize>)> {
    let op = |a: usize, b: usize| add[a * n + b] as usize;
    let order_of = |x: usize| {
        let (mut k, mut y) = (1u64, x);
        while y != 0 {
            y = op(y, x);
            k += 1;
        }
        k
    };
    let mut omega = Vec::new();
    let mut prev = 1usize;
    let mut i = 1u32;
    while prev < n {
        let size = (0..n).filter(|&x| p.pow(i).is_multiple_of(order_of(x))).count();
        let mut q = size / prev;
        let mut step = 0;
        while q > 1 {
            q /= p as usize;
            step += 1;
        }
        omega.push(step);
        prev = size;
        i += 1;
    }
    let lambda = Partition::new(omega)?.dual();
    if let Some(m) = labels {
        if m.shape() == &lambda {
            let basis: Vec<usize> = (0..m.t())
                .map(|i| {
                    let mut u = vec![0; m.t()];
                    u[i] = 1;
                    m.index_of(&u)
                })
                .collect();
            if spans_freely(n, &op, &basis) {
                return Ok((lambda, basis));
            }
        }
    }
    let orders: Vec<u64> = lambda.parts().iter().map(|&l| p.pow(l as u32)).collect();
    let mut chosen = Vec::new();
    if search_basis(n, &op, &order_of, &orders, &mut chosen) {
        Ok((lambda, chosen))
    } else {
        Err(Error::Consistency("no basis found for the additive group".into()))
    }
}

fn spans_freely(n: usize, op: &impl Fn(usize, usize) -> usize, basis: &[usize]) -> bool {
    let size = closure(n, op, basis).len();
    let mut prod = 1usize;
    for &b in basis {
        let mut k = 1;
        let mut y = b;
        while y != 0 {
            y = op(y, b);
            k += 1;
        }
        prod *= k;
    }
    size == prod
}

fn search_basis(
    n: usize,
    op: &impl Fn(usize, usize) -> usize,
    order_of: &impl Fn(usize) -> u64,
    orders: &[u64],
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == orders.len() {
        return true;
    }
    let want = orders[chosen.len()];
    for x in 1..n {
        if order_of(x) != want {
            continue;
        }
        chosen.push(x);
        if spans_freely(n, op, chosen) && search_basis(n, op, order_of, orders, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Inverse of `gp` for groups of class at most 2 and odd order: addition
/// `x ⊕ y = x y [x,y]^{-1/2}`, bracket the group commutator. The result lives
/// on the ring side, in a basis of the additive group (the labels' standard
/// basis when it fits).
pub fn lp_class2(g: &GroupTable) -> Result<StructureTensor> {
    let p = g.p();
    if p == 2 {
        return Err(Error::Precondition("halving requires odd order".into()));
    }
    match g.nilpotency_class() {
        Some(c) if c <= 2 => {}
        c => return Err(Error::Precondition(format!("class {c:?} exceeds 2"))),
    }
    let n = g.order();
    let half_inv = |z: usize| {
        let ord = g.element_order(z);
        let e = (ord - ord.div_ceil(2)) % ord;
        g.power(z, e)
    };
    let add: Vec<u32> = (0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            g.mul(g.mul(x, y), half_inv(g.commutator(x, y))) as u32
        })
        .collect();
    let (lambda, basis) = abelian_basis(p, n, &add, g.labels())?;
    let module = Module::new(p, lambda, Side::Ring)?;
    let op = |a: usize, b: usize| add[a * n + b] as usize;
    // element of G for each coordinate vector
    let mut coord_to_elem = vec![0usize; n];
    for (k, slot) in coord_to_elem.iter_mut().enumerate() {
        let c = module.coords_of(k);
        let mut acc = 0;
        for (i, &ci) in c.iter().enumerate() {
            for _ in 0..ci {
                acc = op(acc, basis[i]);
            }
        }
        *slot = acc;
    }
    let mut elem_to_coord = vec![usize::MAX; n];
    for (k, &e) in coord_to_elem.iter().enumerate() {
        elem_to_coord[e] = k;
    }
    if elem_to_coord.contains(&usize::MAX) {
        return Err(Error::Consistency("basis does not span".into()));
    }
    let t = module.t();
    let mut alpha = vec![0u64; t * t * t];
    for i in 0..t {
        for j in 0..t {
            let br = module.coords_of(elem_to_coord[g.commutator(basis[i], basis[j])]);
            let s = module
                .omega_coords(&br)
                .ok_or_else(|| Error::Precondition("commutators do not have exponent p".into()))?;
            alpha[(i * t + j) * t..(i * t + j + 1) * t].copy_from_slice(&s);
        }
    }
    StructureTensor::new(module, alpha)
}
