use super::group::GroupTable;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Cheap isomorphism invariants of a group table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupInvariants {
    pub order: usize,
    /// Sorted element orders.
    pub element_orders: Vec<u64>,
    pub center: usize,
    pub derived: usize,
    pub abelian: bool,
    /// `|{x : x^{p^i} = 1}|` for `i = 1, 2, …` up to the exponent.
    pub omega_sizes: Vec<usize>,
}

pub fn group_invariants(g: &GroupTable) -> GroupInvariants {
    let mut element_orders: Vec<u64> = (0..g.order()).map(|x| g.element_order(x)).collect();
    element_orders.sort_unstable();
    let exp = *element_orders.last().unwrap_or(&1);
    let mut omega_sizes = Vec::new();
    let mut q = g.p();
    while q <= exp {
        omega_sizes.push(element_orders.iter().filter(|&&o| q.is_multiple_of(o)).count());
        q *= g.p();
    }
    GroupInvariants {
        order: g.order(),
        element_orders,
        center: g.center().len(),
        derived: g.derived_subgroup().len(),
        abelian: g.is_abelian(),
        omega_sizes,
    }
}

/// Generators chosen greedily, largest element order first.
pub fn generating_set(g: &GroupTable) -> Vec<usize> {
    let mut by_order: Vec<usize> = (1..g.order()).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut span = g.generated(&[]);
    for x in by_order {
        if span.len() == g.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = g.generated(&gens);
        }
    }
    gens
}

/// Extends `gens[i] ↦ images[i]` to a homomorphism by breadth-first search
/// over words; `None` if the assignment is inconsistent.
pub fn extend_homomorphism(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let v = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(map)
}

/// An isomorphism `G → H` as an index map, if one exists.
pub fn find_isomorphism(g: &GroupTable, h: &GroupTable, budget: &Budget) -> Result<Option<Vec<usize>>> {
    if g.order() != h.order() || g.p() != h.p() {
        return Ok(None);
    }
    Budget::check("isomorphism test group order", g.order() as u128, budget.iso_order as u128)?;
    if group_invariants(g) != group_invariants(h) {
        return Ok(None);
    }
    let gens = generating_set(g);
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&s| (1..h.order()).filter(|&y| h.element_order(y) == g.element_order(s)).collect()).collect();
    let total: u128 = candidates.iter().map(|c| c.len() as u128).product();
    Budget::check("isomorphism candidate assignments", total, budget.endo_candidates)?;
    let mut images = Vec::with_capacity(gens.len());
    Ok(backtrack(g, h, &gens, &candidates, &mut images))
}

fn backtrack(
    g: &GroupTable,
    h: &GroupTable,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = images.len();
    if k == gens.len() {
        let map = extend_homomorphism(g, h, gens, images)?;
        let mut hit = vec![false; h.order()];
        for &y in &map {
            if hit[y] {
                return None;
            }
            hit[y] = true;
        }
        return Some(map);
    }
    for &y in &candidates[k] {
        // partial consistency on the subgroup generated so far
        images.push(y);
        if extend_partial(g, h, &gens[..=k], images) {
            if let Some(m) = backtrack(g, h, gens, candidates, images) {
                return Some(m);
            }
        }
        images.pop();
    }
    None
}

/// Whether the assignment extends to a homomorphism of the generated subgroup.
fn extend_partial(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &[usize]) -> bool {
    let mut map = std::collections::HashMap::new();
    map.insert(0usize, 0usize);
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let v = h.mul(map[&x], t);
            match map.get(&y) {
                None => {
                    map.insert(y, v);
                    queue.push(y);
                }
                Some(&w) if w != v => return false,
                _ => {}
            }
        }
    }
    // injective on the generated subgroup
    let mut seen = std::collections::HashSet::new();
    map.values().all(|v| seen.insert(*v))
}

pub fn groups_isomorphic(g: &GroupTable, h: &GroupTable, budget: &Budget) -> Result<bool> {
    Ok(find_isomorphism(g, h, budget)?.is_some())
}

/// Checks that `map` is a bijective homomorphism.
pub fn is_isomorphism(g: &GroupTable, h: &GroupTable, map: &[usize]) -> Result<bool> {
    if map.len() != g.order() || g.order() != h.order() {
        return Err(Error::Dimension("map length differs from the group order".into()));
    }
    let mut hit = vec![false; h.order()];
    for &y in map {
        if y >= h.order() || hit[y] {
            return Ok(false);
        }
        hit[y] = true;
    }
    Ok((0..g.order()).all(|x| (0..g.order()).all(|y| map[g.mul(x, y)] == h.mul(map[x], map[y]))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lazard::gp;
    use crate::linear::{Module, Partition, Side};
    use crate::structures::StructureTensor;

    #[test]
    fn order_27_examples() {
        let b = Budget::default();
        let h = gp(&StructureTensor::heisenberg(3, Side::Ring).unwrap(), &b).unwrap();
        let m = Module::new(3, Partition::ones(3), Side::Ring).unwrap();
        let a = gp(&StructureTensor::zero(m), &b).unwrap();
        assert!(groups_isomorphic(&h, &h, &b).unwrap());
        assert!(!groups_isomorphic(&a, &h, &b).unwrap());
        let perm: Vec<usize> = (0..27).map(|k| if k == 0 { 0 } else { (k * 5) % 26 + 1 }).collect();
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..27).collect::<Vec<_>>());
        let h2 = h.relabel(&perm).unwrap();
        let map = find_isomorphism(&h, &h2, &b).unwrap().unwrap();
        assert!(is_isomorphism(&h, &h2, &map).unwrap());
    }

    #[test]
    fn nonisomorphic_same_invariants_are_separated() {
        // Z/9 x Z/3 vs the nonabelian group of exponent 9 differ in the center
        let b = Budget::default();
        let m = Module::new(3, Partition::new(vec![2, 1]).unwrap(), Side::Ring).unwrap();
        let ab = gp(&StructureTensor::zero(m.clone()), &b).unwrap();
        let na = gp(&StructureTensor::antisymmetric(m, &[(0, 1, 0, 1)]).unwrap(), &b).unwrap();
        assert!(!groups_isomorphic(&ab, &na, &b).unwrap());
    }

    #[test]
    fn budget() {
        let b = Budget { iso_order: 9, ..Budget::default() };
        let h = gp(&StructureTensor::heisenberg(3, Side::Ring).unwrap(), &Budget::default()).unwrap();
        assert!(matches!(groups_isomorphic(&h, &h, &b), Err(Error::Budget { .. })));
    }
}
