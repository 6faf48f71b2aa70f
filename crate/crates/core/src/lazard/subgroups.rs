use std::collections::HashSet;
use std::fmt;

/// A subset of `{0, …, n-1}` as a bitmap.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    n: usize,
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet { n, bits: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        (0..n).for_each(|k| s.insert(k));
        s
    }

    pub fn from_indices(n: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        idx.into_iter().for_each(|k| s.insert(k));
        s
    }

    #[inline]
    pub fn contains(&self, k: usize) -> bool {
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, k: usize) {
        self.bits[k / 64] |= 1 << (k % 64);
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&k| self.contains(k))
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgroup together with a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: ElementSet,
    pub generators: Vec<usize>,
}

/// Closure of `gens` under a binary operation on indices with identity `0`.
/// In a finite group this is the generated subgroup.
pub fn closure(n: usize, op: &impl Fn(usize, usize) -> usize, gens: &[usize]) -> ElementSet {
    let mut set = ElementSet::empty(n);
    set.insert(0);
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = op(x, g);
            if !set.contains(y) {
                set.insert(y);
                stack.push(y);
            }
        }
    }
    set
}

/// Every subgroup, as joins of cyclic subgroups, sorted by size then content.
pub fn all_subgroups(n: usize, op: &impl Fn(usize, usize) -> usize) -> Vec<Subgroup> {
    let mut cyclic: Vec<(usize, ElementSet)> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for g in 0..n {
        let c = closure(n, op, &[g]);
        if seen_cyclic.insert(c.clone()) {
            cyclic.push((g, c));
        }
    }
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut out = Vec::new();
    let trivial = Subgroup { elements: ElementSet::from_indices(n, [0]), generators: vec![] };
    seen.insert(trivial.elements.clone());
    out.push(trivial);
    let mut k = 0;
    while k < out.len() {
        let h = out[k].clone();
        for (g, c) in &cyclic {
            if c.is_subset(&h.elements) {
                continue;
            }
            let mut gens = h.generators.clone();
            gens.push(*g);
            let j = closure(n, op, &gens);
            if seen.insert(j.clone()) {
                out.push(Subgroup { elements: j, generators: gens });
            }
        }
        k += 1;
    }
    out.sort_by(|a, b| (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_klein() {
        // Z/8 under addition: subgroups of order 1, 2, 4, 8
        let add8 = |a: usize, b: usize| (a + b) % 8;
        let s = all_subgroups(8, &add8);
        assert_eq!(s.iter().map(|h| h.elements.len()).collect::<Vec<_>>(), vec![1, 2, 4, 8]);
        // (Z/2)^2 via xor: 5 subgroups
        let xor = |a: usize, b: usize| a ^ b;
        assert_eq!(all_subgroups(4, &xor).len(), 5);
        // (Z/3)^2: 1 + 4 + 1
        let add33 = |a: usize, b: usize| (a / 3 + b / 3) % 3 * 3 + (a % 3 + b % 3) % 3;
        assert_eq!(all_subgroups(9, &add33).len(), 6);
        // (Z/2)^3: 1 + 7 + 7 + 1
        assert_eq!(all_subgroups(8, &xor).len(), 16);
    }

    #[test]
    fn element_set_basics() {
        let a = ElementSet::from_indices(70, [0, 3, 65]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(65) && !a.contains(64));
        assert!(a.is_subset(&ElementSet::full(70)));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 3, 65]);
    }
}
