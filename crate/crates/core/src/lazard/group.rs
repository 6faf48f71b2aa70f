use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::subgroups::{all_subgroups, closure, ElementSet, Subgroup};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linear::{is_prime, Module, Partition};
use crate::structures::StructureTensor;

/// A finite group of order `p^n` on indices `0..order`, `0` the identity.
#[derive(Clone, Debug)]
pub struct GroupTable {
    p: u64,
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Arc<Module>>,
    provenance: Option<StructureTensor>,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.table == other.table
    }
}

impl Eq for GroupTable {}

/// How associativity was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocCoverage {
    Exhaustive(u64),
    Sampled(u64),
}

impl std::fmt::Display for AssocCoverage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AssocCoverage::Exhaustive(n) => write!(f, "{n} triples, exhaustive"),
            AssocCoverage::Sampled(n) => write!(f, "{n} triples, sampled"),
        }
    }
}

fn log_p(mut n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    Some(k)
}

impl GroupTable {
    /// Validates identity, the Latin property and associativity (exhaustive
    /// up to `budget.assoc_full_order`, sampled above).
    pub fn new(p: u64, table: Vec<u32>, budget: &Budget) -> Result<Self> {
        let g = Self::new_unchecked_assoc(p, table)?;
        if let Some((a, b, c)) = g.associativity_violation(budget).0 {
            return Err(Error::Consistency(format!("not associative at ({a}, {b}, {c})")));
        }
        Ok(g)
    }

    /// Validates identity and the Latin property only.
    pub fn new_unchecked_assoc(p: u64, table: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let order = (table.len() as f64).sqrt().round() as usize;
        if order * order != table.len() || order == 0 {
            return Err(Error::Dimension(format!("table of {} entries is not square", table.len())));
        }
        if log_p(order as u64, p).is_none() {
            return Err(Error::Precondition(format!("order {order} is not a power of {p}")));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::Dimension("table entry out of range".into()));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(Error::Consistency(format!("0 is not a two-sided identity at {x}")));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for y in 0..order {
                let r = table[x * order + y] as usize;
                let c = table[y * order + x] as usize;
                if row[r] || col[c] {
                    return Err(Error::Consistency(format!("row or column {x} is not a permutation")));
                }
                row[r] = true;
                col[c] = true;
                if r == 0 {
                    inv[x] = y as u32;
                }
            }
        }
        Ok(GroupTable { p, order, table, inv, labels: None, provenance: None })
    }

    /// Attaches element labels: index `k` is `module.coords_of(k)`.
    pub fn with_labels(mut self, module: Arc<Module>) -> Result<Self> {
        if module.order() as usize != self.order {
            return Err(Error::Mismatch("label module has a different order".into()));
        }
        self.labels = Some(module);
        Ok(self)
    }

    pub fn with_provenance(mut self, t: StructureTensor) -> Result<Self> {
        let m = t.module().clone();
        self = self.with_labels(m)?;
        self.provenance = Some(t);
        Ok(self)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn labels(&self) -> Option<&Arc<Module>> {
        self.labels.as_ref()
    }

    pub fn provenance(&self) -> Option<&StructureTensor> {
        self.provenance.as_ref()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    #[inline]
    pub fn inverse(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn power(&self, x: usize, mut k: u64) -> usize {
        let (mut acc, mut base) = (0, x);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `x^{-1} y^{-1} x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y))
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).map(|x| self.element_order(x)).max().unwrap_or(1)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn center(&self) -> ElementSet {
        ElementSet::from_indices(
            self.order,
            (0..self.order).filter(|&x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x))),
        )
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> ElementSet {
        closure(self.order, &|a, b| self.mul(a, b), gens)
    }

    pub fn derived_subgroup(&self) -> ElementSet {
        let all = ElementSet::full(self.order);
        self.commutator_subgroup(&all, &all)
    }

    /// `[H, K]`: generated by all `h^{-1} k^{-1} h k`.
    pub fn commutator_subgroup(&self, h: &ElementSet, k: &ElementSet) -> ElementSet {
        let mut gens: Vec<usize> =
            h.iter().flat_map(|a| k.iter().map(move |b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
        gens.sort_unstable();
        gens.dedup();
        self.generated(&gens)
    }

    /// Lower central series orders `|G| = |G_1| ≥ |G_2| ≥ …` and whether it
    /// reaches the trivial group.
    pub fn lower_central_series(&self) -> (Vec<usize>, bool) {
        let all = ElementSet::full(self.order);
        let mut cur = all.clone();
        let mut out = vec![self.order];
        loop {
            let next = self.commutator_subgroup(&cur, &all);
            if next.len() == 1 {
                out.push(1);
                return (out, true);
            }
            if next.len() == cur.len() {
                return (out, false);
            }
            out.push(next.len());
            cur = next;
        }
    }

    /// Nilpotency class (`0` for the trivial group).
    pub fn nilpotency_class(&self) -> Option<usize> {
        let (s, ok) = self.lower_central_series();
        ok.then(|| s.len() - 1)
    }

    pub fn is_normal(&self, h: &ElementSet) -> bool {
        (0..self.order).all(|g| {
            let gi = self.inverse(g);
            h.iter().all(|x| h.contains(self.mul(self.mul(gi, x), g)))
        })
    }

    /// `Ω_i = {x : x^{p^i} = 1}`; a regularity error if it is not a subgroup.
    pub fn omega(&self, i: u32) -> Result<ElementSet> {
        let e = self.p.pow(i);
        let set = ElementSet::from_indices(self.order, (0..self.order).filter(|&x| self.power(x, e) == 0));
        let closed = set.iter().all(|a| set.iter().all(|b| set.contains(self.mul(a, b))));
        if !closed {
            return Err(Error::Regularity(format!("Ω_{i} is not a subgroup")));
        }
        Ok(set)
    }

    /// The partition `ω` with `p^{ω_i} = |Ω_i : Ω_{i-1}|`.
    pub fn omega_partition(&self) -> Result<Partition> {
        let mut parts = Vec::new();
        let mut prev = 1usize;
        let mut i = 1;
        while prev < self.order {
            let size = self.omega(i)?.len();
            let step = log_p((size / prev) as u64, self.p)
                .ok_or_else(|| Error::Consistency("Ω-index is not a power of p".into()))?;
            parts.push(step as usize);
            prev = size;
            i += 1;
        }
        Partition::new(parts).map_err(|_| Error::Regularity("Ω-indices are not non-increasing".into()))
    }

    /// Type of the group: the dual of the `ω` partition.
    pub fn group_type(&self) -> Result<Partition> {
        Ok(self.omega_partition()?.dual())
    }

    /// All subgroups, ordered by size. Limited by `budget.lattice_order`.
    pub fn subgroups(&self, budget: &Budget) -> Result<Vec<Subgroup>> {
        Budget::check("subgroup lattice group order", self.order as u128, budget.lattice_order as u128)?;
        Ok(all_subgroups(self.order, &|a, b| self.mul(a, b)))
    }

    pub fn normal_subgroups(&self, budget: &Budget) -> Result<Vec<Subgroup>> {
        Ok(self.subgroups(budget)?.into_iter().filter(|h| self.is_normal(&h.elements)).collect())
    }

    /// First failing triple, and how many triples were checked.
    pub fn associativity_violation(&self, budget: &Budget) -> (Option<(usize, usize, usize)>, AssocCoverage) {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= budget.assoc_full_order {
            let bad = (0..n).into_par_iter().find_map_first(|a| {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
                None
            });
            (bad, AssocCoverage::Exhaustive((n as u64).pow(3)))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa550_c1a7);
            let triples: Vec<(usize, usize, usize)> = (0..budget.assoc_samples)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            let bad = triples.par_iter().find_first(|&&(a, b, c)| !check(a, b, c)).copied();
            (bad, AssocCoverage::Sampled(budget.assoc_samples as u64))
        }
    }

    /// Text form: `order=<m> p=<p>` and `m` rows of `m` indices.
    pub fn to_text(&self) -> String {
        let mut s = format!("order={} p={}\n", self.order, self.p);
        for x in 0..self.order {
            let row = &self.table[x * self.order..(x + 1) * self.order];
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn parse(text: &str, budget: &Budget) -> Result<Self> {
        let mut lines =
            text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let mut order = None;
        let mut p = None;
        for tok in header.split_whitespace() {
            let (k, v) =
                tok.split_once('=').ok_or_else(|| Error::parse(hl + 1, format!("bad header token {tok:?}")))?;
            let v: u64 = v.parse().map_err(|_| Error::parse(hl + 1, format!("bad number in {tok:?}")))?;
            match k {
                "order" => order = Some(v as usize),
                "p" => p = Some(v),
                _ => return Err(Error::parse(hl + 1, format!("unknown header key {k:?}"))),
            }
        }
        let order = order.ok_or_else(|| Error::parse(hl + 1, "header lacks order="))?;
        let p = p.ok_or_else(|| Error::parse(hl + 1, "header lacks p="))?;
        let mut table = Vec::with_capacity(order * order);
        let mut rows = 0;
        for (ln, line) in lines {
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| Error::parse(ln + 1, format!("bad index {t:?}"))))
                .collect::<Result<_>>()?;
            if row.len() != order {
                return Err(Error::parse(ln + 1, format!("expected {order} entries, found {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v as usize >= order) {
                return Err(Error::parse(ln + 1, format!("index {bad} out of range")));
            }
            table.extend(row);
            rows += 1;
        }
        if rows != order {
            return Err(Error::parse(hl + 1, format!("expected {order} rows, found {rows}")));
        }
        Self::new(p, table, budget)
    }

    /// The same group with elements renamed by `perm` (index `k` becomes
    /// `perm[k]`); `perm[0]` must be `0`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        if perm.len() != n || perm[0] != 0 {
            return Err(Error::Precondition("relabeling must fix the identity".into()));
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x] * n + perm[y]] = perm[self.mul(x, y)] as u32;
            }
        }
        Self::new_unchecked_assoc(self.p, table)
    }
}

/// Order of `g`: the least `k ≥ 1` with `g^k = 1`.
pub fn element_order(g: &GroupTable, x: usize) -> u64 {
    g.element_order(x)
}

pub fn group_type(g: &GroupTable) -> Result<Partition> {
    g.group_type()
}

/// Commutator data and the subgroup lattice.
#[derive(Clone, Debug)]
pub struct CommutatorData {
    /// `commutators[x * order + y] = [x, y]`.
    pub commutators: Vec<u32>,
    pub derived: ElementSet,
    pub subgroups: Vec<Subgroup>,
    pub normal: Vec<Subgroup>,
}

pub fn commutator_and_subgroups(g: &GroupTable, budget: &Budget) -> Result<CommutatorData> {
    let n = g.order();
    let subgroups = g.subgroups(budget)?;
    let normal = subgroups.iter().filter(|h| g.is_normal(&h.elements)).cloned().collect();
    Ok(CommutatorData {
        commutators: (0..n * n).map(|k| g.commutator(k / n, k % n) as u32).collect(),
        derived: g.derived_subgroup(),
        subgroups,
        normal,
    })
}
