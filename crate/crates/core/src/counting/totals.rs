use std::fmt::Write as _;

use rayon::prelude::*;

use super::cset::{orbit_sum, OrbitSum};
use super::transversal::{Completeness, Transversal};
use crate::budget::Budget;
use crate::correspondence::{orbits, Filter};
use crate::error::{Error, Result};
use crate::linear::{Partition, Side};

fn require(p: u64, n: usize, transversal: &Transversal) -> Result<()> {
    if (p as u128) < n as u128 {
        return Err(Error::Precondition(format!("counting requires p ≥ n (p={p}, n={n})")));
    }
    if (transversal.p, transversal.n) != (p, n) {
        return Err(Error::Mismatch(format!(
            "transversal is for p={} n={}, requested p={p} n={n}",
            transversal.p, transversal.n
        )));
    }
    Ok(())
}

/// The orbit sums of one partition, one per transversal entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCount {
    pub partition: Partition,
    pub sums: Vec<OrbitSum>,
    pub count: u64,
    /// Orbit count of nilpotent Lie structures on the shape, when in budget.
    pub cross_check: Option<usize>,
}

/// `Σ_{K} Σ_{σ ∈ C(K, λ)} 1/|σ^{Aut(K)}|` over the transversal.
pub fn count_partition(p: u64, n: usize, lam: &Partition, transversal: &Transversal, budget: &Budget) -> Result<u64> {
    Ok(partition_count(p, n, lam, transversal, budget, false)?.count)
}

fn partition_count(
    p: u64,
    n: usize,
    lam: &Partition,
    transversal: &Transversal,
    budget: &Budget,
    cross_check: bool,
) -> Result<PartitionCount> {
    require(p, n, transversal)?;
    if lam.n() != n {
        return Err(Error::Mismatch(format!("partition ({lam}) is not of {n}")));
    }
    let sums: Vec<OrbitSum> =
        transversal.entries.par_iter().map(|k| orbit_sum(k, lam, budget)).collect::<Result<_>>()?;
    let count = sums
        .iter()
        .map(|s| s.as_integer().ok_or_else(|| Error::Consistency(format!("non-integral orbit sum {}", s.value))))
        .sum::<Result<u64>>()?;
    let cross_check = if cross_check {
        match orbits(lam, p, Side::Ring, Filter::LIE_NILPOTENT, budget) {
            Ok(r) => Some(r.count()),
            Err(Error::Budget { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(PartitionCount { partition: lam.clone(), sums, count, cross_check })
}

/// Sum of [`count_partition`] over all partitions of `n`.
pub fn count_total(p: u64, n: usize, transversal: &Transversal, budget: &Budget) -> Result<u64> {
    Ok(count_report(p, n, transversal, budget, false)?.total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub p: u64,
    pub n: usize,
    pub rows: Vec<PartitionCount>,
    pub total: u64,
    pub source: String,
    pub completeness: Completeness,
}

impl CountReport {
    /// Whether every available cross-check agrees.
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| r.cross_check.map(|c| c as u64 == r.count).unwrap_or(true))
    }

    pub fn render(&self) -> String {
        let mut s = format!("count p={} n={} transversal={} ({})\n", self.p, self.n, self.source, self.completeness);
        for r in &self.rows {
            let cross = match r.cross_check {
                Some(c) if c as u64 == r.count => format!("orbits={c} ok"),
                Some(c) => format!("orbits={c} MISMATCH"),
                None => "orbits=n/a".to_string(),
            };
            let _ = writeln!(s, "{} → {}  [{cross}]", r.partition, r.count);
        }
        let _ = writeln!(s, "total {}", self.total);
        s
    }
}

/// Per-partition counts and the total, optionally cross-checked against the
/// orbit enumeration on each shape.
pub fn count_report(
    p: u64,
    n: usize,
    transversal: &Transversal,
    budget: &Budget,
    cross_check: bool,
) -> Result<CountReport> {
    require(p, n, transversal)?;
    let rows = Partition::all(n)
        .iter()
        .map(|lam| partition_count(p, n, lam, transversal, budget, cross_check))
        .collect::<Result<Vec<_>>>()?;
    let total = rows.iter().map(|r| r.count).sum();
    Ok(CountReport { p, n, rows, total, source: transversal.source_label(), completeness: transversal.completeness })
}
