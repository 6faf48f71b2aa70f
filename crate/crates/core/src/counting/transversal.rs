use std::fmt;
use std::path::{Path, PathBuf};

use crate::budget::Budget;
use crate::correspondence::{are_isomorphic, orbits, Filter};
use crate::error::{Error, Result};
use crate::linear::{Partition, Side};
use crate::structures::{parse_tensor, FpLieAlgebra};

/// Name of the manifest inside a transversal directory.
pub const MANIFEST: &str = "manifest.txt";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransversalSource {
    Brute,
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Every class is present, by exhaustive enumeration.
    Proven,
    /// Taken on trust from the input file.
    Claimed,
    /// A class found by enumeration is missing.
    Incomplete,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completeness::Proven => "complete (exhaustive)",
            Completeness::Claimed => "completeness not verified (file)",
            Completeness::Incomplete => "INCOMPLETE",
        })
    }
}

/// Pairwise non-isomorphic nilpotent Lie algebras of dimension `n` over `F_p`.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub p: u64,
    pub n: usize,
    pub entries: Vec<FpLieAlgebra>,
    pub source: TransversalSource,
    pub completeness: Completeness,
}

fn isomorphic(a: &FpLieAlgebra, b: &FpLieAlgebra, budget: &Budget) -> Result<bool> {
    if a.invariants() != b.invariants() {
        return Ok(false);
    }
    are_isomorphic(&a.to_tensor(Side::Ring), &b.to_tensor(Side::Ring), budget)
}

/// Every isomorphism class, as orbit representatives on shape `(1,…,1)`.
pub fn brute_transversal(p: u64, n: usize, budget: &Budget) -> Result<Transversal> {
    let report = orbits(&Partition::ones(n), p, Side::Ring, Filter::LIE_NILPOTENT, budget)?;
    let entries = report.orbits.iter().map(|o| FpLieAlgebra::from_tensor(&o.representative)).collect::<Result<_>>()?;
    Ok(Transversal { p, n, entries, source: TransversalSource::Brute, completeness: Completeness::Proven })
}

/// Reads `<dir>/manifest.txt` (`p=<p> n=<n>` then `entry <file>` lines) and
/// the listed structure files; rejects entries that are not nilpotent Lie
/// algebras of the right size or that are isomorphic to an earlier entry.
pub fn transversal_from_dir(dir: &Path, budget: &Budget) -> Result<Transversal> {
    let text = std::fs::read_to_string(dir.join(MANIFEST))?;
    let mut header = None;
    let mut files = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(f) = line.strip_prefix("entry ") {
            files.push((ln + 1, f.trim().to_string()));
            continue;
        }
        let mut p = None;
        let mut n = None;
        for tok in line.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| Error::parse(ln + 1, format!("bad token {tok:?}")))?;
            let v: u64 = v.parse().map_err(|_| Error::parse(ln + 1, format!("bad number in {tok:?}")))?;
            match k {
                "p" => p = Some(v),
                "n" => n = Some(v as usize),
                _ => return Err(Error::parse(ln + 1, format!("unknown key {k:?}"))),
            }
        }
        match (p, n) {
            (Some(p), Some(n)) if header.is_none() => header = Some((p, n)),
            _ => return Err(Error::parse(ln + 1, "expected a single `p=<p> n=<n>` header")),
        }
    }
    let (p, n) = header.ok_or_else(|| Error::parse(1, "manifest lacks `p=<p> n=<n>`"))?;
    let mut entries: Vec<FpLieAlgebra> = Vec::new();
    for (ln, f) in files {
        let t = parse_tensor(&std::fs::read_to_string(dir.join(&f))?)?;
        if t.p() != p || t.shape() != &Partition::ones(n) {
            return Err(Error::parse(ln, format!("{f}: expected p={p} and shape of {n} ones")));
        }
        let k = FpLieAlgebra::from_tensor(&t)?;
        if !k.is_nilpotent() {
            return Err(Error::Precondition(format!("{f}: algebra is not nilpotent")));
        }
        for (i, e) in entries.iter().enumerate() {
            if isomorphic(&k, e, budget)? {
                return Err(Error::Precondition(format!("{f} duplicates entry {}", i + 1)));
            }
        }
        entries.push(k);
    }
    Ok(Transversal {
        p,
        n,
        entries,
        source: TransversalSource::File(dir.to_path_buf()),
        completeness: Completeness::Claimed,
    })
}

/// Brute force when `source` is `None`, otherwise the given directory.
pub fn transversal_k(p: u64, n: usize, source: Option<&Path>, budget: &Budget) -> Result<Transversal> {
    match source {
        None => brute_transversal(p, n, budget),
        Some(dir) => {
            let t = transversal_from_dir(dir, budget)?;
            if (t.p, t.n) != (p, n) {
                return Err(Error::Mismatch(format!("transversal is for p={} n={}, requested p={p} n={n}", t.p, t.n)));
            }
            Ok(t)
        }
    }
}

impl Transversal {
    /// Checks a file-sourced transversal against exhaustive enumeration.
    pub fn check_completeness(&mut self, budget: &Budget) -> Result<Completeness> {
        if self.completeness != Completeness::Claimed {
            return Ok(self.completeness);
        }
        let brute = brute_transversal(self.p, self.n, budget)?;
        let mut complete = brute.entries.len() == self.entries.len();
        for k in &brute.entries {
            let mut found = false;
            for e in &self.entries {
                if isomorphic(k, e, budget)? {
                    found = true;
                    break;
                }
            }
            complete &= found;
        }
        self.completeness = if complete { Completeness::Proven } else { Completeness::Incomplete };
        Ok(self.completeness)
    }

    pub fn source_label(&self) -> String {
        match &self.source {
            TransversalSource::Brute => "brute".to_string(),
            TransversalSource::File(p) => format!("file {}", p.display()),
        }
    }
}
