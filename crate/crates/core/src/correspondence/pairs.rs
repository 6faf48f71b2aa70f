use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linear::matrix::block_index;
use crate::linear::{block_pattern_check, gl_enumerate, gl_order, BlockPattern, FpMatrix, Partition, Side};

/// Image of a module automorphism in `GL_t(F_p) × GL_t(F_p)`: `e` acts on the
/// `Ω₁` basis, `f` on the basis of `Ū` resp. `V̄`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub e: FpMatrix,
    pub f: FpMatrix,
    pub side: Side,
}

impl AdmissiblePair {
    pub fn identity(p: u64, t: usize, side: Side) -> Self {
        AdmissiblePair { e: FpMatrix::identity(p, t), f: FpMatrix::identity(p, t), side }
    }

    /// Entrywise product `(E·E', F·F')`: apply `self`, then `other`.
    pub fn compose(&self, other: &AdmissiblePair) -> AdmissiblePair {
        AdmissiblePair { e: self.e.mul(&other.e), f: self.f.mul(&other.f), side: self.side }
    }

    pub fn inverse(&self) -> AdmissiblePair {
        AdmissiblePair {
            e: self.e.inverse().expect("admissible pairs are invertible"),
            f: self.f.inverse().expect("admissible pairs are invertible"),
            side: self.side,
        }
    }

    /// Matches the block forms for `shape` with equal diagonal blocks.
    pub fn is_admissible(&self, shape: &Partition) -> bool {
        let d = shape.multiplicities();
        let (ep, fp) = patterns(self.side);
        block_pattern_check(&self.e, &d, ep).unwrap_or(false)
            && block_pattern_check(&self.f, &d, fp).unwrap_or(false)
            && crate::linear::matrix::diagonal_blocks(&self.e, &d)
                == crate::linear::matrix::diagonal_blocks(&self.f, &d)
    }
}

/// Block forms of `(E, F)`. A module automorphism of `U` or of `V` restricts
/// to `Ω₁` block lower-triangularly and induces a block upper-triangular map
/// on the quotient by `℧₁`; both sides share the pattern.
pub fn patterns(_side: Side) -> (BlockPattern, BlockPattern) {
    (BlockPattern::Lower, BlockPattern::Upper)
}

/// Indexable enumeration of every pair `(E, F)` with `E` in `e_pattern`, `F`
/// in `f_pattern` and identical diagonal blocks.
#[derive(Clone, Debug)]
pub struct PairGroup {
    p: u64,
    t: usize,
    side: Side,
    offsets: Vec<usize>,
    blocks: Vec<Vec<FpMatrix>>,
    e_free: Vec<(usize, usize)>,
    f_free: Vec<(usize, usize)>,
    len: usize,
}

fn free_positions(d: &[usize], pattern: BlockPattern) -> Vec<(usize, usize)> {
    let blk = block_index(d);
    let t = blk.len();
    let mut out = Vec::new();
    for r in 0..t {
        for c in 0..t {
            let free = match pattern {
                BlockPattern::Lower => blk[r] > blk[c],
                BlockPattern::Upper => blk[r] < blk[c],
            };
            if free {
                out.push((r, c));
            }
        }
    }
    out
}

pub fn pairs_with_patterns(
    shape: &Partition,
    p: u64,
    side: Side,
    e_pattern: BlockPattern,
    f_pattern: BlockPattern,
    budget: &Budget,
) -> Result<PairGroup> {
    let d = shape.multiplicities();
    let e_free = free_positions(&d, e_pattern);
    let f_free = free_positions(&d, f_pattern);
    let size =
        d.iter().map(|&k| gl_order(k, p)).product::<u128>() * (p as u128).pow((e_free.len() + f_free.len()) as u32);
    Budget::check(&format!("admissible pairs for shape ({shape}) at p={p}"), size, budget.gl_order)?;
    let blocks =
        d.iter().map(|&k| gl_enumerate(k, p, budget).map(|it| it.collect::<Vec<_>>())).collect::<Result<Vec<_>>>()?;
    let mut offsets = vec![0];
    for &k in &d {
        offsets.push(offsets.last().unwrap() + k);
    }
    Ok(PairGroup { p, t: shape.len(), side, offsets, blocks, e_free, f_free, len: size as usize })
}

/// The group of admissible pairs for `shape` on the given side.
pub fn admissible_pairs(shape: &Partition, p: u64, side: Side, budget: &Budget) -> Result<PairGroup> {
    let (e, f) = patterns(side);
    pairs_with_patterns(shape, p, side, e, f, budget)
}

impl PairGroup {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// The `k`-th pair in the fixed enumeration order.
    pub fn get(&self, k: usize) -> AdmissiblePair {
        assert!(k < self.len, "pair index out of range");
        let p = self.p as usize;
        let mut rest = k;
        let mut e_vals = vec![0u64; self.e_free.len()];
        let mut f_vals = vec![0u64; self.f_free.len()];
        for v in f_vals.iter_mut().rev() {
            *v = (rest % p) as u64;
            rest /= p;
        }
        for v in e_vals.iter_mut().rev() {
            *v = (rest % p) as u64;
            rest /= p;
        }
        let mut choice = vec![0usize; self.blocks.len()];
        for (j, c) in choice.iter_mut().enumerate().rev() {
            *c = rest % self.blocks[j].len();
            rest /= self.blocks[j].len();
        }
        let mut e = FpMatrix::zeros(self.p, self.t, self.t);
        for (j, &c) in choice.iter().enumerate() {
            let b = &self.blocks[j][c];
            let o = self.offsets[j];
            for r in 0..b.rows() {
                for s in 0..b.cols() {
                    e.set(o + r, o + s, b.get(r, s));
                }
            }
        }
        let mut f = e.clone();
        for (&(r, c), &v) in self.e_free.iter().zip(&e_vals) {
            e.set(r, c, v);
        }
        for (&(r, c), &v) in self.f_free.iter().zip(&f_vals) {
            f.set(r, c, v);
        }
        AdmissiblePair { e, f, side: self.side }
    }

    pub fn iter(&self) -> impl Iterator<Item = AdmissiblePair> + '_ {
        (0..self.len).map(move |k| self.get(k))
    }

    pub fn to_vec(&self) -> Vec<AdmissiblePair> {
        self.iter().collect()
    }
}

impl std::fmt::Display for AdmissiblePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(E={}, F={})", self.e, self.f)
    }
}

pub(crate) fn check_pair(shape: &Partition, p: u64, side: Side, g: &AdmissiblePair) -> Result<()> {
    if g.side != side || g.e.rows() != shape.len() || g.e.p() != p {
        return Err(Error::Mismatch(format!("pair {g} does not act on shape ({shape}) side {side} at p={p}")));
    }
    Ok(())
}
