use std::fmt;

use super::arith::mod_inverse;
use super::partition::Partition;
use crate::error::{Error, Result};

/// Dense matrix over `F_p`, row-major, entries kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn new(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(FpMatrix { p, rows, cols, data })
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(p, rows.len(), cols, rows.concat())
    }

    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let p = self.p;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = (*d + a * b) % p;
                }
            }
        }
        FpMatrix { p, rows: self.rows, cols: other.cols, data: out }
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (d, &b) in out.iter_mut().zip(self.row(k)) {
                *d = (*d + a * b) % self.p;
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = mod_inverse(m.get(r, c) as i64, p).expect("nonzero in a prime field");
            for j in 0..m.cols {
                let v = m.get(r, j) * inv % p;
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.get(i, j) + (p - f) * m.get(r, j)) % p;
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn det(&self) -> u64 {
        assert!(self.is_square());
        let p = self.p;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = 1 % p;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m[i * n + c] != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    m.swap(piv * n + j, c * n + j);
                }
                det = (p - det) % p;
            }
            let d = m[c * n + c];
            det = det * d % p;
            let inv = mod_inverse(d as i64, p).unwrap();
            for i in c + 1..n {
                let f = m[i * n + c] * inv % p;
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    m[i * n + j] = (m[i * n + j] + (p - f) * m[c * n + j]) % p;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % self.p;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = r.get(i, n + j);
            }
        }
        Some(out)
    }

    /// Basis of `{x : self * x = 0}` (column vectors).
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1 % p;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - r.get(row, f)) % p;
                }
                v
            })
            .collect()
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let v: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
                format!("[{}]", v.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Row-reduced basis of the span of `vecs` over `F_p`.
pub fn span_basis(p: u64, dim: usize, vecs: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let m = FpMatrix::new(p, vecs.len(), dim, vecs.concat()).expect("uniform vector length");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Sizes of the Jordan blocks of a nilpotent matrix: the number of blocks of
/// size at least `i` is `rank(σ^{i-1}) - rank(σ^i)`.
pub fn jordan_type(sigma: &FpMatrix) -> Result<Partition> {
    if !sigma.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", sigma.rows, sigma.cols)));
    }
    let n = sigma.rows;
    if !sigma.pow(n as u32).is_zero() {
        return Err(Error::NotNilpotent);
    }
    let mut ranks = vec![n];
    let mut power = FpMatrix::identity(sigma.p, n);
    for _ in 0..n {
        power = power.mul(sigma);
        ranks.push(power.rank());
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).filter(|&c| c > 0).collect();
    Ok(Partition::new(at_least)?.dual())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockPattern {
    /// Block lower-triangular: zero above the diagonal blocks.
    Lower,
    /// Block upper-triangular: zero below the diagonal blocks.
    Upper,
}

pub(crate) fn block_index(d: &[usize]) -> Vec<usize> {
    d.iter().enumerate().flat_map(|(j, &k)| std::iter::repeat_n(j, k)).collect()
}

/// Whether `m` has block sizes `d`, invertible diagonal blocks, and vanishes on
/// the off-diagonal side excluded by `pattern`.
pub fn block_pattern_check(m: &FpMatrix, d: &[usize], pattern: BlockPattern) -> Result<bool> {
    let t: usize = d.iter().sum();
    if !m.is_square() || m.rows != t {
        return Err(Error::Dimension(format!("{}x{} matrix against block sizes {d:?}", m.rows, m.cols)));
    }
    let blk = block_index(d);
    for r in 0..t {
        for c in 0..t {
            let forbidden = match pattern {
                BlockPattern::Lower => blk[r] < blk[c],
                BlockPattern::Upper => blk[r] > blk[c],
            };
            if forbidden && m.get(r, c) != 0 {
                return Ok(false);
            }
        }
    }
    let mut start = 0;
    for &k in d {
        let mut block = FpMatrix::zeros(m.p, k, k);
        for i in 0..k {
            for j in 0..k {
                block.data[i * k + j] = m.get(start + i, start + j);
            }
        }
        if !block.is_invertible() {
            return Ok(false);
        }
        start += k;
    }
    Ok(true)
}

/// The diagonal blocks of `m` for block sizes `d`.
pub(crate) fn diagonal_blocks(m: &FpMatrix, d: &[usize]) -> Vec<FpMatrix> {
    let mut out = Vec::with_capacity(d.len());
    let mut start = 0;
    for &k in d {
        let mut block = FpMatrix::zeros(m.p, k, k);
        for i in 0..k {
            for j in 0..k {
                block.data[i * k + j] = m.get(start + i, start + j);
            }
        }
        out.push(block);
        start += k;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::gl_enumerate;
    use crate::Budget;

    fn m(p: u64, rows: &[&[u64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(jordan_type(&FpMatrix::zeros(3, 3, 3)).unwrap(), part(&[1, 1, 1]));
        let j3 = m(3, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(jordan_type(&j3).unwrap(), part(&[3]));
        let e12 = m(3, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(jordan_type(&e12).unwrap(), part(&[2, 1]));
        assert!(matches!(jordan_type(&FpMatrix::identity(3, 3)), Err(Error::NotNilpotent)));
    }

    #[test]
    fn jordan_type_is_conjugation_invariant() {
        let gl: Vec<FpMatrix> = gl_enumerate(3, 3, &Budget::default()).unwrap().collect();
        let samples = [
            m(3, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]),
            m(3, &[&[0, 2, 1], &[0, 0, 0], &[0, 0, 0]]),
            m(3, &[&[0, 0, 0], &[1, 0, 0], &[2, 1, 0]]),
            FpMatrix::zeros(3, 3, 3),
        ];
        for s in &samples {
            let lam = jordan_type(s).unwrap();
            for g in &gl {
                let gi = g.inverse().unwrap();
                assert_eq!(jordan_type(&gi.mul(s).mul(g)).unwrap(), lam);
            }
        }
    }

    #[test]
    fn inverse_and_det() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), FpMatrix::identity(5, 2));
        assert_eq!(a.det(), (4 + 25 - 6) % 5);
        assert!(m(3, &[&[1, 2], &[2, 1]]).inverse().is_none());
        assert_eq!(m(3, &[&[1, 2], &[2, 1]]).det(), 0);
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(3, &[&[1, 2, 0, 1], &[2, 1, 0, 2]]);
        let ker = a.kernel();
        assert_eq!(ker.len(), 4 - a.rank());
        for v in ker {
            assert!(a.apply_row_col(&v).iter().all(|&x| x == 0));
        }
    }

    impl FpMatrix {
        fn apply_row_col(&self, v: &[u64]) -> Vec<u64> {
            (0..self.rows).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % self.p).collect()
        }
    }

    #[test]
    fn block_patterns() {
        for d in [vec![1, 1, 1], vec![2, 1], vec![3]] {
            let id = FpMatrix::identity(3, 3);
            assert!(block_pattern_check(&id, &d, BlockPattern::Lower).unwrap());
            assert!(block_pattern_check(&id, &d, BlockPattern::Upper).unwrap());
        }
        let l = m(3, &[&[1, 0], &[1, 1]]);
        assert!(block_pattern_check(&l, &[1, 1], BlockPattern::Lower).unwrap());
        assert!(!block_pattern_check(&l, &[1, 1], BlockPattern::Upper).unwrap());
        for g in gl_enumerate(2, 3, &Budget::default()).unwrap() {
            assert!(block_pattern_check(&g, &[2], BlockPattern::Lower).unwrap());
            assert!(block_pattern_check(&g, &[2], BlockPattern::Upper).unwrap());
        }
        let singular = m(3, &[&[0, 0], &[1, 1]]);
        assert!(!block_pattern_check(&singular, &[1, 1], BlockPattern::Lower).unwrap());
        assert!(block_pattern_check(&l, &[1, 2], BlockPattern::Lower).is_err());
    }
}
