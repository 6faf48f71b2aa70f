use super::pairs::{check_pair, AdmissiblePair};
use crate::error::Result;
use crate::linear::FpMatrix;
use crate::structures::StructureTensor;

/// A pair with `E^{-1}` precomputed, for repeated application.
#[derive(Clone, Debug)]
pub struct PreparedPair {
    pub f: FpMatrix,
    pub e_inv: FpMatrix,
}

impl PreparedPair {
    pub fn new(g: &AdmissiblePair) -> Self {
        PreparedPair { f: g.f.clone(), e_inv: g.e.inverse().expect("admissible pairs are invertible") }
    }
}

/// `α'_ij^m = Σ_{a,b,c} F_ia F_jb α_ab^c (E^{-1})_cm`: the bracket transported
/// along the automorphism, `[x, y]' = [xπ, yπ]π^{-1}`.
///
/// With this convention `act(act(T, g), h) = act(T, h.compose(g))`.
pub fn act(t: &StructureTensor, g: &AdmissiblePair) -> Result<StructureTensor> {
    check_pair(t.shape(), t.p(), t.side(), g)?;
    let alpha = act_alpha(t.alpha(), t.t(), t.p(), &PreparedPair::new(g));
    t.with_alpha(alpha)
}

pub(crate) fn act_alpha(alpha: &[u64], t: usize, p: u64, g: &PreparedPair) -> Vec<u64> {
    let f = g.f.data();
    let einv = g.e_inv.data();
    // codomain: β_ab^m = Σ_c α_ab^c Einv_cm
    let mut beta = vec![0u64; t * t * t];
    for ab in 0..t * t {
        for c in 0..t {
            let a = alpha[ab * t + c];
            if a == 0 {
                continue;
            }
            for m in 0..t {
                beta[ab * t + m] += a * einv[c * t + m];
            }
        }
    }
    beta.iter_mut().for_each(|x| *x %= p);
    // second slot: γ_aj^m = Σ_b F_jb β_ab^m
    let mut gamma = vec![0u64; t * t * t];
    for a in 0..t {
        for j in 0..t {
            for b in 0..t {
                let fjb = f[j * t + b];
                if fjb == 0 {
                    continue;
                }
                for m in 0..t {
                    gamma[(a * t + j) * t + m] += fjb * beta[(a * t + b) * t + m];
                }
            }
        }
    }
    gamma.iter_mut().for_each(|x| *x %= p);
    // first slot: α'_ij^m = Σ_a F_ia γ_aj^m
    let mut out = vec![0u64; t * t * t];
    for i in 0..t {
        for a in 0..t {
            let fia = f[i * t + a];
            if fia == 0 {
                continue;
            }
            for jm in 0..t * t {
                out[i * t * t + jm] += fia * gamma[a * t * t + jm];
            }
        }
    }
    out.iter_mut().for_each(|x| *x %= p);
    out
}
