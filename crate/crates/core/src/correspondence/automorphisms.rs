//! Module automorphisms of `U` and `V`, evaluated element by element. Used to
//! check the block-form description of the pair groups and the transport of
//! brackets independently of the matrix formula in `act`.

use std::sync::Arc;

use rayon::prelude::*;

use super::pairs::AdmissiblePair;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linear::{FpMatrix, Module, Side};
use crate::structures::StructureTensor;

/// A bijective module endomorphism, stored as generator images and the
/// induced permutation of element indices.
#[derive(Clone, Debug)]
pub struct ModuleAutomorphism {
    module: Arc<Module>,
    /// `images[i]` = coordinates of the image of generator `i`.
    images: Vec<Vec<u64>>,
    perm: Vec<u32>,
    inv: Vec<u32>,
}

fn digits(mut c: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = c % p;
        c /= p;
    }
    out
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Image of `x_i · c` in component `j`, where `x_i` is a scalar of component
/// `i` and `c` an allowed matrix entry (ring: integers; algebra: truncated
/// polynomials in `T`).
fn component_product(module: &Module, i: usize, j: usize, x: u64, c: u64) -> u64 {
    let p = module.p();
    let mj = module.moduli()[j];
    match module.side() {
        Side::Ring => ((x as u128 * c as u128) % mj as u128) as u64,
        Side::Algebra => {
            let lj = module.shape().parts()[j];
            let li = module.shape().parts()[i];
            let xd = digits(x, p, li);
            let cd = digits(c, p, lj);
            let mut out = vec![0u64; lj];
            for (a, &xa) in xd.iter().enumerate() {
                for (b, &cb) in cd.iter().enumerate() {
                    if a + b < lj {
                        out[a + b] = (out[a + b] + xa * cb) % p;
                    }
                }
            }
            undigits(&out, p)
        }
    }
}

fn apply_matrix(module: &Module, images: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
    let t = module.t();
    let mut acc = vec![0u64; t];
    for i in 0..t {
        if x[i] == 0 {
            continue;
        }
        let term: Vec<u64> = (0..t).map(|j| component_product(module, i, j, x[i], images[i][j])).collect();
        module.add_into(&mut acc, &term);
    }
    acc
}

/// Allowed values of entry `(i, j)`: multiples of `p^{λ_j-λ_i}` (resp.
/// `T^{λ_j-λ_i}`) below `p^{λ_j}`, so that the order of the image of the
/// generator divides `p^{λ_i}`.
fn allowed_entries(module: &Module, i: usize, j: usize) -> Vec<u64> {
    let parts = module.shape().parts();
    let p = module.p();
    let step = if parts[j] > parts[i] { p.pow((parts[j] - parts[i]) as u32) } else { 1 };
    (0..module.moduli()[j]).step_by(step as usize).collect()
}

/// Number of module endomorphisms of `U` or `V`: `Π_{i,j} p^{min(λ_i, λ_j)}`.
pub fn endomorphism_count(module: &Module) -> u128 {
    let parts = module.shape().parts();
    let e: usize = parts.iter().flat_map(|&a| parts.iter().map(move |&b| a.min(b))).sum();
    (module.p() as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// All module automorphisms, found by enumerating every endomorphism and
/// keeping the bijective ones.
pub fn module_automorphisms(module: &Arc<Module>, budget: &Budget) -> Result<Vec<ModuleAutomorphism>> {
    let count = endomorphism_count(module);
    Budget::check(&format!("module endomorphisms of shape ({})", module.shape()), count, budget.endo_candidates)?;
    let t = module.t();
    let choices: Vec<Vec<u64>> = (0..t * t).map(|ij| allowed_entries(module, ij / t, ij % t)).collect();
    let order = module.order() as usize;
    let out = (0..count as u64)
        .into_par_iter()
        .filter_map(|mut k| {
            let mut images = vec![vec![0u64; t]; t];
            for ij in (0..t * t).rev() {
                let c = &choices[ij];
                images[ij / t][ij % t] = c[(k % c.len() as u64) as usize];
                k /= c.len() as u64;
            }
            let mut perm = vec![0u32; order];
            let mut hit = vec![false; order];
            for (idx, slot) in perm.iter_mut().enumerate() {
                let img = module.index_of(&apply_matrix(module, &images, &module.coords_of(idx)));
                if hit[img] {
                    return None;
                }
                hit[img] = true;
                *slot = img as u32;
            }
            let mut inv = vec![0u32; order];
            for (idx, &img) in perm.iter().enumerate() {
                inv[img as usize] = idx as u32;
            }
            Some(ModuleAutomorphism { module: module.clone(), images, perm, inv })
        })
        .collect();
    Ok(out)
}

impl ModuleAutomorphism {
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.module.coords_of(self.perm[self.module.index_of(x)] as usize)
    }

    pub fn apply_inverse(&self, x: &[u64]) -> Vec<u64> {
        self.module.coords_of(self.inv[self.module.index_of(x)] as usize)
    }

    pub fn generator_images(&self) -> &[Vec<u64>] {
        &self.images
    }

    /// `(E, F)`: the restriction to `Ω₁` and the map induced modulo `℧₁`, in
    /// the canonical bases.
    pub fn induced_pair(&self) -> Result<AdmissiblePair> {
        let m = &self.module;
        let (t, p) = (m.t(), m.p());
        let mut e = FpMatrix::zeros(p, t, t);
        let mut f = FpMatrix::zeros(p, t, t);
        for i in 0..t {
            let img = self.apply(&m.omega_generator(i));
            let s = m
                .omega_coords(&img)
                .ok_or_else(|| Error::Consistency(format!("automorphism moves Ω₁ generator {i} outside Ω₁")))?;
            for (j, &v) in s.iter().enumerate() {
                e.set(i, j, v);
            }
            let mut gen = vec![0; t];
            gen[i] = 1;
            for (j, v) in m.bar(&self.apply(&gen)).into_iter().enumerate() {
                f.set(i, j, v);
            }
        }
        Ok(AdmissiblePair { e, f, side: m.side() })
    }

    /// The bracket `[x, y]' = π^{-1}([xπ, yπ])`, computed on elements.
    pub fn transport(&self, t: &StructureTensor) -> Result<StructureTensor> {
        if t.module() != &self.module {
            return Err(Error::Mismatch("automorphism and tensor live on different modules".into()));
        }
        let m = &self.module;
        let n = m.t();
        let mut alpha = vec![0u64; n * n * n];
        for i in 0..n {
            let ui = self.images[i].clone();
            for j in 0..n {
                let br = t.bracket_coords(&ui, &self.images[j]);
                let back = self.apply_inverse(&br);
                let s =
                    m.omega_coords(&back).ok_or_else(|| Error::Consistency("transported bracket leaves Ω₁".into()))?;
                alpha[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(&s);
            }
        }
        t.with_alpha(alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{gl_order, Partition};

    fn module(p: u64, parts: &[usize], side: Side) -> Arc<Module> {
        Module::new(p, Partition::new(parts.to_vec()).unwrap(), side).unwrap()
    }

    #[test]
    fn automorphism_group_orders() {
        let b = Budget::default();
        // |Aut(Z/9 ⊕ Z/3)| = 6·3·3·2
        assert_eq!(module_automorphisms(&module(3, &[2, 1], Side::Ring), &b).unwrap().len(), 108);
        assert_eq!(module_automorphisms(&module(3, &[2, 1], Side::Algebra), &b).unwrap().len(), 108);
        assert_eq!(module_automorphisms(&module(3, &[3], Side::Ring), &b).unwrap().len(), 18);
        assert_eq!(
            module_automorphisms(&module(3, &[1, 1, 1], Side::Algebra), &b).unwrap().len() as u128,
            gl_order(3, 3)
        );
        // |GL_2(Z/9)| = |GL_2(F_3)| · 3^4
        assert_eq!(module_automorphisms(&module(3, &[2, 2], Side::Ring), &b).unwrap().len(), 48 * 81);
    }

    #[test]
    fn algebra_side_multiplication_is_polynomial() {
        let v = module(3, &[2, 1], Side::Algebra);
        // (1 + T)·(2 + T) = 2 + 3T + T^2 ≡ 2 mod (3, T^2)
        assert_eq!(component_product(&v, 0, 0, 1 + 3, 2 + 3), 2);
        // v_2 ↦ T·v_1 is allowed (entry divisible by T)
        assert_eq!(allowed_entries(&v, 1, 0), vec![0, 3, 6]);
    }
}
