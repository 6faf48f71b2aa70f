use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::arith::{is_prime, rational_reduce};
use super::partition::Partition;
use crate::error::{Error, Result};

/// Which of the two module families an object lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `U = Z/p^λ_1 ⊕ … ⊕ Z/p^λ_t`.
    Ring,
    /// `V = F_p[T]/(T^λ_1) ⊕ … ⊕ F_p[T]/(T^λ_t)`.
    Algebra,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Ring => Side::Algebra,
            Side::Algebra => Side::Ring,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Ring => "ring",
            Side::Algebra => "algebra",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "ring" => Ok(Side::Ring),
            "algebra" => Ok(Side::Algebra),
            _ => Err(Error::Precondition(format!("unknown side {s:?}"))),
        }
    }
}

/// The module `U` or `V` of a given shape.
///
/// Component `i` is stored as one residue `c_i < p^λ_i`. On the ring side this
/// is an element of `Z/p^λ_i`; on the algebra side its base-`p` digits are the
/// coefficients of `1, T, …, T^{λ_i-1}`. With this encoding multiplication by
/// `p` (ring) and by `T` (algebra) are the same map `c ↦ c·p mod p^λ_i`, the
/// canonical `Ω₁` generator of component `i` is `p^{λ_i-1}` on both sides, and
/// only addition and integer scaling differ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Module {
    p: u64,
    shape: Partition,
    side: Side,
    moduli: Vec<u64>,
    order: u64,
}

impl Module {
    pub fn new(p: u64, shape: Partition, side: Side) -> Result<Arc<Module>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let moduli: Vec<u64> = shape
            .parts()
            .iter()
            .map(|&l| p.checked_pow(l as u32))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Precondition("component modulus overflows u64".into()))?;
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .filter(|&o| o <= u32::MAX as u64)
            .ok_or_else(|| Error::Precondition(format!("module order {p}^{} is too large", shape.n())))?;
        Ok(Arc::new(Module { p, shape, side, moduli, order }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Number of cyclic components.
    pub fn t(&self) -> usize {
        self.shape.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// `p^n`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn with_side(&self, side: Side) -> Arc<Module> {
        Arc::new(Module { side, ..self.clone() })
    }

    #[inline]
    fn add_component(&self, i: usize, a: u64, b: u64) -> u64 {
        match self.side {
            Side::Ring => (a + b) % self.moduli[i],
            Side::Algebra => {
                let p = self.p;
                let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
                while a > 0 || b > 0 {
                    out += ((a % p + b % p) % p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                out
            }
        }
    }

    #[inline]
    fn scale_component(&self, i: usize, c: u64, r: u64) -> u64 {
        match self.side {
            Side::Ring => ((c as u128 * r as u128) % self.moduli[i] as u128) as u64,
            Side::Algebra => {
                let p = self.p;
                let (mut c, mut out, mut place) = (c, 0, 1);
                while c > 0 {
                    out += (c % p) * (r % p) % p * place;
                    c /= p;
                    place *= p;
                }
                out
            }
        }
    }

    pub fn add_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        (0..a.len()).map(|i| self.add_component(i, a[i], b[i])).collect()
    }

    pub fn add_into(&self, acc: &mut [u64], b: &[u64]) {
        for i in 0..acc.len() {
            acc[i] = self.add_component(i, acc[i], b[i]);
        }
    }

    pub fn neg_coords(&self, a: &[u64]) -> Vec<u64> {
        self.scale_int_coords(a, -1)
    }

    /// Multiplication by an integer in the additive group.
    pub fn scale_int_coords(&self, a: &[u64], k: i64) -> Vec<u64> {
        let r = self.int_residues(k);
        self.scale_residues(a, &r)
    }

    /// Multiply component `i` by the ring element encoded in `residues[i]`
    /// (a residue mod `p^λ_i` on the ring side, mod `p` on the algebra side).
    pub fn scale_residues(&self, a: &[u64], residues: &[u64]) -> Vec<u64> {
        (0..a.len()).map(|i| self.scale_component(i, a[i], residues[i])).collect()
    }

    fn scalar_moduli(&self) -> Vec<u64> {
        match self.side {
            Side::Ring => self.moduli.clone(),
            Side::Algebra => vec![self.p; self.t()],
        }
    }

    pub fn int_residues(&self, k: i64) -> Vec<u64> {
        self.scalar_moduli().iter().map(|&m| k.rem_euclid(m as i64) as u64).collect()
    }

    /// Per-component residues of the rational `num/den`.
    pub fn rational_residues(&self, num: i64, den: i64) -> Result<Vec<u64>> {
        self.scalar_moduli().iter().map(|&m| rational_reduce(num, den, m)).collect()
    }

    /// `p·x` on the ring side, `T·x` on the algebra side.
    pub fn uniformizer(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.moduli).map(|(&c, &m)| c * self.p % m).collect()
    }

    /// Image of `x` in `Ū` resp. `V̄`: each coordinate mod `p`.
    pub fn bar(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&c| c % self.p).collect()
    }

    /// Coordinates of the canonical `Ω₁` generator `p^{λ_i-1}u_i` / `T^{λ_i-1}v_i`.
    pub fn omega_generator(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.t()];
        v[i] = self.moduli[i] / self.p;
        v
    }

    /// Element `Σ s_l · ω_l` of `Ω₁`.
    pub fn from_omega_coords(&self, s: &[u64]) -> Vec<u64> {
        s.iter().zip(&self.moduli).map(|(&x, &m)| (x % self.p) * (m / self.p)).collect()
    }

    /// Coefficients in the `Ω₁` basis, if `x ∈ Ω₁`.
    pub fn omega_coords(&self, a: &[u64]) -> Option<Vec<u64>> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| {
                let g = m / self.p;
                (c % g == 0).then_some(c / g)
            })
            .collect()
    }

    pub fn in_omega1(&self, a: &[u64]) -> bool {
        self.uniformizer(a).iter().all(|&x| x == 0)
    }

    pub fn in_mho1(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c % self.p == 0)
    }

    /// Least `p^k` with `p^k · x = 0` in the additive group.
    pub fn additive_order(&self, a: &[u64]) -> u64 {
        let mut x = a.to_vec();
        let mut ord = 1;
        while x.iter().any(|&c| c != 0) {
            x = self.scale_int_coords(&x, self.p as i64);
            ord *= self.p;
        }
        ord
    }

    /// Lexicographic index of a coordinate vector, first component most significant.
    pub fn index_of(&self, a: &[u64]) -> usize {
        let mut idx = 0u64;
        for (&c, &m) in a.iter().zip(&self.moduli) {
            idx = idx * m + c;
        }
        idx as usize
    }

    pub fn coords_of(&self, idx: usize) -> Vec<u64> {
        let mut idx = idx as u64;
        let mut out = vec![0; self.t()];
        for i in (0..self.t()).rev() {
            out[i] = idx % self.moduli[i];
            idx /= self.moduli[i];
        }
        out
    }

    pub fn zero(self: &Arc<Self>) -> MixedVector {
        MixedVector { module: self.clone(), coords: vec![0; self.t()] }
    }

    /// The module generator `u_i` / `v_i`.
    pub fn basis(self: &Arc<Self>, i: usize) -> MixedVector {
        let mut coords = vec![0; self.t()];
        coords[i] = 1;
        MixedVector { module: self.clone(), coords }
    }

    pub fn vector(self: &Arc<Self>, coords: Vec<u64>) -> Result<MixedVector> {
        if coords.len() != self.t() || coords.iter().zip(&self.moduli).any(|(&c, &m)| c >= m) {
            return Err(Error::Mismatch(format!("coordinates {coords:?} for moduli {:?}", self.moduli)));
        }
        Ok(MixedVector { module: self.clone(), coords })
    }

    pub(crate) fn vector_unchecked(self: &Arc<Self>, coords: Vec<u64>) -> MixedVector {
        MixedVector { module: self.clone(), coords }
    }

    /// All `p^n` elements in lexicographic order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = MixedVector> + '_ {
        (0..self.order as usize).map(move |i| self.vector_unchecked(self.coords_of(i)))
    }

    /// Canonical `F_p`-basis `{p^{λ_i-1}u_i}` resp. `{T^{λ_i-1}v_i}` of `Ω₁`.
    pub fn omega1_basis(self: &Arc<Self>) -> Vec<MixedVector> {
        (0..self.t()).map(|i| self.vector_unchecked(self.omega_generator(i))).collect()
    }
}

/// An element of `U` or `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedVector {
    module: Arc<Module>,
    coords: Vec<u64>,
}

impl MixedVector {
    pub fn module(&self) -> &Arc<Module> {
        &self.module
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn index(&self) -> usize {
        self.module.index_of(&self.coords)
    }

    pub fn add(&self, other: &MixedVector) -> Result<MixedVector> {
        if self.module != other.module {
            return Err(Error::Mismatch("adding vectors from different modules".into()));
        }
        Ok(self.module.vector_unchecked(self.module.add_coords(&self.coords, &other.coords)))
    }

    pub fn neg(&self) -> MixedVector {
        self.module.vector_unchecked(self.module.neg_coords(&self.coords))
    }

    pub fn scale(&self, k: i64) -> MixedVector {
        self.module.vector_unchecked(self.module.scale_int_coords(&self.coords, k))
    }

    pub fn additive_order(&self) -> u64 {
        self.module.additive_order(&self.coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn module(p: u64, parts: &[usize], side: Side) -> Arc<Module> {
        Module::new(p, Partition::new(parts.to_vec()).unwrap(), side).unwrap()
    }

    #[test]
    fn ring_and_algebra_addition_differ_only_by_carries() {
        let u = module(3, &[2, 1], Side::Ring);
        let v = module(3, &[2, 1], Side::Algebra);
        // 2 + 2 in Z/9 is 4; (2) + (2) in F_3[T]/(T^2) is the constant 1.
        assert_eq!(u.add_coords(&[2, 0], &[2, 0]), vec![4, 0]);
        assert_eq!(v.add_coords(&[2, 0], &[2, 0]), vec![1, 0]);
        // T·v_1 and 3·u_1 share the encoding.
        assert_eq!(u.uniformizer(&[1, 1]), vec![3, 0]);
        assert_eq!(v.uniformizer(&[1, 1]), vec![3, 0]);
    }

    #[test]
    fn additive_orders() {
        let u = module(3, &[2, 1], Side::Ring);
        let v = module(3, &[2, 1], Side::Algebra);
        assert_eq!(u.additive_order(&[1, 0]), 9);
        assert_eq!(u.additive_order(&[3, 1]), 3);
        assert_eq!(v.additive_order(&[1, 0]), 3);
        assert_eq!(u.additive_order(&[0, 0]), 1);
    }

    #[test]
    fn omega_and_mho_membership() {
        let u = module(3, &[2, 1], Side::Ring);
        assert_eq!(
            u.omega1_basis().iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>(),
            vec![vec![3, 0], vec![0, 1]]
        );
        let omega: Vec<usize> = (0..27).filter(|&i| u.in_omega1(&u.coords_of(i))).collect();
        assert_eq!(omega.len(), 9);
        let mho: Vec<usize> = (0..27).filter(|&i| u.in_mho1(&u.coords_of(i))).collect();
        assert_eq!(mho.len(), 3);

        let ones = module(3, &[1, 1, 1], Side::Ring);
        assert!(ones.elements().all(|x| ones.in_omega1(x.coords())));

        let cyc = module(3, &[3], Side::Ring);
        let omega: Vec<u64> = cyc.elements().filter(|x| cyc.in_omega1(x.coords())).map(|x| x.coords()[0]).collect();
        assert_eq!(omega, vec![0, 9, 18]);
    }

    #[test]
    fn index_round_trip_and_order() {
        let u = module(3, &[2, 1], Side::Ring);
        for i in 0..27 {
            assert_eq!(u.index_of(&u.coords_of(i)), i);
        }
        assert_eq!(u.coords_of(4), vec![1, 1]);
        assert_eq!(u.elements().count(), 27);
    }

    #[test]
    fn rational_scaling() {
        let u = module(3, &[2, 1], Side::Ring);
        let r = u.rational_residues(1, 2).unwrap();
        assert_eq!(r, vec![5, 2]);
        assert_eq!(u.scale_residues(&[2, 2], &r), vec![1, 1]);
        let v = module(3, &[2, 1], Side::Algebra);
        assert_eq!(v.rational_residues(1, 2).unwrap(), vec![2, 2]);
        // (1 + 2T) * 2 = 2 + T, encoded 2 + 3 = 5.
        assert_eq!(v.scale_residues(&[7, 0], &[2, 2]), vec![5, 0]);
        assert!(u.rational_residues(1, 3).is_err());
    }
}
