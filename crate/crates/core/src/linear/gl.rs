use super::matrix::FpMatrix;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// `|GL_t(F_p)| = Π_{i<t} (p^t - p^i)`.
pub fn gl_order(t: usize, p: u64) -> u128 {
    let q = (p as u128).pow(t as u32);
    (0..t).map(|i| q - (p as u128).pow(i as u32)).product()
}

/// Every invertible `t x t` matrix over `F_p`, once each, in row-major
/// lexicographic order of entries.
#[derive(Clone, Debug)]
pub struct GlEnumerator {
    t: usize,
    p: u64,
    digits: Vec<u64>,
    done: bool,
}

pub fn gl_enumerate(t: usize, p: u64, budget: &Budget) -> Result<GlEnumerator> {
    if !super::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Budget::check(&format!("GL_{t}(F_{p}) enumeration"), gl_order(t, p), budget.gl_order)?;
    Ok(GlEnumerator { t, p, digits: vec![0; t * t], done: false })
}

impl GlEnumerator {
    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.p {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }
}

impl Iterator for GlEnumerator {
    type Item = FpMatrix;

    fn next(&mut self) -> Option<FpMatrix> {
        while !self.done {
            let m = FpMatrix::new(self.p, self.t, self.t, self.digits.clone()).unwrap();
            self.advance();
            if m.is_invertible() {
                return Some(m);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let b = Budget::default();
        assert_eq!(gl_enumerate(1, 3, &b).unwrap().count(), 2);
        assert_eq!(gl_enumerate(2, 2, &b).unwrap().count(), 6);
        assert_eq!(gl_enumerate(3, 3, &b).unwrap().count(), 11232);
        assert_eq!(gl_order(3, 3), 26 * 24 * 18);
    }

    #[test]
    fn counts_match_formula() {
        let b = Budget::default();
        for (t, p) in [(1, 2), (1, 5), (2, 3), (2, 5), (3, 2), (2, 7)] {
            let all: Vec<FpMatrix> = gl_enumerate(t, p, &b).unwrap().collect();
            assert_eq!(all.len() as u128, gl_order(t, p), "t={t} p={p}");
            assert!(all.windows(2).all(|w| w[0] < w[1]), "strictly increasing, hence distinct");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let b = Budget { gl_order: 1000, ..Budget::default() };
        assert!(matches!(gl_enumerate(3, 3, &b), Err(Error::Budget { .. })));
        assert!(matches!(gl_enumerate(2, 4, &b), Err(Error::NotPrime(4))));
    }
}
