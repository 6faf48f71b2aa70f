use num_integer::Integer;

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `base^exp`, or `None` on overflow.
pub fn pow_checked(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    let m = m as i64;
    if m == 1 {
        return Some(0);
    }
    let a = a.rem_euclid(m);
    let eg = a.extended_gcd(&m);
    if eg.gcd != 1 {
        return None;
    }
    Some(eg.x.rem_euclid(m) as u64)
}

/// Reduce the rational `num / den` into `Z/modulus`. Fails when `den` shares a
/// factor with the modulus, which for BCH coefficients signals a nilpotency
/// class that is not below `p`.
pub fn rational_reduce(num: i64, den: i64, modulus: u64) -> Result<u64> {
    if den == 0 {
        return Err(Error::NonInvertible { den, modulus });
    }
    let inv = mod_inverse(den, modulus).ok_or(Error::NonInvertible { den, modulus })?;
    let m = modulus as i128;
    let r = (num as i128).rem_euclid(m) * inv as i128 % m;
    Ok(r as u64)
}
