use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted as a modulus.
pub const MAX_PRIME: u32 = 65521;

/// The prime field `F_p`. Elements are `u32` values in `0..p`.
///
/// Products of two reduced elements fit in a `u32`, which keeps every inner
/// loop in 32/64-bit integer arithmetic without overflow checks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
    // floor(2^32 / p), used for Barrett reduction of values below 2^32
    barrett: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Self {
            p,
            barrett: (1u64 << 32) / p as u64,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduces any value below `2^32`.
    #[inline(always)]
    pub fn reduce(&self, x: u32) -> u32 {
        let q = ((x as u64 * self.barrett) >> 32) as u32;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    pub fn reduce_u64(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    pub fn from_i64(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a * b)
    }

    /// `a + b * c`, all reduced.
    #[inline(always)]
    pub fn mul_add(&self, a: u32, b: u32, c: u32) -> u32 {
        // a < 2^16 and b*c < 2^32 - 2^17 + 1, so the sum stays below 2^32
        self.reduce(a + b * c)
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.from_i64(t0)
    }

    /// Reduces an integer count (e.g. a group index) into the field.
    pub fn from_usize(&self, n: usize) -> u32 {
        (n as u64 % self.p as u64) as u32
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n` with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_bounds() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(65537).is_err());
        assert!(PrimeField::new(65521).is_ok());
    }

    #[test]
    fn arithmetic_matches_naive() {
        for p in [2u32, 3, 5, 7, 251, 65521] {
            let f = PrimeField::new(p).unwrap();
            for a in (0..p).step_by((p as usize / 17).max(1)) {
                for b in (0..p).step_by((p as usize / 13).max(1)) {
                    assert_eq!(f.mul(a, b) as u64, (a as u64 * b as u64) % p as u64);
                    assert_eq!(f.add(a, b), (a + b) % p);
                    assert_eq!(f.add(f.sub(a, b), b), a);
                    if a != 0 {
                        assert_eq!(f.mul(a, f.inv(a)), 1);
                    }
                }
            }
            assert_eq!(f.reduce(u32::MAX), (u32::MAX as u64 % p as u64) as u32);
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(72), vec![(2, 3), (3, 2)]);
        assert_eq!(factorize(1), vec![]);
    }
}
