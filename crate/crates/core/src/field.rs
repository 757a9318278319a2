//! Arithmetic in the prime field `F_p`.

use crate::error::{Error, Result};

/// Default characteristic used throughout the corpus.
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// The prime field `F_p`, with `p < 2^31` so that products fit in `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

/// A residue modulo the field characteristic, always reduced to `0..p`.
pub type FieldElement = u32;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduce an arbitrary signed integer into the field.
    pub fn from_i64(&self, v: i64) -> FieldElement {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        (v % self.p as u64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(&self, a: FieldElement) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: FieldElement, mut e: u64) -> FieldElement {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // extended Euclid on i64
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        t.rem_euclid(self.p as i64) as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField {
            p: DEFAULT_CHARACTERISTIC,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert_eq!(PrimeField::new(32001), Err(Error::NotPrime(32001)));
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
    }

    #[test]
    fn signed_representatives() {
        let f = PrimeField::default();
        assert_eq!(f.from_i64(-1), 32002);
        assert_eq!(f.to_signed(32002), -1);
        assert_eq!(f.to_signed(5), 5);
    }

    proptest! {
        #[test]
        fn inverses(a in 1u32..32003) {
            let f = PrimeField::default();
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }

        #[test]
        fn frobenius_is_additive(a in 0u32..101, b in 0u32..101) {
            let f = PrimeField::new(101).unwrap();
            let lhs = f.pow(f.add(a, b), 101);
            let rhs = f.add(f.pow(a, 101), f.pow(b, 101));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn distributive(a in 0u32..32003, b in 0u32..32003, c in 0u32..32003) {
            let f = PrimeField::default();
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
        }
    }
}
