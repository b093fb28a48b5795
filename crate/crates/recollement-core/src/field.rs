//! Arithmetic in the prime field `F_p`.
//!
//! Elements are canonical representatives in `[0, p)` stored as `u64`.
//! The modulus is capped at `2^31` so that products fit in a `u64`.

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    p: u64,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: DEFAULT_PRIME }
    }
}

impl Field {
    /// A prime field with the given modulus. Primality is checked.
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero (callers check).
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Canonical representative of a signed integer.
    pub fn from_i64(&self, n: i64) -> u64 {
        let m = self.p as i64;
        let r = ((n % m) + m) % m;
        r as u64
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_prime() {
        assert!(is_prime(DEFAULT_PRIME));
        Field::new(DEFAULT_PRIME).unwrap();
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(Field::new(32004), Err(Error::NotPrime(32004)));
        assert_eq!(Field::new(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn signed_normalization() {
        let f = Field::default();
        assert_eq!(f.from_i64(-1), DEFAULT_PRIME - 1);
        assert_eq!(f.from_i64(-(DEFAULT_PRIME as i64)), 0);
    }
}
