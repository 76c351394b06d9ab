//! Exact arithmetic in the prime field GF(p).
//!
//! Elements are least nonnegative residues stored as plain `u64` values;
//! every operation returns a reduced result, so downstream matrix entries
//! are deterministic. The modulus is restricted to `p < 2^31` so that a
//! product plus an accumulator always fits in a `u64`.

use crate::error::{Error, Result};

/// Default modulus used throughout the experiments.
pub const DEFAULT_PRIME: u64 = 65521;

/// A prime field GF(p), `2 <= p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Validates primality and range.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// The field with the default modulus 65521.
    pub fn default_field() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Maps a signed integer to its least nonnegative residue.
    pub fn from_i64(&self, x: i64) -> u64 {
        let r = x.rem_euclid(self.p as i64);
        r as u64
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
        debug_assert!(a < self.p && b < self.p);
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

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_prime() {
        assert!(is_prime(DEFAULT_PRIME));
        PrimeField::new(DEFAULT_PRIME).unwrap();
    }

    #[test]
    fn rejects_composites_and_range() {
        assert!(matches!(PrimeField::new(65520), Err(Error::NotPrime(_))));
        assert!(matches!(PrimeField::new(1), Err(Error::ModulusOutOfRange(_))));
        assert!(matches!(
            PrimeField::new(1 << 31),
            Err(Error::ModulusOutOfRange(_))
        ));
    }

    #[test]
    fn minus_one_squared() {
        let f = PrimeField::default_field();
        assert_eq!(f.mul(65520, 65520), 1);
    }

    #[test]
    fn one_is_identity() {
        let f = PrimeField::default_field();
        for a in [0u64, 1, 17, 65520] {
            assert_eq!(f.mul(1, a), a);
        }
    }

    #[test]
    fn small_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3).unwrap(), 5);
    }

    #[test]
    fn inverse_of_two() {
        let f = PrimeField::default_field();
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.inv(2).unwrap(), 32761);
        assert_eq!(f.mul(2, 32761), 1);
    }

    #[test]
    fn inverse_of_zero_errors() {
        let f = PrimeField::default_field();
        assert!(matches!(f.inv(0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn random_inverses() {
        use rand::{Rng, SeedableRng};
        let f = PrimeField::default_field();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let a = rng.gen_range(1..f.modulus());
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        use rand::{Rng, SeedableRng};
        let f = PrimeField::default_field();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let a = rng.gen_range(0..f.modulus());
            let b = rng.gen_range(0..f.modulus());
            let c = rng.gen_range(0..f.modulus());
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}
