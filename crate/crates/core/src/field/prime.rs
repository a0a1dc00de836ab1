use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Domain, Field, FiniteField, Ring};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Trial division; adequate for the word-sized primes used here.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field `F_p` for an odd prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_odd_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn from_int(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r = r.to_i64().expect("residue fits");
        self.reduce_i64(r)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn needs_parens(&self, _a: &u64) -> bool {
        false
    }
}

impl Domain for PrimeField {
    fn exact_div(&self, a: &u64, b: &u64) -> Option<u64> {
        self.div(a, b)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(self.reduce_i64(s0))
    }
}

impl FiniteField for PrimeField {
    fn prime(&self) -> u64 {
        self.p
    }

    fn degree(&self) -> usize {
        1
    }

    fn coords(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }

    fn from_coords(&self, c: &[u64]) -> u64 {
        c.first().copied().unwrap_or(0) % self.p
    }

    fn modulus(&self) -> Poly<PrimeField> {
        Poly::x(*self)
    }

    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }

    fn is_square(&self, a: &u64) -> bool {
        *a == 0 || self.pow(a, (self.p - 1) / 2) == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_two_and_composites() {
        assert_eq!(PrimeField::new(2), Err(Error::CharacteristicTwo));
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert!(PrimeField::new(97).is_ok());
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn bigint_reduction_is_canonical() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_bigint(&BigInt::from(-1)), 6);
        assert_eq!(f.from_int(-15), 6);
        assert!(f.is_square(&2));
        assert!(!f.is_square(&3));
    }
}
