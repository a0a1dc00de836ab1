//! Exact coefficient domains.
//!
//! A context value (`Rationals`, `PrimeField`, `FunctionField`,
//! `ExtensionField`, ...) owns all arithmetic; elements are plain values
//! that only make sense together with the context that produced them.
//! Contexts are cheap to clone and immutable, so they can be shared
//! across threads freely.

mod extension;
mod function;
mod prime;
mod rational;

pub use extension::{extension_field, ExtensionField, Overfield};
pub use function::{FunctionField, RatFunc};
pub use prime::{is_odd_prime, PrimeField};
pub use rational::{Integers, Rationals};

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::Rng;

use crate::error::Result;
use crate::linalg::{bareiss_det, Matrix};
use crate::poly::Poly;

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Zero for characteristic 0.
    fn characteristic(&self) -> u64;
    /// Canonical text form of an element.
    fn format(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Whether the text form needs parentheses when used as a factor.
    fn needs_parens(&self, a: &Self::Elem) -> bool {
        let s = self.format(a);
        s.contains('+') || s[1..].contains('-') || s.contains('/')
    }
}

/// An integral domain with exact division.
pub trait Domain: Ring {
    /// `a / b` when `b` divides `a`, otherwise `None`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

pub trait Field: Domain {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// The indeterminate `t` of a rational function field, if any.
    fn function_variable(&self) -> Option<Self::Elem> {
        None
    }

    /// Determinant of a square matrix. Fields with expensive normalization
    /// override this with a fraction-free route over a smaller ring.
    fn det(&self, m: &Matrix<Self>) -> Result<Self::Elem> {
        bareiss_det(m)
    }
}

/// A finite field `F_q`, `q = p^k`, presented as `F_p[z]/(m)`.
pub trait FiniteField: Field {
    fn prime(&self) -> u64;
    /// Degree `k` over the prime field.
    fn degree(&self) -> usize;
    /// Coordinates over `F_p` in the power basis `1, z, ..., z^(k-1)`.
    fn coords(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_coords(&self, c: &[u64]) -> Self::Elem;
    /// Minimal polynomial of the power-basis generator over `F_p`.
    fn modulus(&self) -> Poly<PrimeField>;

    fn order(&self) -> BigUint {
        BigUint::from(self.prime()).pow(self.degree() as u32)
    }

    /// `a^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.prime())
    }

    /// `a^(p^n)`.
    fn frobenius_power(&self, a: &Self::Elem, n: usize) -> Self::Elem {
        let mut x = a.clone();
        for _ in 0..n {
            x = self.frobenius(&x);
        }
        x
    }

    /// The element whose coordinates are the base-`p` digits of `index`.
    fn element(&self, mut index: u64) -> Self::Elem {
        let p = self.prime();
        let mut c = vec![0u64; self.degree()];
        for slot in c.iter_mut() {
            *slot = index % p;
            index /= p;
        }
        self.from_coords(&c)
    }

    fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        let p = self.prime();
        let c: Vec<u64> = (0..self.degree()).map(|_| rng.gen_range(0..p)).collect();
        self.from_coords(&c)
    }

    /// Lexicographic order on coordinate vectors, constant term first.
    fn cmp_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        self.coords(a).cmp(&self.coords(b))
    }

    fn is_square(&self, a: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let e = (self.order() - BigUint::one()) >> 1;
        self.is_one(&self.pow_big(a, &e))
    }

    /// Number of elements when it fits in a `u64`.
    fn size(&self) -> Option<u64> {
        let o = self.order();
        if o.bits() < 64 {
            o.iter_u64_digits().next().or(Some(0))
        } else {
            None
        }
    }

    /// Whether `a` lies in the subfield of order `p^k`.
    fn in_subfield(&self, a: &Self::Elem, k: usize) -> bool {
        self.frobenius_power(a, k) == *a
    }
}

/// Lexicographic comparison of element lists by coordinates.
pub fn cmp_elem_lists<F: FiniteField>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match field.cmp_elems(x, y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}
