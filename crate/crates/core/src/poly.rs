//! Dense univariate polynomials over a coefficient context.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::field::{Domain, Field, Ring};

/// A dense polynomial, constant term first, with no trailing zeros.
/// The zero polynomial has an empty coefficient list and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Ring> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Ring> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| field.from_int(n)).collect();
        Poly::new(field, c)
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Poly::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// The indeterminate `T`.
    pub fn x(field: F) -> Self {
        Poly::monomial(field.clone(), field.one(), 1)
    }

    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of `T^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_coeff(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn same_context(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "{:?} vs {:?}",
                self.field, other.field
            )))
        }
    }

    fn assert_context(&self, other: &Self) {
        if let Err(e) = self.same_context(other) {
            panic!("{e}");
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(g(T))`.
    pub fn compose(&self, g: &Self) -> Self {
        self.assert_context(g);
        let f = &self.field;
        self.coeffs.iter().rev().fold(Poly::zero(f.clone()), |acc, c| {
            &(&acc * g) + &Poly::constant(f.clone(), c.clone())
        })
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
            .collect();
        Poly::new(f.clone(), coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies a coefficient map into another context.
    pub fn map<G: Ring>(&self, target: &G, mut f: impl FnMut(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target.clone(), self.coeffs.iter().map(&mut f).collect())
    }

    /// Text form in the variable `var`, highest degree first.
    pub fn format_in(&self, var: &str) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mut s = f.format(c);
            let negative = s.starts_with('-') && !f.needs_parens(c);
            if negative {
                s.remove(0);
            }
            if !out.is_empty() {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let unit = s == "1";
            let body = if i == 0 {
                if f.needs_parens(c) && !out.is_empty() {
                    format!("({s})")
                } else {
                    s
                }
            } else {
                let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                if unit {
                    mono
                } else if f.needs_parens(c) {
                    format!("({s})*{mono}")
                } else {
                    format!("{s}*{mono}")
                }
            };
            out.push_str(&body);
        }
        out
    }
}

impl<F: Field> Poly<F> {
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let inv = self
            .field
            .inv(&self.leading_coeff())
            .ok_or(Error::DivisionByZero)?;
        Ok(self.scale(&inv))
    }

    pub fn div_rem(&self, b: &Self) -> Result<(Self, Self)> {
        self.same_context(b)?;
        let f = &self.field;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = f.inv(&b.leading_coeff()).ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + db], &lc_inv);
            if !f.is_zero(&c) {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[k + j] = f.sub(&r[k + j], &f.mul(&c, bj));
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((Poly::new(f.clone(), q), Poly::new(f.clone(), r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.div_rem(b)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, b: &Self) -> Result<Self> {
        self.same_context(b)?;
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Returns `(g, s, t)` with `s*self + t*b = g`, `g` monic.
    pub fn ext_gcd(&self, b: &Self) -> Result<(Self, Self, Self)> {
        self.same_context(b)?;
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(f.clone()), Poly::zero(f.clone()));
        let (mut t0, mut t1) = (Poly::zero(f.clone()), Poly::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = f.inv(&r0.leading_coeff()).ok_or(Error::DivisionByZero)?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    pub fn mul_mod(&self, b: &Self, m: &Self) -> Result<Self> {
        (self * b).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        let mut acc = Poly::one(self.field.clone()).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m)?;
            if e.bit(i) {
                acc = acc.mul_mod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// `gcd(f, f') = 1`.
    pub fn is_separable(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative())?.degree() == Some(0))
    }

    /// Exact division; fails when `b` does not divide `self`.
    pub fn exact_div(&self, b: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Verification("inexact polynomial division".into()))
        }
    }
}

impl<F: Ring> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.format_in("T"))
    }
}

impl<F: Ring> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("T"))
    }
}

impl<F: Ring> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        self.assert_context(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f.clone(), c)
    }
}

impl<F: Ring> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self.assert_context(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f.clone(), c)
    }
}

impl<F: Ring> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        self.assert_context(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f.clone());
        }
        let mut c = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f.clone(), c)
    }
}

impl<F: Ring> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

/// The polynomial ring `F[t]` as a coefficient domain in its own right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing<F: Field> {
    pub base: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(base: F) -> Self {
        PolyRing { base }
    }
}

impl<F: Field> Ring for PolyRing<F> {
    type Elem = Poly<F>;

    fn zero(&self) -> Poly<F> {
        Poly::zero(self.base.clone())
    }
    fn one(&self) -> Poly<F> {
        Poly::one(self.base.clone())
    }
    fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a + b
    }
    fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a - b
    }
    fn neg(&self, a: &Poly<F>) -> Poly<F> {
        -a
    }
    fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a * b
    }
    fn from_int(&self, n: i64) -> Poly<F> {
        Poly::constant(self.base.clone(), self.base.from_int(n))
    }
    fn from_bigint(&self, n: &BigInt) -> Poly<F> {
        Poly::constant(self.base.clone(), self.base.from_bigint(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn format(&self, a: &Poly<F>) -> String {
        a.format_in("t")
    }
    fn is_zero(&self, a: &Poly<F>) -> bool {
        a.is_zero()
    }
}

impl<F: Field> Domain for PolyRing<F> {
    fn exact_div(&self, a: &Poly<F>, b: &Poly<F>) -> Option<Poly<F>> {
        let (q, r) = a.div_rem(b).ok()?;
        r.is_zero().then_some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_ints(Rationals, c)
    }

    #[test]
    fn gcd_of_shared_root() {
        // gcd(T^2 - 1, T - 1) = T - 1
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])).unwrap(), q(&[-1, 1]));
    }

    #[test]
    fn derivative_power_rule() {
        let mut c = vec![0i64; 9];
        c[8] = 1;
        c[4] = 42;
        let mut d = vec![0i64; 8];
        d[7] = 8;
        d[3] = 168;
        assert_eq!(q(&c).derivative(), q(&d));
    }

    #[test]
    fn compose_binomial() {
        assert_eq!(q(&[0, 0, 1]).compose(&q(&[1, 1])), q(&[1, 2, 1]));
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        let z = q(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(q(&[3]).degree(), Some(0));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q(&[1, 1]).div_rem(&q(&[])), Err(Error::DivisionByZero));
        assert_eq!(q(&[]).is_separable(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn mismatched_contexts_are_rejected() {
        let a = Poly::from_ints(PrimeField::new(5).unwrap(), &[1, 1]);
        let b = Poly::from_ints(PrimeField::new(7).unwrap(), &[1, 1]);
        assert!(matches!(a.div_rem(&b), Err(Error::ContextMismatch(_))));
        assert!(matches!(a.gcd(&b), Err(Error::ContextMismatch(_))));
    }

    #[test]
    #[should_panic(expected = "context mismatch")]
    fn operator_on_mismatched_contexts_panics() {
        let a = Poly::from_ints(PrimeField::new(5).unwrap(), &[1, 1]);
        let b = Poly::from_ints(PrimeField::new(7).unwrap(), &[1, 1]);
        let _ = &a + &b;
    }

    #[test]
    fn separability() {
        let mut c = vec![0i64; 9];
        c[8] = 1;
        c[4] = 1;
        assert!(!q(&c).is_separable().unwrap());
        assert!(q(&[1197, 1152, 168, 0, 42, 0, 0, 0, 1]).is_separable().unwrap());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = q(&[1, 0, 1, 3]);
        let b = q(&[-2, 1, 1]);
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn formatting() {
        assert_eq!(q(&[1197, -3, 0, 0, 42, 0, 0, 0, 1]).to_string(), "T^8 + 42*T^4 - 3*T + 1197");
        assert_eq!(q(&[-1, 0, -1]).to_string(), "-T^2 - 1");
    }
}
