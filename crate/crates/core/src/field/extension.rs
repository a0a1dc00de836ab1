use std::sync::Arc;

use num_bigint::BigInt;

use super::{Domain, Field, FiniteField, PrimeField, Ring};
use crate::error::{Error, Result};
use crate::factor;
use crate::poly::Poly;

/// `F_{p^d} = F_p[z]/(m)` for a monic irreducible `m` of degree `d`.
/// Elements are coordinate vectors of length exactly `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    base: PrimeField,
    /// Monic modulus, constant term first, length `d + 1`.
    modulus: Arc<Vec<u64>>,
}

impl ExtensionField {
    pub fn new(modulus: Poly<PrimeField>) -> Result<Self> {
        let base = *modulus.field();
        if !modulus.is_monic() || modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::BadModulus(modulus.format_in("z")));
        }
        if !factor::is_irreducible(&modulus)? {
            return Err(Error::BadModulus(modulus.format_in("z")));
        }
        Ok(ExtensionField { base, modulus: Arc::new(modulus.into_coeffs()) })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The power-basis generator `z`.
    pub fn generator(&self) -> Vec<u64> {
        let mut c = vec![0u64; self.dim()];
        if self.dim() == 1 {
            // z = -m_0
            c[0] = (self.base.p() - self.modulus[0]) % self.base.p();
        } else {
            c[1] = 1;
        }
        c
    }

    pub fn from_prime(&self, a: u64) -> Vec<u64> {
        let mut c = vec![0u64; self.dim()];
        c[0] = a % self.base.p();
        c
    }

    fn to_poly(&self, a: &[u64]) -> Poly<PrimeField> {
        Poly::new(self.base, a.to_vec())
    }

    fn from_poly(&self, a: &Poly<PrimeField>) -> Vec<u64> {
        let mut c = a.coeffs().to_vec();
        c.resize(self.dim(), 0);
        c
    }
}

/// The deterministic `F_{p^d}`: the modulus is the first monic irreducible
/// of degree `d`, scanning lower coefficient vectors by increasing base-`p`
/// index (constant term as the least significant digit).
pub fn extension_field(p: u64, d: usize) -> Result<ExtensionField> {
    let base = PrimeField::new(p)?;
    if d == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    let mut index: u64 = 0;
    loop {
        let mut c = vec![0u64; d + 1];
        let mut n = index;
        for slot in c.iter_mut().take(d) {
            *slot = n % p;
            n /= p;
        }
        if n > 0 {
            return Err(Error::BadModulus(format!("no irreducible of degree {d} found")));
        }
        c[d] = 1;
        let m = Poly::new(base, c);
        if factor::is_irreducible(&m)? {
            return Ok(ExtensionField { base, modulus: Arc::new(m.into_coeffs()) });
        }
        index += 1;
    }
}

impl Ring for ExtensionField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }

    fn one(&self) -> Vec<u64> {
        self.from_prime(1)
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.base;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }

    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.base;
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        let f = &self.base;
        a.iter().map(|x| f.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.base.p();
        let d = self.dim();
        let m = &self.modulus;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c != 0 {
                for i in 0..d {
                    prod[k - d + i] = (prod[k - d + i] + (p - m[i]) * c) % p;
                }
            }
        }
        prod.truncate(d);
        prod
    }

    fn from_int(&self, n: i64) -> Vec<u64> {
        self.from_prime(self.base.from_int(n))
    }

    fn from_bigint(&self, n: &BigInt) -> Vec<u64> {
        self.from_prime(self.base.from_bigint(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.p()
    }

    fn format(&self, a: &Vec<u64>) -> String {
        self.to_poly(a).format_in("z")
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }

    fn needs_parens(&self, a: &Vec<u64>) -> bool {
        a.iter().filter(|&&x| x != 0).count() > 1
    }
}

impl Domain for ExtensionField {
    fn exact_div(&self, a: &Vec<u64>, b: &Vec<u64>) -> Option<Vec<u64>> {
        self.div(a, b)
    }
}

impl Field for ExtensionField {
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let m = Poly::new(self.base, self.modulus.to_vec());
        let (g, s, _) = self.to_poly(a).ext_gcd(&m).ok()?;
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.from_poly(&s.rem(&m).ok()?))
    }
}

impl FiniteField for ExtensionField {
    fn prime(&self) -> u64 {
        self.base.p()
    }

    fn degree(&self) -> usize {
        self.dim()
    }

    fn coords(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }

    fn from_coords(&self, c: &[u64]) -> Vec<u64> {
        let p = self.base.p();
        let mut v: Vec<u64> = c.iter().map(|x| x % p).collect();
        v.resize(self.dim(), 0);
        v
    }

    fn modulus(&self) -> Poly<PrimeField> {
        Poly::new(self.base, self.modulus.to_vec())
    }
}

/// A finite field `F` together with an embedding into a larger field `L`
/// of relative degree `rel_degree`.
#[derive(Clone, Debug)]
pub struct Overfield<F: FiniteField> {
    base: F,
    field: ExtensionField,
    rel_degree: usize,
    /// Powers of the image of the base generator.
    gen_powers: Vec<Vec<u64>>,
}

impl<F: FiniteField> Overfield<F> {
    /// Builds `L = F_{p^(k*m)}` (deterministic modulus) and embeds `F` via
    /// the smallest root of its modulus in `L`.
    pub fn new(base: &F, m: usize, seed: u64) -> Result<Self> {
        let k = base.degree();
        let field = extension_field(base.prime(), k * m)?;
        let modulus = base.modulus();
        let theta = if k == 1 {
            // modulus T - a; the generator is the prime-field element a
            field.from_prime(base.prime() - modulus.coeff(0) % base.prime())
        } else {
            let lifted = modulus.map(&field, |c| field.from_prime(*c));
            let roots = factor::roots(&lifted, seed)?;
            roots
                .into_iter()
                .next()
                .ok_or_else(|| Error::Verification("base modulus has no root in overfield".into()))?
        };
        let mut gen_powers = Vec::with_capacity(k);
        let mut acc = field.one();
        for _ in 0..k {
            gen_powers.push(acc.clone());
            acc = field.mul(&acc, &theta);
        }
        Ok(Overfield { base: base.clone(), field, rel_degree: m, gen_powers })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    pub fn rel_degree(&self) -> usize {
        self.rel_degree
    }

    pub fn embed(&self, a: &F::Elem) -> Vec<u64> {
        let l = &self.field;
        let c = self.base.coords(a);
        let mut acc = l.zero();
        for (ci, pw) in c.iter().zip(&self.gen_powers) {
            if *ci != 0 {
                acc = l.add(&acc, &l.mul(&l.from_prime(*ci), pw));
            }
        }
        acc
    }

    /// `x^q` with `q = |F|`.
    pub fn base_frobenius(&self, x: &Vec<u64>) -> Vec<u64> {
        self.field.frobenius_power(x, self.base.degree())
    }

    /// Smallest `e` dividing the relative degree such that every entry lies
    /// in the subfield of relative degree `e`.
    pub fn definition_degree(&self, xs: &[Vec<u64>]) -> usize {
        let k = self.base.degree();
        (1..=self.rel_degree)
            .filter(|e| self.rel_degree % e == 0)
            .find(|&e| xs.iter().all(|x| self.field.in_subfield(x, e * k)))
            .unwrap_or(self.rel_degree)
    }

    /// Whether `x` (lying in the subfield of relative degree `e`) is a
    /// square there.
    pub fn is_square_in_subfield(&self, x: &Vec<u64>, e: usize) -> bool {
        let l = &self.field;
        if l.is_zero(x) {
            return true;
        }
        let q = num_bigint::BigUint::from(self.base.prime()).pow((self.base.degree() * e) as u32);
        let exp = (q - 1u32) >> 1;
        l.is_one(&l.pow_big(x, &exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degree_one_is_prime_field() {
        let f = extension_field(3, 1).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.modulus(), Poly::x(PrimeField::new(3).unwrap()));
        assert_eq!(f.order(), 3u32.into());
    }

    #[test]
    fn first_irreducible_quadratic_mod_five() {
        let f = extension_field(5, 2).unwrap();
        assert_eq!(f.modulus(), Poly::from_ints(PrimeField::new(5).unwrap(), &[2, 0, 1]));
    }

    #[test]
    fn characteristic_two_rejected() {
        assert_eq!(extension_field(2, 3).unwrap_err(), Error::CharacteristicTwo);
    }

    #[test]
    fn frobenius_has_order_d() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, d) in [(3u64, 4usize), (5, 3), (7, 2), (11, 5)] {
            let f = extension_field(p, d).unwrap();
            for _ in 0..100 {
                let x = f.random_element(&mut rng);
                assert_eq!(f.frobenius_power(&x, d), x);
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_prime_field() {
        for (p, d) in [(3u64, 2usize), (3, 3), (3, 5), (5, 2), (5, 3), (5, 5), (7, 2), (7, 4), (11, 3)] {
            let f = extension_field(p, d).unwrap();
            let q = f.size().unwrap();
            assert!(q <= 3125 || p == 7);
            let mut fixed = 0;
            for i in 0..q {
                let x = f.element(i);
                let y = f.element((i * 7 + 3) % q);
                let fx = f.frobenius(&x);
                assert_eq!(f.frobenius(&f.mul(&x, &y)), f.mul(&fx, &f.frobenius(&y)));
                assert_eq!(f.frobenius(&f.add(&x, &y)), f.add(&fx, &f.frobenius(&y)));
                if fx == x {
                    fixed += 1;
                }
            }
            assert_eq!(fixed, p, "p={p} d={d}");
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = extension_field(7, 3).unwrap();
        for i in 1..343 {
            let x = f.element(i);
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
    }

    #[test]
    fn overfield_embedding_is_a_homomorphism() {
        let base = extension_field(3, 2).unwrap();
        let over = Overfield::new(&base, 3, 1).unwrap();
        assert_eq!(over.field().degree(), 6);
        let l = over.field();
        for i in 0..9 {
            for j in 0..9 {
                let (a, b) = (base.element(i), base.element(j));
                assert_eq!(over.embed(&base.mul(&a, &b)), l.mul(&over.embed(&a), &over.embed(&b)));
                assert_eq!(over.embed(&base.add(&a, &b)), l.add(&over.embed(&a), &over.embed(&b)));
                assert!(l.in_subfield(&over.embed(&a), 2));
            }
        }
    }
}
