//! Factorization of univariate polynomials over finite fields:
//! squarefree split, distinct-degree split, then Cantor–Zassenhaus
//! equal-degree splitting driven by a seeded ChaCha stream.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{cmp_elem_lists, FiniteField};
use crate::poly::Poly;

pub const DEFAULT_SEED: u64 = 0x0c7a_d5ee_d;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: FiniteField> {
    pub unit: F::Elem,
    /// Monic irreducible factors with multiplicities, sorted by degree then
    /// by coefficient list.
    pub factors: Vec<(Poly<F>, usize)>,
    /// Seed of the equal-degree splitting stream.
    pub seed: u64,
}

impl<F: FiniteField> Factorization<F> {
    /// Degrees of the irreducible factors, repeated by multiplicity.
    pub fn degree_type(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, m)| std::iter::repeat(g.degree().unwrap_or(0)).take(*m))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn expand(&self, field: &F) -> Poly<F> {
        let mut acc = Poly::constant(field.clone(), self.unit.clone());
        for (g, m) in &self.factors {
            acc = &acc * &g.pow(*m as u64);
        }
        acc
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible<F: FiniteField>(f: &Poly<F>) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let field = f.field().clone();
    let q = field.order();
    let x = Poly::x(field.clone());
    // powers[i] = x^(q^i) mod f
    let mut powers = vec![x.rem(f)?];
    for i in 1..=n {
        let next = powers[i - 1].pow_mod(&q, f)?;
        powers.push(next);
    }
    if powers[n] != x.rem(f)? {
        return Ok(false);
    }
    for r in prime_divisors(n) {
        let h = &powers[n / r] - &x;
        if f.gcd(&h)?.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `c(x)^(1/p)` for a polynomial whose exponents are all multiples of `p`.
fn pth_root<F: FiniteField>(c: &Poly<F>) -> Poly<F> {
    let field = c.field();
    let p = field.prime() as usize;
    let k = field.degree();
    let coeffs = c
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| field.frobenius_power(a, k - 1))
        .collect();
    Poly::new(field.clone(), coeffs)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with each
/// `g` squarefree, pairwise coprime, and `f = prod g^m`.
pub fn squarefree_decomposition<F: FiniteField>(f: &Poly<F>) -> Result<Vec<(Poly<F>, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.field().prime() as usize;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c)?;
        let z = w.exact_div(&y)?;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w)?;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = pth_root(&c);
        for (g, m) in squarefree_decomposition(&root)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Distinct-degree split of a monic squarefree polynomial.
pub fn distinct_degree<F: FiniteField>(f: &Poly<F>) -> Result<Vec<(Poly<F>, usize)>> {
    let field = f.field().clone();
    let q = field.order();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut i = 0;
    while rest.degree().unwrap_or(0) >= 2 * (i + 1) {
        i += 1;
        h = h.pow_mod(&q, &rest)?;
        let g = rest.gcd(&(&h - &x))?;
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, i));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap_or(0);
        out.push((rest, d));
    }
    Ok(out)
}

/// Cantor–Zassenhaus: splits a monic squarefree product of irreducibles of
/// degree `d` into its factors. Requires odd characteristic.
pub fn equal_degree<F: FiniteField>(f: &Poly<F>, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly<F>>> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == d {
        return Ok(vec![f.clone()]);
    }
    if n == 0 || n % d != 0 {
        return Err(Error::InvalidArgument(format!("degree {n} is not a multiple of {d}")));
    }
    let field = f.field().clone();
    let exp = (field.order().pow(d as u32) - BigUint::one()) >> 1;
    let one = Poly::one(field.clone());
    loop {
        let a: Vec<F::Elem> = (0..n).map(|_| field.random_element(rng)).collect();
        let a = Poly::new(field.clone(), a);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = f.gcd(&a)?;
        if g.degree().unwrap_or(0) == 0 {
            let b = a.pow_mod(&exp, f)?;
            g = f.gcd(&(&b - &one))?;
        }
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.exact_div(&g)?;
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&h, d, rng)?);
            return Ok(out);
        }
    }
}

fn sort_factors<F: FiniteField>(field: &F, v: &mut [(Poly<F>, usize)]) {
    v.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| cmp_elem_lists(field, a.coeffs(), b.coeffs()))
    });
}

/// Complete factorization over a finite field.
pub fn factor<F: FiniteField>(f: &Poly<F>, seed: u64) -> Result<Factorization<F>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = f.leading_coeff();
    let monic = f.monic()?;
    let mut factors = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&monic)? {
        for (block, d) in distinct_degree(&sqf)? {
            for g in equal_degree(&block, d, &mut rng)? {
                factors.push((g, mult));
            }
        }
    }
    sort_factors(&field, &mut factors);
    Ok(Factorization { unit, factors, seed })
}

/// All distinct roots in the coefficient field, sorted by coordinates.
pub fn roots<F: FiniteField>(f: &Poly<F>, seed: u64) -> Result<Vec<F::Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let monic = f.monic()?;
    let x = Poly::x(field.clone());
    let xq = x.pow_mod(&field.order(), &monic)?;
    let linear_part = monic.gcd(&(&xq - &x))?;
    if linear_part.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<F::Elem> = equal_degree(&linear_part, 1, &mut rng)?
        .into_iter()
        .map(|g| field.neg(&g.coeff(0)))
        .collect();
    out.sort_by(|a, b| field.cmp_elems(a, b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{extension_field, PrimeField, Ring};
    use rand::Rng;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn t2_plus_1_mod_5_splits() {
        let f = Poly::from_ints(fp(5), &[1, 0, 1]);
        let fac = factor(&f, DEFAULT_SEED).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::from_ints(fp(5), &[2, 1]), 1), (Poly::from_ints(fp(5), &[3, 1]), 1)]
        );
    }

    #[test]
    fn t2_plus_1_mod_7_irreducible() {
        let f = Poly::from_ints(fp(7), &[1, 0, 1]);
        let fac = factor(&f, DEFAULT_SEED).unwrap();
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
        assert!(is_irreducible(&f).unwrap());
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        let k = fp(3);
        // (T+1)^3 * (T^2+1)^2 * T
        let a = Poly::from_ints(k, &[1, 1]).pow(3);
        let b = Poly::from_ints(k, &[1, 0, 1]).pow(2);
        let f = &(&a * &b) * &Poly::x(k);
        let fac = factor(&f, 1).unwrap();
        assert_eq!(fac.expand(&k), f);
        assert_eq!(fac.degree_type(), vec![1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn factors_over_extension_field() {
        let l = extension_field(3, 2).unwrap();
        // T^2 + 1 splits over F_9
        let f = Poly::new(l.clone(), vec![l.one(), l.zero(), l.one()]);
        let r = roots(&f, 3).unwrap();
        assert_eq!(r.len(), 2);
        for x in &r {
            assert!(l.is_zero(&f.eval(x)));
        }
    }

    #[test]
    fn random_degree_eight_reexpands() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let k = fp(11);
        for _ in 0..20 {
            let mut c: Vec<u64> = (0..8).map(|_| rng.gen_range(0..11)).collect();
            c.push(1);
            let f = Poly::new(k, c);
            let fac = factor(&f, 5).unwrap();
            assert_eq!(fac.degree_type().iter().sum::<usize>(), 8);
            assert_eq!(fac.expand(&k), f);
            for (g, _) in &fac.factors {
                assert!(g.is_monic());
                assert!(is_irreducible(g).unwrap());
            }
        }
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(factor(&Poly::zero(fp(5)), 0).unwrap_err(), Error::ZeroPolynomial);
    }
}
