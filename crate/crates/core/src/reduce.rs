//! Reduction of rational data modulo primes and specialization of `F_p(t)`
//! data at points of finite fields.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, FunctionField, PrimeField, RatFunc, Rationals, Ring};
use crate::octad::{certify_octad, normalize_trace, Construction};
use crate::poly::Poly;
use crate::quartic::TernaryQuartic;

/// `a mod p`, or `None` when `p` divides the denominator.
pub fn reduce_rational(k: &PrimeField, a: &BigRational) -> Option<u64> {
    let den = k.from_bigint(a.denom());
    k.div(&k.from_bigint(a.numer()), &den)
}

pub fn reduce_poly(k: &PrimeField, f: &Poly<Rationals>) -> Option<Poly<PrimeField>> {
    let coeffs = f.coeffs().iter().map(|c| reduce_rational(k, c)).collect::<Option<Vec<_>>>()?;
    Some(Poly::new(*k, coeffs))
}

pub fn reduce_form(k: &PrimeField, q: &TernaryQuartic<Rationals>) -> Option<TernaryQuartic<PrimeField>> {
    let coeffs = q.coeffs().iter().map(|c| reduce_rational(k, c)).collect::<Option<Vec<_>>>()?;
    TernaryQuartic::new(*k, q.degree(), coeffs).ok()
}

/// Value of `a` at `t = point`, `None` at a pole.
pub fn specialize<G: Field>(ff: &FunctionField, target: &G, point: &G::Elem, a: &RatFunc) -> Option<G::Elem> {
    ff.eval_at(a, target, point)
}

pub fn specialize_poly<G: Field>(
    ff: &FunctionField,
    target: &G,
    point: &G::Elem,
    f: &Poly<FunctionField>,
) -> Option<Poly<G>> {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| specialize(ff, target, point, c))
        .collect::<Option<Vec<_>>>()?;
    Some(Poly::new(target.clone(), coeffs))
}

pub fn specialize_form<G: Field>(
    ff: &FunctionField,
    target: &G,
    point: &G::Elem,
    q: &TernaryQuartic<FunctionField>,
) -> Option<TernaryQuartic<G>> {
    let coeffs = q
        .coeffs()
        .iter()
        .map(|c| specialize(ff, target, point, c))
        .collect::<Option<Vec<_>>>()?;
    TernaryQuartic::new(target.clone(), q.degree(), coeffs).ok()
}

/// Why a prime was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BadPrime {
    Even,
    Denominator,
    NotSeparable,
    SubsetSum,
}

impl std::fmt::Display for BadPrime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BadPrime::Even => "even",
            BadPrime::Denominator => "denominator not invertible",
            BadPrime::NotSeparable => "f not separable",
            BadPrime::SubsetSum => "subset-sum determinant vanishes",
        })
    }
}

/// Checks the certificates and denominators of a rational construction at `p`.
/// The reduced quartic agrees with the construction run over `F_p`.
pub fn check_prime(c: &Construction<Rationals>, p: u64) -> Result<std::result::Result<(), BadPrime>> {
    if p % 2 == 0 {
        return Ok(Err(BadPrime::Even));
    }
    let k = PrimeField::new(p)?;
    let Some(f) = reduce_poly(&k, c.spec.poly()) else {
        return Ok(Err(BadPrime::Denominator));
    };
    let Some(q) = reduce_form(&k, &c.quartic) else {
        return Ok(Err(BadPrime::Denominator));
    };
    let spec = normalize_trace(&f)?;
    let cert = certify_octad(&spec)?;
    if !cert.separable {
        return Ok(Err(BadPrime::NotSeparable));
    }
    if !cert.passes {
        return Ok(Err(BadPrime::SubsetSum));
    }
    let direct = crate::octad::det_quartic(&crate::octad::build_net(&spec)?)?;
    if direct != q {
        return Err(Error::Verification(format!("reduction mod {p} does not commute with the construction")));
    }
    Ok(Ok(()))
}

/// The first `count` good primes above `above`, with the rejected ones.
pub fn good_primes(
    c: &Construction<Rationals>,
    above: u64,
    count: usize,
) -> Result<(Vec<u64>, Vec<(u64, BadPrime)>)> {
    let mut good = Vec::new();
    let mut bad = Vec::new();
    let mut p = above + 1;
    while good.len() < count {
        if crate::field::is_odd_prime(p) {
            match check_prime(c, p)? {
                Ok(()) => good.push(p),
                Err(why) => bad.push((p, why)),
            }
        }
        p += 1;
    }
    Ok((good, bad))
}
