//! Frobenius orbit sizes on the bitangents of an arbitrary nonsingular
//! quartic over a finite field, by elimination.
//!
//! This is independent of any octad: it is used to check quartics given
//! only by their equation. Lines are written `u3 = a u1 + b u2`. The
//! restriction `g(s, t) = Q(s, t, a s + b t) = sum g_m s^m t^(4-m)` is
//! `g4 (s^2 + beta s t + gamma t^2)^2` exactly when
//!
//! ```text
//! E1 = 8 g4^2 g1 - 4 g4 g3 g2 + g3^3 = 0
//! E2 = 64 g4^3 g0 - (4 g4 g2 - g3^2)^2 = 0
//! ```
//!
//! (given `g4 != 0`). The `a`-coordinates of bitangents are roots of
//! `Res_b(E1, E2)`; over each irreducible factor the `b`-coordinates are
//! the common roots of `E1(a0, b)` and `E2(a0, b)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor;
use crate::field::{FiniteField, Overfield};
use crate::linalg::{bareiss_det, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::quartic::{monomials, Form, TernaryQuartic};

/// Polynomial in `b` with coefficients in `F[a]`, constant term first.
type BiPoly<F> = Vec<Poly<F>>;

fn bi_trim<F: FiniteField>(mut p: BiPoly<F>) -> BiPoly<F> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn bi_add<F: FiniteField>(x: &BiPoly<F>, y: &BiPoly<F>) -> BiPoly<F> {
    let n = x.len().max(y.len());
    let zero = Poly::zero(x.first().or(y.first()).map(|c| c.field().clone()).expect("nonempty"));
    bi_trim((0..n).map(|i| &*x.get(i).unwrap_or(&zero) + y.get(i).unwrap_or(&zero)).collect())
}

fn bi_mul<F: FiniteField>(x: &BiPoly<F>, y: &BiPoly<F>) -> BiPoly<F> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let field = x[0].field().clone();
    let mut out = vec![Poly::zero(field); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    bi_trim(out)
}

fn bi_scale<F: FiniteField>(x: &BiPoly<F>, c: i64) -> BiPoly<F> {
    bi_trim(x.iter().map(|p| p.scale(&p.field().from_int(c))).collect())
}

/// The coefficients `g_0..g_4` of `Q(s, t, a s + b t)`, `g_m` multiplying
/// `s^m t^(4-m)`.
fn restriction_coefficients<F: FiniteField>(q: &TernaryQuartic<F>) -> Vec<BiPoly<F>> {
    let k = q.field().clone();
    let mut g: Vec<Vec<Vec<F::Elem>>> = vec![vec![vec![k.zero(); 5]; 5]; 5];
    for (e, c) in monomials(4).iter().zip(q.coeffs()) {
        if k.is_zero(c) {
            continue;
        }
        let (i, kk) = (e[0], e[2]);
        let mut binom = 1i64;
        for l in 0..=kk {
            if l > 0 {
                binom = binom * (kk - l + 1) as i64 / l as i64;
            }
            // s^(i+l), a^l, b^(kk-l)
            let slot = &mut g[i + l][kk - l][l];
            *slot = k.add(slot, &k.mul(c, &k.from_int(binom)));
        }
    }
    g.into_iter()
        .map(|by_b| bi_trim(by_b.into_iter().map(|ca| Poly::new(k.clone(), ca)).collect()))
        .collect()
}

fn square_conditions<F: FiniteField>(g: &[BiPoly<F>]) -> (BiPoly<F>, BiPoly<F>) {
    let (g0, g1, g2, g3, g4) = (&g[0], &g[1], &g[2], &g[3], &g[4]);
    let g4g4 = bi_mul(g4, g4);
    let e1 = bi_add(
        &bi_add(&bi_scale(&bi_mul(&g4g4, g1), 8), &bi_scale(&bi_mul(&bi_mul(g4, g3), g2), -4)),
        &bi_mul(&bi_mul(g3, g3), g3),
    );
    let inner = bi_add(&bi_scale(&bi_mul(g4, g2), 4), &bi_scale(&bi_mul(g3, g3), -1));
    let e2 = bi_add(&bi_scale(&bi_mul(&bi_mul(&g4g4, g4), g0), 64), &bi_scale(&bi_mul(&inner, &inner), -1));
    (e1, e2)
}

/// `Res_b(x, y)` via the Sylvester matrix over `F[a]`.
fn resultant_b<F: FiniteField>(x: &BiPoly<F>, y: &BiPoly<F>, field: &F) -> Result<Poly<F>> {
    if x.is_empty() || y.is_empty() {
        return Ok(Poly::zero(field.clone()));
    }
    let (m, n) = (x.len() - 1, y.len() - 1);
    let size = m + n;
    if size == 0 {
        return Ok(Poly::one(field.clone()));
    }
    let ring = PolyRing::new(field.clone());
    let mut s = Matrix::zero(ring, size, size);
    for r in 0..n {
        for (j, c) in x.iter().rev().enumerate() {
            s.set(r, r + j, c.clone());
        }
    }
    for r in 0..m {
        for (j, c) in y.iter().rev().enumerate() {
            s.set(n + r, r + j, c.clone());
        }
    }
    bareiss_det(&s)
}

fn random_gl3<F: FiniteField>(k: &F, rng: &mut ChaCha8Rng) -> [[F::Elem; 3]; 3] {
    loop {
        let a: [[F::Elem; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| k.random_element(rng)));
        let det = {
            let m = |i: usize, j: usize| &a[i][j];
            let t0 = k.mul(m(0, 0), &k.sub(&k.mul(m(1, 1), m(2, 2)), &k.mul(m(1, 2), m(2, 1))));
            let t1 = k.mul(m(0, 1), &k.sub(&k.mul(m(1, 0), m(2, 2)), &k.mul(m(1, 2), m(2, 0))));
            let t2 = k.mul(m(0, 2), &k.sub(&k.mul(m(1, 0), m(2, 1)), &k.mul(m(1, 1), m(2, 0))));
            k.add(&k.sub(&t0, &t1), &t2)
        };
        if !k.is_zero(&det) {
            return a;
        }
    }
}

/// One attempt in fixed coordinates. `None` when some bitangent escapes the
/// chart or the elimination degenerates.
fn orbits_in_chart<F: FiniteField>(q: &TernaryQuartic<F>, seed: u64) -> Result<Option<Vec<usize>>> {
    let k = q.field().clone();
    let g = restriction_coefficients(q);
    if g[4].is_empty() {
        return Ok(None);
    }
    let g4 = g[4][0].clone();
    let (e1, e2) = square_conditions(&g);
    let mut r = resultant_b(&e1, &e2, &k)?;
    if r.is_zero() {
        return Ok(None);
    }
    loop {
        let common = r.gcd(&g4)?;
        if common.degree().unwrap_or(0) == 0 {
            break;
        }
        r = r.exact_div(&common)?;
    }
    let mut orbits = Vec::new();
    if r.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    for (phi, _) in factor::factor(&r, seed)?.factors {
        let deg_a = phi.degree().unwrap_or(0);
        let over = Overfield::new(&k, deg_a, seed)?;
        let l = over.field().clone();
        let lifted = phi.map(&l, |c| over.embed(c));
        let a0 = factor::roots(&lifted, seed)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Verification("no root of a resultant factor".into()))?;
        let at = |p: &BiPoly<F>| -> Poly<_> {
            Poly::new(l.clone(), p.iter().map(|c| c.map(&l, |x| over.embed(x)).eval(&a0)).collect())
        };
        let common = at(&e1).gcd(&at(&e2))?;
        if common.is_zero() {
            return Ok(None);
        }
        if common.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (psi, mult) in factor::factor(&common, seed)?.factors {
            if mult > 1 {
                return Ok(None);
            }
            orbits.push(deg_a * psi.degree().unwrap_or(0));
        }
    }
    orbits.sort_unstable();
    Ok((orbits.iter().sum::<usize>() == 28).then_some(orbits))
}

/// Sorted Frobenius orbit sizes on the 28 bitangents. Tries random
/// coordinate changes until every bitangent lies in the chart.
pub fn bitangent_orbits<F: FiniteField>(q: &TernaryQuartic<F>, seed: u64, attempts: usize) -> Result<Vec<usize>> {
    if q.is_zero() {
        return Err(Error::Degenerate("zero quartic".into()));
    }
    let k = q.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let a = random_gl3(&k, &mut rng);
        let moved = q.substitute(&a);
        if let Some(orbits) = orbits_in_chart(&moved, rng.gen())? {
            return Ok(orbits);
        }
    }
    Err(Error::Verification(format!(
        "no chart with all 28 bitangents found in {attempts} attempts"
    )))
}

/// The dehomogenization `F(x, y, 1)` as a polynomial in `y` over `F[x]`.
fn affine_chart<F: FiniteField>(q: &Form<F>) -> BiPoly<F> {
    let k = q.field().clone();
    let d = q.degree();
    let mut by_y = vec![vec![k.zero(); d + 1]; d + 1];
    for (e, c) in monomials(d).iter().zip(q.coeffs()) {
        by_y[e[1]][e[0]] = k.add(&by_y[e[1]][e[0]], c);
    }
    bi_trim(by_y.into_iter().map(|cx| Poly::new(k.clone(), cx)).collect())
}

/// `F(x, 1, 0)` as a polynomial in `x`.
fn line_at_infinity<F: FiniteField>(q: &Form<F>) -> Poly<F> {
    let k = q.field().clone();
    let mut c = vec![k.zero(); q.degree() + 1];
    for (e, v) in monomials(q.degree()).iter().zip(q.coeffs()) {
        if e[2] == 0 {
            c[e[0]] = k.add(&c[e[0]], v);
        }
    }
    Poly::new(k, c)
}

fn gcd_all<F: FiniteField>(ps: &[Poly<F>]) -> Result<Poly<F>> {
    let mut g = ps[0].clone();
    for p in &ps[1..] {
        g = g.gcd(p)?;
    }
    Ok(g)
}

/// Singular points in fixed coordinates. `None` when the elimination in the
/// affine chart degenerates.
fn singular_in_chart<F: FiniteField>(q: &TernaryQuartic<F>, seed: u64) -> Result<Option<bool>> {
    let k = q.field().clone();
    let grads = [q.partial(0), q.partial(1), q.partial(2)];
    // points with u3 = 0
    let corner = [k.one(), k.zero(), k.zero()];
    if grads.iter().all(|g| k.is_zero(&g.eval(&corner))) {
        return Ok(Some(true));
    }
    let at_inf: Vec<Poly<F>> = grads.iter().map(line_at_infinity).collect();
    let g = gcd_all(&at_inf)?;
    if g.is_zero() || g.degree().unwrap_or(0) > 0 {
        return Ok(Some(true));
    }
    // affine points
    let charts: Vec<BiPoly<F>> = grads.iter().map(affine_chart).collect();
    let r = resultant_b(&charts[0], &charts[1], &k)?;
    if r.is_zero() {
        return Ok(None);
    }
    if r.degree().unwrap_or(0) == 0 {
        return Ok(Some(false));
    }
    for (phi, _) in factor::factor(&r, seed)?.factors {
        let over = Overfield::new(&k, phi.degree().unwrap_or(1), seed)?;
        let l = over.field().clone();
        let x0 = factor::roots(&phi.map(&l, |c| over.embed(c)), seed)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Verification("no root of a resultant factor".into()))?;
        let at: Vec<Poly<_>> = charts
            .iter()
            .map(|p| Poly::new(l.clone(), p.iter().map(|c| c.map(&l, |x| over.embed(x)).eval(&x0)).collect()))
            .collect();
        let g = gcd_all(&at)?;
        if g.is_zero() || g.degree().unwrap_or(0) > 0 {
            return Ok(Some(true));
        }
    }
    Ok(Some(false))
}

/// Whether the quartic has no singular point over the algebraic closure.
/// Needs characteristic prime to 4 so that the partials cut out the
/// singular locus.
pub fn is_nonsingular<F: FiniteField>(q: &TernaryQuartic<F>, seed: u64, attempts: usize) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::Degenerate("zero quartic".into()));
    }
    let k = q.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let a = random_gl3(&k, &mut rng);
        if let Some(singular) = singular_in_chart(&q.substitute(&a), rng.gen())? {
            return Ok(!singular);
        }
    }
    Err(Error::Verification(format!("elimination degenerate in {attempts} coordinate systems")))
}
