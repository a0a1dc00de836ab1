//! Homogeneous ternary forms, the determinantal quartic, restriction to lines
//! and the perfect-square test for binary quartics.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Overfield, Ring};
use crate::linalg::Matrix;
use crate::poly::Poly;

/// Exponent triples of degree `d`, ordered by the exponent of `u1`
/// descending, then that of `u2` descending.
pub fn monomials(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

pub fn monomial_index(e: [usize; 3]) -> usize {
    let d = e[0] + e[1] + e[2];
    // monomials with a larger u1 exponent come first
    let before: usize = (e[0] + 1..=d).map(|a| d - a + 1).sum();
    before + (d - e[0] - e[1])
}

/// A homogeneous polynomial in `u1, u2, u3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form<F: Ring> {
    field: F,
    degree: usize,
    coeffs: Vec<F::Elem>,
}

/// A ternary quartic: 15 coefficients in the order of `monomials(4)`.
pub type TernaryQuartic<F> = Form<F>;

impl<F: Ring> Form<F> {
    pub fn new(field: F, degree: usize, coeffs: Vec<F::Elem>) -> Result<Self> {
        let n = (degree + 1) * (degree + 2) / 2;
        if coeffs.len() != n {
            return Err(Error::Dimension(format!(
                "{} coefficients for a form of degree {degree}",
                coeffs.len()
            )));
        }
        Ok(Form { field, degree, coeffs })
    }

    pub fn zero(field: F, degree: usize) -> Self {
        let n = (degree + 1) * (degree + 2) / 2;
        Form { coeffs: vec![field.zero(); n], field, degree }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Form { field, degree: 0, coeffs: vec![c] }
    }

    /// `c1 u1 + c2 u2 + c3 u3`.
    pub fn linear(field: F, c: [F::Elem; 3]) -> Self {
        Form { field, degree: 1, coeffs: c.to_vec() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [usize; 3]) -> &F::Elem {
        &self.coeffs[monomial_index(e)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect();
        Ok(Form { field: f.clone(), degree: self.degree, coeffs: c })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Form { field: f.clone(), degree: self.degree, coeffs: c })
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        Form {
            field: f.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Form::zero(f.clone(), self.degree + other.degree);
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (ea, a) in ma.iter().zip(&self.coeffs) {
            if f.is_zero(a) {
                continue;
            }
            for (eb, b) in mb.iter().zip(&other.coeffs) {
                if f.is_zero(b) {
                    continue;
                }
                let k = monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                out.coeffs[k] = f.add(&out.coeffs[k], &f.mul(a, b));
            }
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ContextMismatch("forms over different fields".into()));
        }
        if self.degree != other.degree {
            return Err(Error::Dimension(format!("degrees {} and {}", self.degree, other.degree)));
        }
        Ok(())
    }

    pub fn eval(&self, u: &[F::Elem; 3]) -> F::Elem {
        let f = &self.field;
        let mut powers: Vec<Vec<F::Elem>> = Vec::with_capacity(3);
        for x in u {
            let mut p = vec![f.one()];
            for k in 1..=self.degree {
                p.push(f.mul(&p[k - 1], x));
            }
            powers.push(p);
        }
        monomials(self.degree)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !f.is_zero(c))
            .fold(f.zero(), |acc, (e, c)| {
                let m = f.mul(&f.mul(&powers[0][e[0]], &powers[1][e[1]]), &powers[2][e[2]]);
                f.add(&acc, &f.mul(c, &m))
            })
    }

    /// Partial derivative with respect to `u_{i+1}`.
    pub fn partial(&self, i: usize) -> Self {
        let f = &self.field;
        if self.degree == 0 {
            return Form::zero(f.clone(), 0);
        }
        let mut out = Form::zero(f.clone(), self.degree - 1);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if e[i] == 0 || f.is_zero(c) {
                continue;
            }
            let mut d = *e;
            d[i] -= 1;
            let k = monomial_index(d);
            out.coeffs[k] = f.add(&out.coeffs[k], &f.mul(c, &f.from_int(e[i] as i64)));
        }
        out
    }

    /// `F(A u)`, i.e. each `u_i` replaced by `sum_j A[i][j] u_j`.
    pub fn substitute(&self, a: &[[F::Elem; 3]; 3]) -> Self {
        let f = &self.field;
        let lin: Vec<Form<F>> = a.iter().map(|row| Form::linear(f.clone(), row.clone())).collect();
        let mut out = Form::zero(f.clone(), self.degree);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if f.is_zero(c) {
                continue;
            }
            let mut term = Form::constant(f.clone(), c.clone());
            for (i, l) in lin.iter().enumerate() {
                for _ in 0..e[i] {
                    term = term.mul(l);
                }
            }
            out = out.add(&term).expect("same degree");
        }
        out
    }

    pub fn map<G: Ring>(&self, target: &G, f: impl FnMut(&F::Elem) -> G::Elem) -> Form<G> {
        Form {
            field: target.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Coefficients of the binary form `F(s P + t Q)`, entry `k` being the
    /// coefficient of `s^(d-k) t^k`.
    pub fn restrict(&self, p: &[F::Elem; 3], q: &[F::Elem; 3]) -> Vec<F::Elem> {
        let f = &self.field;
        let d = self.degree;
        // binary linear forms p_i s + q_i t and their powers
        let mut powers: Vec<Vec<Vec<F::Elem>>> = Vec::with_capacity(3);
        for i in 0..3 {
            let lin = vec![p[i].clone(), q[i].clone()];
            let mut pw = vec![vec![f.one()]];
            for k in 1..=d {
                let next = binary_mul(f, &pw[k - 1], &lin);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = vec![f.zero(); d + 1];
        for (e, c) in monomials(d).iter().zip(&self.coeffs) {
            if f.is_zero(c) {
                continue;
            }
            let prod = binary_mul(f, &binary_mul(f, &powers[0][e[0]], &powers[1][e[1]]), &powers[2][e[2]]);
            for (k, x) in prod.iter().enumerate() {
                out[k] = f.add(&out[k], &f.mul(c, x));
            }
        }
        out
    }

    /// Human-readable form in variables `vars`.
    pub fn format_with(&self, vars: [&str; 3]) -> String {
        let f = &self.field;
        let mut out = String::new();
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if f.is_zero(c) {
                continue;
            }
            let mono: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { vars[i].to_string() } else { format!("{}^{}", vars[i], e[i]) })
                .collect();
            let mono = mono.join("*");
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
            if mono.is_empty() {
                out.push_str(&s);
            } else if s == "1" {
                out.push_str(&mono);
            } else if f.needs_parens(c) {
                out.push_str(&format!("({s})*{mono}"));
            } else {
                out.push_str(&format!("{s}*{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Comma-separated coefficients in canonical monomial order.
    pub fn canonical(&self) -> String {
        self.coeffs.iter().map(|c| self.field.format(c)).collect::<Vec<_>>().join(",")
    }
}

fn binary_mul<F: Ring>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

/// `det(u1 M1 + u2 M2 + u3 M3)` by expansion over all permutations of four
/// columns.
pub fn det_of_linear_matrix<F: Ring>(ms: &[Matrix<F>; 3]) -> Result<TernaryQuartic<F>> {
    let f = ms[0].ring().clone();
    for m in ms {
        if m.nrows() != 4 || m.ncols() != 4 {
            return Err(Error::Dimension("net matrices must be 4x4".into()));
        }
    }
    let entry = |i: usize, j: usize| {
        Form::linear(
            f.clone(),
            [ms[0].get(i, j).clone(), ms[1].get(i, j).clone(), ms[2].get(i, j).clone()],
        )
    };
    let mut out = Form::zero(f.clone(), 4);
    for (perm, odd) in permutations4() {
        let mut term = Form::constant(f.clone(), f.one());
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&entry(i, j));
        }
        out = if odd { out.sub(&term)? } else { out.add(&term)? };
    }
    Ok(out)
}

fn permutations4() -> Vec<([usize; 4], bool)> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if distinct {
                        let inversions = (0..4)
                            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        out.push((p, inversions % 2 == 1));
                    }
                }
            }
        }
    }
    out
}

/// `g = c (s^2 + beta s t + gamma t^2)^2` after the shear `t -> t + a s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareDecomposition<E> {
    pub c: E,
    pub beta: E,
    pub gamma: E,
    pub shear: i64,
}

/// Decides whether a binary quartic (entry `k` = coefficient of
/// `s^(4-k) t^k`) is a nonzero scalar times the square of a quadratic form.
pub fn square_decomposition<F: Field>(f: &F, g: &[F::Elem]) -> Result<Option<SquareDecomposition<F::Elem>>> {
    if g.len() != 5 {
        return Err(Error::Dimension("binary quartic needs five coefficients".into()));
    }
    if g.iter().all(|x| f.is_zero(x)) {
        return Err(Error::Degenerate("restriction to the line vanishes identically".into()));
    }
    for shear in 0..3i64 {
        let a = f.from_int(shear);
        let h = shear_binary(f, g, &a);
        if f.is_zero(&h[0]) {
            continue;
        }
        let c = h[0].clone();
        let ci = f.inv(&c).ok_or(Error::DivisionByZero)?;
        let n: Vec<F::Elem> = h.iter().map(|x| f.mul(x, &ci)).collect();
        let half = f.inv(&f.from_int(2)).ok_or(Error::CharacteristicTwo)?;
        let beta = f.mul(&n[1], &half);
        let gamma = f.mul(&f.sub(&n[2], &f.mul(&beta, &beta)), &half);
        let ok3 = n[3] == f.mul(&f.from_int(2), &f.mul(&beta, &gamma));
        let ok4 = n[4] == f.mul(&gamma, &gamma);
        return Ok((ok3 && ok4).then_some(SquareDecomposition { c, beta, gamma, shear }));
    }
    // three distinct roots on the line: a square has at most two
    Ok(None)
}

/// `g(s, t + a s)`.
fn shear_binary<F: Field>(f: &F, g: &[F::Elem], a: &F::Elem) -> Vec<F::Elem> {
    let d = g.len() - 1;
    let mut out = vec![f.zero(); d + 1];
    // s^(d-k) (t + a s)^k = sum_j C(k,j) a^(k-j) s^(d-j) t^j
    for (k, gk) in g.iter().enumerate() {
        if f.is_zero(gk) {
            continue;
        }
        let mut binom = 1i64;
        for j in 0..=k {
            if j > 0 {
                binom = binom * (k as i64 - j as i64 + 1) / j as i64;
            }
            let term = f.mul(&f.mul(gk, &f.from_int(binom)), &f.pow(a, (k - j) as u64));
            out[j] = f.add(&out[j], &term);
        }
    }
    out
}

/// Points spanning the line `b1 u1 + b2 u2 + b3 u3 = 0`, where the first
/// nonzero coefficient of `b` is 1.
pub fn line_points<F: Field>(f: &F, b: &[F::Elem; 3]) -> Result<([F::Elem; 3], [F::Elem; 3])> {
    let k = b.iter().position(|x| !f.is_zero(x)).ok_or_else(|| Error::Degenerate("zero line".into()))?;
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let bk_inv = f.inv(&b[k]).ok_or(Error::DivisionByZero)?;
    let point = |i: usize| {
        let mut v = [f.zero(), f.zero(), f.zero()];
        v[i] = f.one();
        v[k] = f.neg(&f.mul(&b[i], &bk_inv));
        v
    };
    Ok((point(others[0]), point(others[1])))
}

/// Square decomposition of the quartic's restriction to the line `b`.
pub fn restriction_square<F: Field>(
    q: &TernaryQuartic<F>,
    b: &[F::Elem; 3],
) -> Result<Option<SquareDecomposition<F::Elem>>> {
    if q.is_zero() {
        return Err(Error::Degenerate("zero quartic".into()));
    }
    let (p0, p1) = line_points(q.field(), b)?;
    let g = q.restrict(&p0, &p1);
    square_decomposition(q.field(), &g)
}

/// Whether the line `b1 u1 + b2 u2 + b3 u3 = 0` meets the quartic in a
/// nonzero perfect square.
pub fn is_bitangent<F: Field>(q: &TernaryQuartic<F>, b: &[F::Elem; 3]) -> Result<bool> {
    Ok(restriction_square(q, b)?.is_some())
}

/// Searches `P^2(F_{q^2})` for a point where all partial derivatives vanish.
/// Singular points defined only over larger fields are not detected.
pub fn smooth_bruteforce<F: FiniteField>(q: &TernaryQuartic<F>, seed: u64) -> Result<bool> {
    let size = q.field().size().unwrap_or(u64::MAX);
    if size > 121 {
        return Err(Error::FieldTooLarge(format!("{size} elements, limit 121")));
    }
    let over = Overfield::new(q.field(), 2, seed)?;
    let l = over.field().clone();
    let ql = q.map(&l, |c| over.embed(c));
    let grads: Vec<Form<_>> = (0..3).map(|i| ql.partial(i)).collect();
    let singular = |u: &[Vec<u64>; 3]| grads.iter().all(|g| l.is_zero(&g.eval(u)));
    let n = l.size().expect("small field");
    let elems: Vec<Vec<u64>> = (0..n).map(|i| l.element(i)).collect();
    // points (1:0:0) and (x:1:0)
    if singular(&[l.one(), l.zero(), l.zero()]) {
        return Ok(false);
    }
    for x in &elems {
        if singular(&[x.clone(), l.one(), l.zero()]) {
            return Ok(false);
        }
    }
    // affine chart u3 = 1: for each u1 = x the partials are polynomials in u2
    let order = BigUint::from(n);
    let y = Poly::x(l.clone());
    for x in &elems {
        let mut g = Poly::zero(l.clone());
        for grad in &grads {
            let coeffs = grad.restrict(&[l.zero(), l.one(), l.zero()], &[x.clone(), l.zero(), l.one()]);
            // entry k is the coefficient of s^(d-k) t^k with s = u2, t = 1
            let p = Poly::new(l.clone(), coeffs.into_iter().rev().collect());
            g = g.gcd(&p)?;
        }
        if g.is_zero() {
            return Ok(false);
        }
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let yq = y.pow_mod(&order, &g)?;
        if g.gcd(&(&yq - &y))?.degree().unwrap_or(0) > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn monomial_order_and_index() {
        let m = monomials(4);
        assert_eq!(m.len(), 15);
        assert_eq!(m[0], [4, 0, 0]);
        assert_eq!(m[1], [3, 1, 0]);
        assert_eq!(m[2], [3, 0, 1]);
        assert_eq!(m[9], [1, 0, 3]);
        assert_eq!(m[14], [0, 0, 4]);
        for d in 0..6 {
            for (i, e) in monomials(d).iter().enumerate() {
                assert_eq!(monomial_index(*e), i);
            }
        }
    }

    #[test]
    fn diagonal_and_identity_nets() {
        let k = Rationals;
        let zero = Matrix::zero(k, 4, 4);
        let mut diag = Matrix::zero(k, 4, 4);
        for i in 0..4 {
            diag.set(i, i, k.from_int(i as i64 + 1));
        }
        let q = det_of_linear_matrix(&[zero.clone(), zero, diag]).unwrap();
        let mut expect = Form::zero(k, 4);
        expect.coeffs[14] = k.from_int(24);
        assert_eq!(q, expect);

        let id = Matrix::identity(k, 4);
        let q = det_of_linear_matrix(&[id.clone(), id.clone(), id]).unwrap();
        let s = Form::linear(k, [k.one(), k.one(), k.one()]);
        assert_eq!(q, s.mul(&s).mul(&s).mul(&s));
    }

    #[test]
    fn square_test_examples() {
        let k = PrimeField::new(7).unwrap();
        // (u1^2 + u2^2)^2 on u3 = 0
        let a = Form::new(k, 2, vec![1, 0, 0, 1, 0, 0]).unwrap();
        let q = a.mul(&a);
        assert!(is_bitangent(&q, &[0, 0, 1]).unwrap());
        // u1^4 + u2^4 on u3 = 0
        let mut c = vec![0; 15];
        c[0] = 1;
        c[10] = 1;
        let q = Form::new(k, 4, c).unwrap();
        assert!(!is_bitangent(&q, &[0, 0, 1]).unwrap());
    }

    #[test]
    fn square_test_needs_shear() {
        let k = PrimeField::new(5).unwrap();
        // t^2 (s + t)^2: vanishes at (1:0), so the first shear is needed
        let g = vec![0, 0, 1, 2, 1];
        let d = square_decomposition(&k, &g).unwrap().unwrap();
        assert_ne!(d.shear, 0);
        // s t (s+t)(s+2t) has four distinct roots
        let g = vec![0, 1, 3, 2, 0];
        assert!(square_decomposition(&k, &g).unwrap().is_none());
    }

    #[test]
    fn zero_restriction_is_an_error() {
        let k = PrimeField::new(5).unwrap();
        // u3 * u1^3 contains the line u3 = 0
        let mut c = vec![0; 15];
        c[2] = 1;
        let q = Form::new(k, 4, c).unwrap();
        assert!(is_bitangent(&q, &[0, 0, 1]).is_err());
    }

    #[test]
    fn fermat_smooth_and_double_lines_singular() {
        let k = PrimeField::new(5).unwrap();
        let mut c = vec![0; 15];
        c[0] = 1;
        c[10] = 1;
        c[14] = 1;
        assert!(smooth_bruteforce(&Form::new(k, 4, c).unwrap(), 1).unwrap());
        let mut c = vec![0; 15];
        c[monomial_index([2, 2, 0])] = 1;
        assert!(!smooth_bruteforce(&Form::new(k, 4, c).unwrap(), 1).unwrap());
    }

    #[test]
    fn substitution_composes() {
        let k = PrimeField::new(11).unwrap();
        let c: Vec<u64> = (0..15).map(|i| (i * 7 + 3) % 11).collect();
        let q = Form::new(k, 4, c).unwrap();
        let a = [[1, 2, 0], [0, 1, 5], [3, 0, 1]];
        let qa = q.substitute(&a);
        let u = [4u64, 9, 2];
        let au: [u64; 3] = std::array::from_fn(|i| (0..3).map(|j| a[i][j] * u[j]).sum::<u64>() % 11);
        assert_eq!(qa.eval(&u), q.eval(&au));
    }
}
