//! Text input: field specs, polynomials in `T` and ternary quartics.
//!
//! Expressions use `+ - * / ^`, parentheses and implicit multiplication.
//! Recognized variables are `t` (function field), `T` (the octad polynomial)
//! and `u1 u2 u3` for quartics, with `T0 T1 T2` accepted as synonyms.
//! Division is only allowed by nonzero constants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FunctionField, PrimeField, RatFunc, Rationals};
use crate::poly::Poly;
use crate::quartic::{monomial_index, TernaryQuartic};
use crate::reduce::reduce_rational;

/// Parsed `--field` argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    Function(u64),
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Function(p) => write!(f, "GF({p})(t)"),
        }
    }
}

/// Parses `QQ`, `GF(p)` or `GF(p)(t)`.
pub fn parse_field_spec(s: &str) -> Result<FieldSpec> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "QQ" || compact == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let bad = || Error::Parse { pos: 0, msg: format!("unknown field spec {s:?}") };
    let rest = compact.strip_prefix("GF(").ok_or_else(bad)?;
    let close = rest.find(')').ok_or_else(bad)?;
    let p: u64 = rest[..close].parse().map_err(|_| bad())?;
    PrimeField::new(p)?;
    match &rest[close + 1..] {
        "" => Ok(FieldSpec::Prime(p)),
        "(t)" => Ok(FieldSpec::Function(p)),
        _ => Err(bad()),
    }
}

const VARS: [&str; 8] = ["T0", "T1", "T2", "u1", "u2", "u3", "T", "t"];
/// Variable slots: `t`, `T`, `u1`, `u2`, `u3`.
const NSLOTS: usize = 5;

fn slot(name: &str) -> usize {
    match name {
        "t" => 0,
        "T" => 1,
        "u1" | "T0" => 2,
        "u2" | "T1" => 3,
        _ => 4,
    }
}

type Exps = [u32; NSLOTS];

/// Sparse polynomial with rational coefficients in the five variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Exps, BigRational>,
}

impl MPoly {
    fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; NSLOTS], c);
        }
        MPoly { terms }
    }

    fn var(s: usize) -> Self {
        let mut e = [0; NSLOTS];
        e[s] = 1;
        MPoly { terms: BTreeMap::from([(e, BigRational::one())]) }
    }

    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let v = terms.entry(*e).or_insert_with(BigRational::zero);
            *v += c;
            if v.is_zero() {
                terms.remove(e);
            }
        }
        MPoly { terms }
    }

    fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = MPoly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = std::array::from_fn(|i| ea[i] + eb[i]);
                out = out.add(&MPoly { terms: BTreeMap::from([(e, ca * cb)]) });
            }
        }
        out
    }

    fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0; NSLOTS]).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; NSLOTS], &BigRational)> {
        self.terms.iter()
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn starts_factor(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => true,
            Some(_) => VARS.iter().any(|v| self.src[self.pos..].starts_with(v)),
            None => false,
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.power()?.as_constant().ok_or(Error::Parse {
                    pos: at,
                    msg: "division by a non-constant".into(),
                })?;
                if d.is_zero() {
                    return Err(Error::Parse { pos: at, msg: "division by zero".into() });
                }
                acc = acc.mul(&MPoly::constant(d.recip()));
            } else if self.starts_factor() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected exponent"));
        }
        let e: u32 = self.src[start..start + digits].parse().map_err(|_| self.err("exponent too large"))?;
        if e > 1000 {
            return Err(self.err("exponent too large"));
        }
        self.pos += digits;
        let mut acc = MPoly::constant(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.src[start..].chars().take_while(char::is_ascii_digit).count();
                self.pos += digits;
                let n: BigInt = self.src[start..self.pos].parse().expect("digits");
                Ok(MPoly::constant(BigRational::from_integer(n)))
            }
            Some(_) => {
                let rest = &self.src[self.pos..];
                let name = VARS
                    .iter()
                    .find(|v| rest.starts_with(**v))
                    .ok_or_else(|| self.err(format!("unexpected input {:?}", rest.chars().next().unwrap_or(' '))))?;
                self.pos += name.len();
                Ok(MPoly::var(slot(name)))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an expression in the variables `t`, `T`, `u1..u3`.
pub fn parse_expr(s: &str) -> Result<MPoly> {
    let mut p = Parser { src: s, pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Fields whose elements can be read from polynomials in `t` with rational
/// coefficients.
pub trait Scalars: Field {
    /// The element given by the `t`-polynomial with coefficients `c[i]` at `t^i`.
    fn from_t_poly(&self, c: &BTreeMap<u32, BigRational>) -> Result<Self::Elem>;
}

fn no_t(c: &BTreeMap<u32, BigRational>) -> Result<BigRational> {
    match c.keys().copied().max() {
        None => Ok(BigRational::zero()),
        Some(0) => Ok(c[&0].clone()),
        Some(_) => Err(Error::Parse { pos: 0, msg: "variable t is not in this field".into() }),
    }
}

fn reduce_or_err(k: &PrimeField, c: &BigRational) -> Result<u64> {
    reduce_rational(k, c)
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("denominator of {c} not invertible mod {}", k.p()) })
}

impl Scalars for Rationals {
    fn from_t_poly(&self, c: &BTreeMap<u32, BigRational>) -> Result<BigRational> {
        no_t(c)
    }
}

impl Scalars for PrimeField {
    fn from_t_poly(&self, c: &BTreeMap<u32, BigRational>) -> Result<u64> {
        reduce_or_err(self, &no_t(c)?)
    }
}

impl Scalars for FunctionField {
    fn from_t_poly(&self, c: &BTreeMap<u32, BigRational>) -> Result<RatFunc> {
        let k = self.base();
        let deg = c.keys().copied().max().unwrap_or(0) as usize;
        let mut coeffs = vec![0u64; deg + 1];
        for (&i, v) in c {
            coeffs[i as usize] = reduce_or_err(&k, v)?;
        }
        Ok(self.from_poly(Poly::new(k, coeffs)))
    }
}

/// Groups the terms of `m` by their exponents in the variables `slots`,
/// leaving `t`-polynomials as coefficients.
fn collect(m: &MPoly, allowed: &[usize]) -> Result<BTreeMap<Vec<u32>, BTreeMap<u32, BigRational>>> {
    let mut out: BTreeMap<Vec<u32>, BTreeMap<u32, BigRational>> = BTreeMap::new();
    for (e, c) in m.terms() {
        for (s, &x) in e.iter().enumerate().skip(1) {
            if x > 0 && !allowed.contains(&s) {
                let name = ["t", "T", "u1", "u2", "u3"][s];
                return Err(Error::Parse { pos: 0, msg: format!("unexpected variable {name}") });
            }
        }
        let key = allowed.iter().map(|&s| e[s]).collect();
        out.entry(key).or_default().insert(e[0], c.clone());
    }
    Ok(out)
}

/// Parses a univariate polynomial in `T` over `field`.
pub fn parse_poly<F: Scalars>(field: &F, s: &str) -> Result<Poly<F>> {
    let m = parse_expr(s)?;
    let grouped = collect(&m, &[1])?;
    let deg = grouped.keys().map(|k| k[0] as usize).max().unwrap_or(0);
    let mut coeffs = vec![field.zero(); deg + 1];
    for (k, c) in &grouped {
        coeffs[k[0] as usize] = field.from_t_poly(c)?;
    }
    Ok(Poly::new(field.clone(), coeffs))
}

/// Parses a homogeneous quartic in `u1, u2, u3` (or `T0, T1, T2`).
pub fn parse_quartic<F: Scalars>(field: &F, s: &str) -> Result<TernaryQuartic<F>> {
    let m = parse_expr(s)?;
    let grouped = collect(&m, &[2, 3, 4])?;
    let mut coeffs = vec![field.zero(); 15];
    for (k, c) in &grouped {
        if k.iter().sum::<u32>() != 4 {
            return Err(Error::Parse { pos: 0, msg: "quartic is not homogeneous of degree 4".into() });
        }
        let v = field.from_t_poly(c)?;
        coeffs[monomial_index([k[0] as usize, k[1] as usize, k[2] as usize])] = v;
    }
    TernaryQuartic::new(field.clone(), 4, coeffs)
}

/// Parses a field element: a polynomial in `t` over the field, or a quotient
/// of integers.
pub fn parse_scalar<F: Scalars>(field: &F, s: &str) -> Result<F::Elem> {
    let m = parse_expr(s)?;
    let grouped = collect(&m, &[])?;
    match grouped.get(&Vec::new()) {
        Some(c) => field.from_t_poly(c),
        None => Ok(field.zero()),
    }
}
