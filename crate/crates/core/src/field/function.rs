use num_bigint::BigInt;

use super::{Domain, Field, PrimeField, Ring};
use crate::error::Result;
use crate::linalg::{det_unit_first, Matrix};
use crate::poly::{Poly, PolyRing};

/// The rational function field `F_p(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FunctionField {
    base: PrimeField,
}

/// A reduced fraction `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly<PrimeField>,
    den: Poly<PrimeField>,
}

impl RatFunc {
    pub fn num(&self) -> &Poly<PrimeField> {
        &self.num
    }

    pub fn den(&self) -> &Poly<PrimeField> {
        &self.den
    }
}

impl FunctionField {
    pub fn new(base: PrimeField) -> Self {
        FunctionField { base }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn poly_ring(&self) -> PolyRing<PrimeField> {
        PolyRing::new(self.base)
    }

    /// Builds `num/den` in canonical form. Panics on a zero denominator.
    pub fn fraction(&self, num: Poly<PrimeField>, den: Poly<PrimeField>) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return self.zero();
        }
        let g = num.gcd(&den).expect("same context");
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading_coeff();
        let inv = self.base.inv(&lc).expect("nonzero leading coefficient");
        num = num.scale(&inv);
        den = den.scale(&inv);
        RatFunc { num, den }
    }

    pub fn from_poly(&self, num: Poly<PrimeField>) -> RatFunc {
        RatFunc { num, den: Poly::one(self.base) }
    }

    pub fn t(&self) -> RatFunc {
        self.from_poly(Poly::x(self.base))
    }

    /// Evaluates at a point of a field containing `F_p`; `None` at a pole.
    pub fn eval_at<G: Field>(&self, a: &RatFunc, target: &G, point: &G::Elem) -> Option<G::Elem> {
        let lift = |p: &Poly<PrimeField>| {
            p.map(target, |c| target.from_int(*c as i64)).eval(point)
        };
        target.div(&lift(&a.num), &lift(&a.den))
    }
}

impl Ring for FunctionField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc { num: Poly::zero(self.base), den: Poly::one(self.base) }
    }

    fn one(&self) -> RatFunc {
        self.from_poly(Poly::one(self.base))
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.den == b.den {
            return self.fraction(&a.num + &b.num, a.den.clone());
        }
        self.fraction(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
    }

    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: -&a.num, den: a.den.clone() }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        self.fraction(&a.num * &b.num, &a.den * &b.den)
    }

    fn from_int(&self, n: i64) -> RatFunc {
        self.from_poly(Poly::constant(self.base, self.base.from_int(n)))
    }

    fn from_bigint(&self, n: &BigInt) -> RatFunc {
        self.from_poly(Poly::constant(self.base, self.base.from_bigint(n)))
    }

    fn characteristic(&self) -> u64 {
        self.base.p()
    }

    fn format(&self, a: &RatFunc) -> String {
        if a.den.degree() == Some(0) {
            a.num.format_in("t")
        } else {
            format!("({})/({})", a.num.format_in("t"), a.den.format_in("t"))
        }
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn needs_parens(&self, a: &RatFunc) -> bool {
        a.den.degree() != Some(0) || a.num.coeffs().iter().filter(|c| **c != 0).count() > 1
    }
}

impl Domain for FunctionField {
    fn exact_div(&self, a: &RatFunc, b: &RatFunc) -> Option<RatFunc> {
        self.div(a, b)
    }
}

impl Field for FunctionField {
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        if a.num.is_zero() {
            return None;
        }
        Some(self.fraction(a.den.clone(), a.num.clone()))
    }

    fn function_variable(&self) -> Option<RatFunc> {
        Some(self.t())
    }

    /// Scales each row to polynomial entries and eliminates over `F_p[t]`.
    fn det(&self, m: &Matrix<Self>) -> Result<RatFunc> {
        let ring = self.poly_ring();
        let mut scale = Poly::one(self.base);
        let mut rows = Vec::with_capacity(m.nrows());
        for i in 0..m.nrows() {
            let mut lcm = Poly::one(self.base);
            for x in m.row(i) {
                let g = lcm.gcd(&x.den)?;
                lcm = (&lcm * &x.den).exact_div(&g)?;
            }
            scale = &scale * &lcm;
            let row = m
                .row(i)
                .iter()
                .map(|x| Ok(&x.num * &lcm.exact_div(&x.den)?))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let pm = Matrix::from_rows(ring, rows)?;
        let base = self.base;
        let d = det_unit_first(&pm, |x| {
            (x.degree() == Some(0)).then(|| Poly::constant(base, base.inv(&x.coeff(0)).expect("nonzero")))
        })?;
        Ok(self.fraction(d, scale))
    }
}
