//! The octad construction: trace normalization, the subset-sum certificate,
//! the closed-form net of quadrics and the determinantal quartic.
//!
//! For a monic degree-8 `f` with roots `x_1..x_8`, the eight points
//! `(1 : x_i : x_i^2 : x_i^4)` lie on `T1^2 = T0 T2` and `T2^2 = T0 T3`, and on
//! a third quadric whose restriction to the curve `(1, T, T^2, T^4)` is `f`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_basis, rank, Matrix};
use crate::poly::Poly;
use crate::quartic::{det_of_linear_matrix, TernaryQuartic};

/// Exponents of `T` in the curve `(1, T, T^2, T^4)`.
const CURVE_EXPONENTS: [usize; 4] = [0, 1, 2, 4];

/// A monic degree-8 polynomial defining an octad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctadSpec<F: Field> {
    f: Poly<F>,
    normalized: bool,
}

impl<F: Field> OctadSpec<F> {
    pub fn new(f: Poly<F>) -> Result<Self> {
        if f.degree() != Some(8) {
            return Err(Error::InvalidSpec(format!("degree {:?}, expected 8", f.degree())));
        }
        if !f.is_monic() {
            return Err(Error::InvalidSpec("polynomial is not monic".into()));
        }
        let normalized = f.field().is_zero(&f.coeff(7));
        Ok(OctadSpec { f, normalized })
    }

    pub fn field(&self) -> &F {
        self.f.field()
    }

    pub fn poly(&self) -> &Poly<F> {
        &self.f
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Coefficient `c_i` of `T^i`.
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.f.coeff(i)
    }

    fn require_normalized(&self) -> Result<()> {
        if self.normalized {
            Ok(())
        } else {
            Err(Error::NotNormalized)
        }
    }
}

/// Shifts `f` to `f(T - c7/8)`, which has no `T^7` term.
pub fn normalize_trace<F: Field>(f: &Poly<F>) -> Result<OctadSpec<F>> {
    let spec = OctadSpec::new(f.clone())?;
    if spec.normalized {
        return Ok(spec);
    }
    let k = f.field();
    let eighth = k.inv(&k.from_int(8)).ok_or(Error::CharacteristicTwo)?;
    let shift = k.mul(&f.coeff(7), &eighth);
    let arg = Poly::new(k.clone(), vec![k.neg(&shift), k.one()]);
    OctadSpec::new(f.compose(&arg))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate<E> {
    pub separable: bool,
    /// Product of all 70 sums of four distinct roots.
    pub subset_sum_det: E,
    pub passes: bool,
}

/// The 4-subsets of `{0..7}` in lexicographic order.
pub fn four_subsets() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(70);
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                for d in c + 1..8 {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Matrix of the derivation induced by the companion matrix `C` of `f` on
/// the fourth exterior power, in the lexicographic wedge basis. Column `S`
/// holds the image of `e_S`.
pub fn subset_sum_matrix<F: Field>(f: &Poly<F>) -> Result<Matrix<F>> {
    if f.degree() != Some(8) || !f.is_monic() {
        return Err(Error::InvalidSpec("expected a monic polynomial of degree 8".into()));
    }
    let k = f.field();
    let subsets = four_subsets();
    let index: HashMap<[usize; 4], usize> = subsets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = Matrix::zero(k.clone(), 70, 70);
    // C e_i = e_{i+1} for i < 7, C e_7 = -sum_j c_j e_j
    let images = |i: usize| -> Vec<(usize, F::Elem)> {
        if i < 7 {
            vec![(i + 1, k.one())]
        } else {
            (0..8)
                .map(|j| (j, k.neg(&f.coeff(j))))
                .filter(|(_, c)| !k.is_zero(c))
                .collect()
        }
    };
    for (col, s) in subsets.iter().enumerate() {
        for &slot in s {
            for (t, c) in images(slot) {
                if t != slot && s.contains(&t) {
                    continue;
                }
                // moving t into the position of slot passes the members strictly between them
                let (lo, hi) = if t < slot { (t, slot) } else { (slot, t) };
                let passed = s.iter().filter(|&&x| x > lo && x < hi).count();
                let mut target: Vec<usize> = s.iter().map(|&x| if x == slot { t } else { x }).collect();
                target.sort_unstable();
                let row = index[&[target[0], target[1], target[2], target[3]]];
                let c = if passed % 2 == 1 { k.neg(&c) } else { c };
                let v = k.add(m.get(row, col), &c);
                m.set(row, col, v);
            }
        }
    }
    Ok(m)
}

/// Separability and the subset-sum determinant.
pub fn certify_octad<F: Field>(spec: &OctadSpec<F>) -> Result<Certificate<F::Elem>> {
    spec.require_normalized()?;
    let k = spec.field();
    let separable = spec.f.is_separable()?;
    let m = subset_sum_matrix(&spec.f)?;
    let subset_sum_det = k.det(&m)?;
    let passes = separable && !k.is_zero(&subset_sum_det);
    Ok(Certificate { separable, subset_sum_det, passes })
}

/// Three symmetric 4x4 matrices spanning the net of quadrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetOfQuadrics<F: Field> {
    pub m: [Matrix<F>; 3],
}

impl<F: Field> NetOfQuadrics<F> {
    pub fn field(&self) -> &F {
        self.m[0].ring()
    }

    /// `q_k(1, T, T^2, T^4)`.
    pub fn restrict_to_curve(&self, k: usize) -> Poly<F> {
        quadric_on_curve(&self.m[k])
    }

    pub fn map<G: Field>(&self, target: &G, mut f: impl FnMut(&F::Elem) -> G::Elem) -> NetOfQuadrics<G> {
        NetOfQuadrics { m: std::array::from_fn(|i| self.m[i].map(target, &mut f)) }
    }

    pub fn canonical(&self) -> String {
        self.m
            .iter()
            .map(|m| {
                m.rows()
                    .iter()
                    .map(|r| r.iter().map(|x| self.field().format(x)).collect::<Vec<_>>().join(","))
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `x^T M x` evaluated on `x = (1, T, T^2, T^4)`.
pub fn quadric_on_curve<F: Field>(m: &Matrix<F>) -> Poly<F> {
    let k = m.ring();
    let mut c = vec![k.zero(); 9];
    for i in 0..4 {
        for j in 0..4 {
            let e = CURVE_EXPONENTS[i] + CURVE_EXPONENTS[j];
            c[e] = k.add(&c[e], m.get(i, j));
        }
    }
    Poly::new(k.clone(), c)
}

fn symmetric<F: Field>(k: &F, entries: &[((usize, usize), F::Elem)]) -> Matrix<F> {
    let mut m = Matrix::zero(k.clone(), 4, 4);
    for ((i, j), v) in entries {
        m.set(*i, *j, v.clone());
        m.set(*j, *i, v.clone());
    }
    m
}

/// The closed-form net through the octad of a normalized spec.
pub fn build_net<F: Field>(spec: &OctadSpec<F>) -> Result<NetOfQuadrics<F>> {
    spec.require_normalized()?;
    let k = spec.field();
    let half = k.inv(&k.from_int(2)).ok_or(Error::CharacteristicTwo)?;
    let neg_half = k.neg(&half);
    let c = |i: usize| k.mul(&spec.coeff(i), &half);
    let m1 = symmetric(k, &[((1, 1), k.one()), ((0, 2), neg_half.clone())]);
    let m2 = symmetric(k, &[((2, 2), k.one()), ((0, 3), neg_half)]);
    let m3 = symmetric(
        k,
        &[
            ((0, 0), spec.coeff(0)),
            ((0, 1), c(1)),
            ((0, 2), c(2)),
            ((1, 2), c(3)),
            ((0, 3), c(4)),
            ((1, 3), c(5)),
            ((2, 3), c(6)),
            ((3, 3), k.one()),
        ],
    );
    let net = NetOfQuadrics { m: [m1, m2, m3] };
    if net.restrict_to_curve(2) != spec.f
        || !net.restrict_to_curve(0).is_zero()
        || !net.restrict_to_curve(1).is_zero()
    {
        return Err(Error::Verification("net does not restrict to (0, 0, f)".into()));
    }
    Ok(net)
}

/// Index pairs of the ten independent entries of a symmetric 4x4 matrix.
const SYM_ENTRIES: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

/// Solves `q(1, T, T^2, T^4) = c f(T)` for symmetric `q` and scalar `c`
/// directly and returns a basis of the quadrics in the solution space.
pub fn net_kernel_oracle<F: Field>(spec: &OctadSpec<F>) -> Result<Vec<Matrix<F>>> {
    let k = spec.field();
    let mut sys = Matrix::zero(k.clone(), 9, 11);
    for (col, &(i, j)) in SYM_ENTRIES.iter().enumerate() {
        let e = CURVE_EXPONENTS[i] + CURVE_EXPONENTS[j];
        let w = if i == j { k.one() } else { k.from_int(2) };
        sys.set(e, col, w);
    }
    for e in 0..9 {
        sys.set(e, 10, k.neg(&spec.coeff(e)));
    }
    let basis = kernel_basis(&sys);
    Ok(basis
        .into_iter()
        .map(|v| {
            let entries: Vec<_> = SYM_ENTRIES.iter().zip(v).take(10).map(|(ij, x)| (*ij, x)).collect();
            symmetric(k, &entries)
        })
        .collect())
}

fn flatten<F: Field>(ms: &[Matrix<F>]) -> Vec<Vec<F::Elem>> {
    ms.iter()
        .map(|m| SYM_ENTRIES.iter().map(|&(i, j)| m.get(i, j).clone()).collect())
        .collect()
}

/// Whether two lists of symmetric matrices span the same space.
pub fn same_span<F: Field>(a: &[Matrix<F>], b: &[Matrix<F>]) -> Result<bool> {
    let k = a.first().or(b.first()).map(|m| m.ring().clone());
    let Some(k) = k else { return Ok(true) };
    let ra = rank(&Matrix::from_rows(k.clone(), flatten(a))?);
    let rb = rank(&Matrix::from_rows(k.clone(), flatten(b))?);
    let mut both = flatten(a);
    both.extend(flatten(b));
    let rab = rank(&Matrix::from_rows(k, both)?);
    Ok(ra == rab && rb == rab)
}

/// `det(u1 M1 + u2 M2 + u3 M3)`.
pub fn det_quartic<F: Field>(net: &NetOfQuadrics<F>) -> Result<TernaryQuartic<F>> {
    det_of_linear_matrix(&net.m)
}

/// Everything the construction produces for one polynomial.
#[derive(Clone, Debug)]
pub struct Construction<F: Field> {
    pub spec: OctadSpec<F>,
    pub certificate: Certificate<F::Elem>,
    pub net: NetOfQuadrics<F>,
    pub quartic: TernaryQuartic<F>,
}

/// Normalizes, certifies, builds the net and expands the quartic. Runs to
/// completion even when the certificate fails.
pub fn construct<F: Field>(f: &Poly<F>) -> Result<Construction<F>> {
    let spec = normalize_trace(f)?;
    let certificate = certify_octad(&spec)?;
    let net = build_net(&spec)?;
    let quartic = det_quartic(&net)?;
    Ok(Construction { spec, certificate, net, quartic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, Ring};

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_ints(Rationals, c)
    }

    fn example_one() -> Poly<Rationals> {
        q(&[1197, 1152, 168, 0, 42, 0, 0, 0, 1])
    }

    #[test]
    fn normalization() {
        let f = example_one();
        assert_eq!(normalize_trace(&f).unwrap().poly(), &f);
        // T^8 + 8T^7 -> (T-1)^7 (T+7)
        let g = normalize_trace(&q(&[0, 0, 0, 0, 0, 0, 0, 8, 1])).unwrap();
        let expect = &q(&[-1, 1]).pow(7) * &q(&[7, 1]);
        assert_eq!(g.poly(), &expect);
        assert!(g.is_normalized());
        assert!(normalize_trace(&q(&[1, 0, 1])).is_err());
        assert!(normalize_trace(&q(&[0, 0, 0, 0, 0, 0, 0, 0, 2])).is_err());
    }

    #[test]
    fn closed_form_net_for_example_one() {
        let spec = normalize_trace(&example_one()).unwrap();
        let net = build_net(&spec).unwrap();
        let k = Rationals;
        let rows: Vec<Vec<i64>> = vec![vec![1197, 576, 84, 21], vec![576, 0, 0, 0], vec![84, 0, 0, 0], vec![21, 0, 0, 1]];
        let expect = Matrix::from_rows(k, rows.iter().map(|r| r.iter().map(|&x| k.from_int(x)).collect()).collect()).unwrap();
        assert_eq!(net.m[2], expect);
        assert!(net.m.iter().all(Matrix::is_symmetric));
    }

    #[test]
    fn t8_net_is_elementary() {
        let spec = normalize_trace(&q(&[0, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        let net = build_net(&spec).unwrap();
        let mut e = Matrix::zero(Rationals, 4, 4);
        e.set(3, 3, Rationals.one());
        assert_eq!(net.m[2], e);
        assert_eq!(net_kernel_oracle(&spec).unwrap().len(), 3);
    }

    #[test]
    fn unnormalized_spec_rejected() {
        let spec = OctadSpec::new(q(&[0, 0, 0, 0, 0, 0, 0, 8, 1])).unwrap();
        assert_eq!(build_net(&spec).unwrap_err(), Error::NotNormalized);
        assert_eq!(certify_octad(&spec).unwrap_err(), Error::NotNormalized);
    }

    #[test]
    fn certificates() {
        let c = certify_octad(&normalize_trace(&q(&[-1, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap()).unwrap();
        assert!(c.separable);
        assert!(Rationals.is_zero(&c.subset_sum_det));
        assert!(!c.passes);
        let c = certify_octad(&normalize_trace(&q(&[0, 0, 0, 0, 1, 0, 0, 0, 1])).unwrap()).unwrap();
        assert!(!c.separable && !c.passes);
        let c = certify_octad(&normalize_trace(&example_one()).unwrap()).unwrap();
        assert!(c.passes);
    }

    #[test]
    fn net_spans_kernel_over_prime_field() {
        let k = PrimeField::new(101).unwrap();
        let f = Poly::from_ints(k, &[5, 3, 0, 7, 1, 0, 2, 0, 1]);
        let spec = normalize_trace(&f).unwrap();
        let net = build_net(&spec).unwrap();
        let kernel = net_kernel_oracle(&spec).unwrap();
        assert_eq!(kernel.len(), 3);
        assert!(same_span(&net.m, &kernel).unwrap());
    }
}
