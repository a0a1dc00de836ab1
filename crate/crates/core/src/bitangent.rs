//! Bitangents of the octad quartic over finite fields.
//!
//! The roots of `f` are placed in one extension `L` of the base field. Each
//! pair of octad points `P_i, P_j` gives the line with coefficients
//! `b_k = P_i^T M_k P_j`; every such line is checked to be bitangent.

use crate::error::{Error, Result};
use crate::factor::{self, Factorization};
use crate::field::{ExtensionField, Field, FiniteField, Overfield, Ring};
use crate::octad::{NetOfQuadrics, OctadSpec};
use crate::perm::{pair_index, pairs, two_set_action, Permutation};
use crate::poly::Poly;
use crate::quartic::{restriction_square, SquareDecomposition, TernaryQuartic};

/// Element of the splitting field `L`.
pub type LElem = Vec<u64>;

/// The eight octad points over the splitting field.
#[derive(Clone, Debug)]
pub struct OctadPoints<F: FiniteField> {
    pub over: Overfield<F>,
    pub factorization: Factorization<F>,
    /// Roots in canonical order: factors as sorted by the factorization, and
    /// within a factor of degree `e` the orbit `r, r^q, ..., r^(q^(e-1))` of
    /// its smallest root `r`.
    pub roots: Vec<LElem>,
    /// `(1 : x : x^2 : x^4)` for each root.
    pub points: Vec<[LElem; 4]>,
    /// The permutation `x -> x^q` of root indices.
    pub frobenius: Permutation,
}

impl<F: FiniteField> OctadPoints<F> {
    pub fn field(&self) -> &ExtensionField {
        self.over.field()
    }

    /// Degree of `L` over the base field.
    pub fn degree(&self) -> usize {
        self.over.rel_degree()
    }
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

fn lcm_usize(a: usize, b: usize) -> usize {
    a / gcd_usize(a, b) * b
}

/// Splits `f` over the smallest extension containing all its roots.
pub fn splitting_data<F: FiniteField>(spec: &OctadSpec<F>, seed: u64) -> Result<OctadPoints<F>> {
    let f = spec.poly();
    if !f.is_separable()? {
        return Err(Error::NotSeparable);
    }
    let factorization = factor::factor(f, seed)?;
    let d = factorization.factors.iter().fold(1, |acc, (g, _)| lcm_usize(acc, g.degree().unwrap_or(1)));
    let over = Overfield::new(spec.field(), d, seed)?;
    let l = over.field().clone();
    let mut roots = Vec::with_capacity(8);
    for (g, _) in &factorization.factors {
        let e = g.degree().unwrap_or(0);
        let lifted = g.map(&l, |c| over.embed(c));
        let rs = factor::roots(&lifted, seed)?;
        let first = rs
            .first()
            .cloned()
            .ok_or_else(|| Error::Verification("factor has no root in the splitting field".into()))?;
        let mut r = first;
        for _ in 0..e {
            roots.push(r.clone());
            r = over.base_frobenius(&r);
        }
    }
    if roots.len() != 8 {
        return Err(Error::Verification(format!("found {} roots", roots.len())));
    }
    let images: Vec<u32> = roots
        .iter()
        .map(|x| {
            let y = over.base_frobenius(x);
            roots.iter().position(|z| *z == y).map(|i| i as u32)
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Verification("Frobenius does not permute the roots".into()))?;
    let frobenius = Permutation::from_images(images)?;
    let points = roots
        .iter()
        .map(|x| {
            let x2 = l.mul(x, x);
            let x4 = l.mul(&x2, &x2);
            [l.one(), x.clone(), x2, x4]
        })
        .collect();
    Ok(OctadPoints { over, factorization, roots, points, frobenius })
}

/// A line `b1 u1 + b2 u2 + b3 u3 = 0` with first nonzero coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitangentLine {
    pub pair: (usize, usize),
    pub coeffs: [LElem; 3],
    /// Smallest `e` such that the line is defined over the degree-`e`
    /// extension of the base field.
    pub definition_degree: usize,
}

/// Scales `b` so that its first nonzero entry is 1.
pub fn normalize_line(l: &ExtensionField, b: [LElem; 3]) -> Result<[LElem; 3]> {
    let k = b
        .iter()
        .position(|x| !l.is_zero(x))
        .ok_or_else(|| Error::Degenerate("zero polar vector".into()))?;
    let inv = l.inv(&b[k]).ok_or(Error::DivisionByZero)?;
    Ok(b.map(|x| l.mul(&x, &inv)))
}

/// The line through the polar forms of the net at the pair `(i, j)`.
pub fn bitangent_of_pair<F: FiniteField>(
    net: &NetOfQuadrics<ExtensionField>,
    pts: &OctadPoints<F>,
    i: usize,
    j: usize,
) -> Result<BitangentLine> {
    if i == j || i >= 8 || j >= 8 {
        return Err(Error::InvalidArgument(format!("pair ({i}, {j})")));
    }
    let l = pts.field();
    let b: [LElem; 3] = [
        net.m[0].bilinear(&pts.points[i], &pts.points[j])?,
        net.m[1].bilinear(&pts.points[i], &pts.points[j])?,
        net.m[2].bilinear(&pts.points[i], &pts.points[j])?,
    ];
    let coeffs = normalize_line(l, b)?;
    let definition_degree = pts.over.definition_degree(&coeffs);
    Ok(BitangentLine { pair: (i.min(j), i.max(j)), coeffs, definition_degree })
}

/// Orbit sizes of `frobenius` acting on a set, sorted ascending.
pub fn orbit_sizes(p: &Permutation) -> Vec<usize> {
    let mut v = p.cycle_type();
    v.sort_unstable();
    v
}

/// Orbit multiset of lines given their definition degrees: a degree-`e`
/// line lies in a Frobenius orbit of size `e`.
pub fn orbits_from_degrees(degrees: &[usize]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let max = degrees.iter().copied().max().unwrap_or(0);
    for e in 1..=max {
        let n = degrees.iter().filter(|&&d| d == e).count();
        if n % e != 0 {
            return Err(Error::Verification(format!("{n} lines of degree {e}")));
        }
        out.extend(std::iter::repeat(e).take(n / e));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// Degrees of the irreducible factors of `f`.
    pub factor_degrees: Vec<usize>,
    /// Orbit sizes of the root permutation on 2-subsets.
    pub pair_orbits: Vec<usize>,
    /// Orbit sizes on bitangents, read off from definition degrees.
    pub bitangent_orbits: Vec<usize>,
    /// Definition degree of each line, indexed like the 2-subsets.
    pub line_degrees: Vec<usize>,
    pub all_bitangent: bool,
    pub distinct: bool,
    pub equivariant: bool,
    pub matches: bool,
}

impl OrbitReport {
    /// All per-instance checks at once.
    pub fn all_ok(&self) -> bool {
        self.all_bitangent && self.distinct && self.equivariant && self.matches
    }
}

/// The 28 lines together with their square decompositions.
#[derive(Clone, Debug)]
pub struct BitangentData<F: FiniteField> {
    pub points: OctadPoints<F>,
    pub quartic: TernaryQuartic<ExtensionField>,
    pub lines: Vec<BitangentLine>,
    /// `None` when the restriction is not a square.
    pub squares: Vec<Option<SquareDecomposition<LElem>>>,
}

/// Computes all 28 pair lines and their restrictions.
pub fn bitangent_data<F: FiniteField>(
    spec: &OctadSpec<F>,
    net: &NetOfQuadrics<F>,
    quartic: &TernaryQuartic<F>,
    seed: u64,
) -> Result<BitangentData<F>> {
    let points = splitting_data(spec, seed)?;
    let l = points.field().clone();
    let over = &points.over;
    let net_l = net.map(&l, |c| over.embed(c));
    let quartic_l = quartic.map(&l, |c| over.embed(c));
    let mut lines = Vec::with_capacity(28);
    let mut squares = Vec::with_capacity(28);
    for (i, j) in pairs() {
        let line = bitangent_of_pair(&net_l, &points, i, j)?;
        squares.push(restriction_square(&quartic_l, &line.coeffs)?);
        lines.push(line);
    }
    Ok(BitangentData { points, quartic: quartic_l, lines, squares })
}

impl<F: FiniteField> BitangentData<F> {
    pub fn report(&self) -> Result<OrbitReport> {
        let pts = &self.points;
        let pi = &pts.frobenius;
        let pair_perm = two_set_action(pi)?;
        let pair_orbits = orbit_sizes(&pair_perm);
        let line_degrees: Vec<usize> = self.lines.iter().map(|l| l.definition_degree).collect();
        let bitangent_orbits = orbits_from_degrees(&line_degrees)?;
        let all_bitangent = self.squares.iter().all(Option::is_some);
        let mut distinct = true;
        for a in 0..28 {
            for b in a + 1..28 {
                if self.lines[a].coeffs == self.lines[b].coeffs {
                    distinct = false;
                }
            }
        }
        let mut equivariant = true;
        for (idx, line) in self.lines.iter().enumerate() {
            let (i, j) = line.pair;
            let image = line.coeffs.clone().map(|x| pts.over.base_frobenius(&x));
            let target = pair_index(pi.apply(i), pi.apply(j));
            if image != self.lines[target].coeffs || pair_perm.apply(idx) != target {
                equivariant = false;
            }
        }
        let factor_degrees = pts.factorization.degree_type();
        let matches = pair_orbits == bitangent_orbits;
        Ok(OrbitReport {
            factor_degrees,
            pair_orbits,
            bitangent_orbits,
            line_degrees,
            all_bitangent,
            distinct,
            equivariant,
            matches,
        })
    }

    /// Text form of one line, `i j : (b1 : b2 : b3) deg=e` with 1-based indices.
    pub fn format_line(&self, line: &BitangentLine) -> String {
        let l = self.points.field();
        let c: Vec<String> = line.coeffs.iter().map(|x| l.format(x)).collect();
        format!(
            "{} {} : ({} : {} : {}) deg={}",
            line.pair.0 + 1,
            line.pair.1 + 1,
            c[0],
            c[1],
            c[2],
            line.definition_degree
        )
    }
}

/// Full orbit comparison for one spec over a finite field.
pub fn orbit_report<F: FiniteField>(
    spec: &OctadSpec<F>,
    net: &NetOfQuadrics<F>,
    quartic: &TernaryQuartic<F>,
    seed: u64,
) -> Result<OrbitReport> {
    bitangent_data(spec, net, quartic, seed)?.report()
}

/// Orbit sizes on 2-subsets predicted by the factorization type of `f`.
pub fn predicted_pair_orbits<F: FiniteField>(f: &Poly<F>, seed: u64) -> Result<Vec<usize>> {
    let fac = factor::factor(f, seed)?;
    let mut images = Vec::new();
    let mut start = 0u32;
    for d in fac.degree_type() {
        let d = d as u32;
        images.extend((0..d).map(|k| start + (k + 1) % d));
        start += d;
    }
    let sigma = Permutation::from_images(images)?;
    if sigma.degree() != 8 {
        return Err(Error::InvalidSpec("expected degree 8".into()));
    }
    Ok(orbit_sizes(&two_set_action(&sigma)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::DEFAULT_SEED;
    use crate::field::PrimeField;
    use crate::octad::{build_net, det_quartic, normalize_trace};

    fn spec_of(p: u64, c: &[i64]) -> OctadSpec<PrimeField> {
        normalize_trace(&Poly::from_ints(PrimeField::new(p).unwrap(), c)).unwrap()
    }

    #[test]
    fn irreducible_gives_eight_cycle() {
        // T^8 + T + 3 is irreducible over F_5? search a small irreducible instead
        let k = PrimeField::new(5).unwrap();
        let mut found = None;
        for c0 in 1..5 {
            for c1 in 0..5 {
                let f = Poly::from_ints(k, &[c0, c1, 0, 0, 0, 0, 0, 0, 1]);
                if factor::is_irreducible(&f).unwrap() {
                    found = Some(f);
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
        let spec = normalize_trace(&found.unwrap()).unwrap();
        let pts = splitting_data(&spec, DEFAULT_SEED).unwrap();
        assert_eq!(pts.degree(), 8);
        assert_eq!(pts.frobenius.cycle_type(), vec![8]);
        assert_eq!(predicted_pair_orbits(spec.poly(), 1).unwrap(), vec![4, 8, 8, 8]);
    }

    #[test]
    fn split_polynomial_has_identity_frobenius() {
        let k = PrimeField::new(11).unwrap();
        // roots 1..=8 shifted to trace zero
        let mut f = Poly::one(k);
        for r in 1..=8 {
            f = &f * &Poly::from_ints(k, &[-r, 1]);
        }
        let spec = normalize_trace(&f).unwrap();
        let pts = splitting_data(&spec, 0).unwrap();
        assert_eq!(pts.degree(), 1);
        assert!(pts.frobenius.is_identity());
    }

    #[test]
    fn mixed_factorization_cycle_type() {
        let k = PrimeField::new(7).unwrap();
        // (T)(T-1)(cubic)(cubic), cubics irreducible mod 7
        let cubics: Vec<Poly<PrimeField>> = (0..49)
            .map(|i| Poly::from_ints(k, &[i % 7 + 1, i / 7, 0, 1]))
            .filter(|g| factor::is_irreducible(g).unwrap())
            .take(2)
            .collect();
        let f = &(&Poly::from_ints(k, &[0, 1]) * &Poly::from_ints(k, &[-1, 1])) * &(&cubics[0] * &cubics[1]);
        let spec = normalize_trace(&f).unwrap();
        let pts = splitting_data(&spec, 2).unwrap();
        assert_eq!(pts.degree(), 3);
        let mut ct = pts.frobenius.cycle_type();
        ct.sort_unstable();
        assert_eq!(ct, vec![1, 1, 3, 3]);
    }

    #[test]
    fn polar_form_of_first_generator() {
        let spec = spec_of(13, &[3, 1, 4, 1, 5, 9, 2, 0, 1]);
        let pts = splitting_data(&spec, 4).unwrap();
        let l = pts.field().clone();
        let net = build_net(&spec).unwrap().map(&l, |c| pts.over.embed(c));
        let (x, y) = (&pts.roots[0], &pts.roots[1]);
        let b1 = net.m[0].bilinear(&pts.points[0], &pts.points[1]).unwrap();
        let half = l.inv(&l.from_int(2)).unwrap();
        let expect = l.sub(&l.mul(x, y), &l.mul(&half, &l.add(&l.mul(x, x), &l.mul(y, y))));
        assert_eq!(b1, expect);
        let ij = bitangent_of_pair(&net, &pts, 0, 1).unwrap();
        let ji = bitangent_of_pair(&net, &pts, 1, 0).unwrap();
        assert_eq!(ij, ji);
    }

    #[test]
    fn all_pair_lines_are_bitangents() {
        let spec = spec_of(13, &[3, 1, 4, 1, 5, 9, 2, 0, 1]);
        let net = build_net(&spec).unwrap();
        let q = det_quartic(&net).unwrap();
        let report = orbit_report(&spec, &net, &q, 4).unwrap();
        assert!(report.all_ok(), "{report:?}");
        assert_eq!(report.bitangent_orbits.iter().sum::<usize>(), 28);
    }

    #[test]
    fn orbits_from_degrees_rejects_inconsistent_counts() {
        assert_eq!(orbits_from_degrees(&[1, 2, 2]).unwrap(), vec![1, 2]);
        assert!(orbits_from_degrees(&[2]).is_err());
    }
}
