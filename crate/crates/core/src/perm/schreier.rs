use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::Permutation;
use crate::error::{Error, Result};

/// Largest degree accepted by the stabilizer-chain code.
pub const MAX_DEGREE: usize = 100;

/// Largest group that `conjugate_in` will enumerate.
pub const MAX_SEARCH: u64 = 2_000_000;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Permutation>,
    /// `transversal[d]` maps the base point to `d`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
    /// Schreier generators `(orbit position, generator index)` already sifted.
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[base] = Some(Permutation::identity(n));
        Level { base, gens: Vec::new(), transversal, orbit: vec![base], checked: HashSet::new() }
    }

    /// Extends the orbit with the current generators, keeping existing
    /// transversal elements.
    fn extend_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let d = self.orbit[k];
            for g in &self.gens {
                let e = g.apply(d);
                if self.transversal[e].is_none() {
                    let u = self.transversal[d].as_ref().expect("orbit point");
                    self.transversal[e] = Some(g * u);
                    self.orbit.push(e);
                }
            }
            k += 1;
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Schreier–Sims. Base points are taken from `prefix` first, then as the
    /// smallest point moved by a new strong generator.
    pub fn build(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::BoundExceeded(format!("degree {degree} > {MAX_DEGREE}")));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::InvalidArgument(format!(
                    "generator of degree {} in a group of degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut chain = StabChain { degree, levels: Vec::new() };
        for &b in prefix {
            if b >= degree || chain.levels.iter().any(|l| l.base == b) {
                return Err(Error::InvalidArgument(format!("bad base point {b}")));
            }
            chain.levels.push(Level::new(degree, b));
        }
        for g in gens.iter().filter(|g| !g.is_identity()) {
            chain.add_strong_generator(g.clone(), 0);
        }
        chain.close();
        Ok(chain)
    }

    /// Adds `g`, which fixes the base points of levels `< from`, to levels
    /// `from..=j` where `j` is the first level whose base point it moves.
    fn add_strong_generator(&mut self, g: Permutation, from: usize) -> usize {
        let fixes_upto = (from..self.levels.len())
            .find(|&l| g.apply(self.levels[l].base) != self.levels[l].base)
            .unwrap_or(self.levels.len());
        if fixes_upto == self.levels.len() {
            let b = g.smallest_moved_point().expect("non-identity");
            self.levels.push(Level::new(self.degree, b));
        }
        for l in from..=fixes_upto {
            self.levels[l].gens.push(g.clone());
            self.levels[l].extend_orbit();
        }
        fixes_upto
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// where it stopped (`levels.len()` when it passed every level).
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let d = g.apply(level.base);
            match &level.transversal[d] {
                Some(u) => g = &u.inverse() * &g,
                None => return (g, l),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    fn close(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let l = i - 1;
            match self.find_failing_schreier_generator(l) {
                None => i -= 1,
                Some(residue) => {
                    let j = self.add_strong_generator(residue, l + 1);
                    i = j + 1;
                }
            }
        }
    }

    fn find_failing_schreier_generator(&mut self, l: usize) -> Option<Permutation> {
        let mut pos = 0;
        while pos < self.levels[l].orbit.len() {
            let d = self.levels[l].orbit[pos];
            for gi in 0..self.levels[l].gens.len() {
                if self.levels[l].checked.contains(&(pos, gi)) {
                    continue;
                }
                let level = &self.levels[l];
                let s = &level.gens[gi];
                let u = level.transversal[d].as_ref().expect("orbit point");
                let su = s * u;
                let v = level.transversal[su.apply(level.base)].as_ref().expect("closed orbit");
                let h = &v.inverse() * &su;
                self.levels[l].checked.insert((pos, gi));
                if h.is_identity() {
                    continue;
                }
                let (r, _) = self.sift_from(h, l + 1);
                if !r.is_identity() {
                    return Some(r);
                }
            }
            pos += 1;
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    /// Strong generators fixing the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        self.levels.get(k).map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Orbit of the `k`-th base point under the `k`-th stabilizer.
    pub fn basic_orbit(&self, k: usize) -> &[usize] {
        &self.levels[k].orbit
    }

    /// Transversal element of level `k` mapping its base point to `d`.
    pub fn transversal(&self, k: usize, d: usize) -> Option<&Permutation> {
        self.levels.get(k).and_then(|l| l.transversal[d].as_ref())
    }

    /// A uniformly random element.
    pub fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in &self.levels {
            let d = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = &g * level.transversal[d].as_ref().expect("orbit point");
        }
        g
    }

    /// Every element exactly once, as `u_0 u_1 ... u_(k-1)` over the levels.
    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        let sizes = self.orbit_sizes();
        let total: usize = sizes.iter().product();
        let mut counter = vec![0usize; sizes.len()];
        (0..total).map(move |idx| {
            if idx > 0 {
                for (c, &s) in counter.iter_mut().zip(&sizes).rev() {
                    *c += 1;
                    if *c < s {
                        break;
                    }
                    *c = 0;
                }
            }
            let mut g = Permutation::identity(self.degree);
            for (level, &c) in self.levels.iter().zip(&counter) {
                g = &g * level.transversal[level.orbit[c]].as_ref().expect("orbit point");
            }
            g
        })
    }
}

/// A permutation group given by generators, with a lazily built
/// stabilizer chain.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup { degree: self.degree, gens: self.gens.clone(), chain }
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::BoundExceeded(format!("degree {degree} > {MAX_DEGREE}")));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidArgument(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup { degree, gens, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, gens: Vec::new(), chain: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            StabChain::build(self.degree, &self.gens, &[]).expect("validated at construction")
        })
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Whether every generator of `h` lies in this group.
    pub fn contains_group(&self, h: &PermGroup) -> bool {
        h.degree == self.degree && h.gens.iter().all(|g| self.contains(g))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        super::orbits(self.degree, &self.gens)
            .into_iter()
            .find(|o| o.contains(&point))
            .unwrap_or_else(|| vec![point])
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Point stabilizer of `point`.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        let chain = StabChain::build(self.degree, &self.gens, &[point])?;
        PermGroup::new(self.degree, chain.stabilizer_generators(1))
    }

    /// Whether the stabilizer of a point is transitive on the other points.
    pub fn is_doubly_transitive(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Ok(false);
        }
        if self.degree <= 2 {
            return Ok(true);
        }
        let stab = self.stabilizer(0)?;
        Ok(stab.orbit(1).len() == self.degree - 1)
    }

    /// `g H g^-1` as a generated group.
    pub fn conjugate_by(&self, g: &Permutation) -> PermGroup {
        PermGroup {
            degree: self.degree,
            gens: self.gens.iter().map(|h| g.conjugate(h)).collect(),
            chain: OnceLock::new(),
        }
    }

    /// Equality of the generated groups.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.contains_group(other)
    }
}

/// Generators of the stabilizer of both `w` and `w2`.
pub fn twofold_stabilizer(g: &PermGroup, w: usize, w2: usize) -> Result<PermGroup> {
    if w == w2 {
        return Err(Error::InvalidArgument("the two points must differ".into()));
    }
    if w >= g.degree() || w2 >= g.degree() {
        return Err(Error::InvalidArgument("point out of range".into()));
    }
    let chain = StabChain::build(g.degree(), g.generators(), &[w, w2])?;
    PermGroup::new(g.degree(), chain.stabilizer_generators(2))
}

/// Exhaustive search of `search` for an element conjugating `u1` onto `u2`.
pub fn conjugate_in(u1: &PermGroup, u2: &PermGroup, search: &PermGroup) -> Result<Option<Permutation>> {
    let size = search.order();
    if size > BigUint::from(MAX_SEARCH) {
        return Err(Error::BoundExceeded(format!("search space of order {size}")));
    }
    if u1.order() != u2.order() {
        return Ok(None);
    }
    for g in search.chain().elements() {
        if u1.generators().iter().all(|h| u2.contains(&g.conjugate(h))) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s8() -> PermGroup {
        PermGroup::new(
            8,
            vec![
                Permutation::from_cycles(8, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        assert_eq!(s8().order(), BigUint::from(40320u32));
        assert_eq!(PermGroup::trivial(5).order(), BigUint::one());
    }

    #[test]
    fn alternating_group_membership() {
        let a5 = PermGroup::new(
            5,
            vec![
                Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
                Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a5.order(), BigUint::from(60u32));
        assert!(!a5.contains(&Permutation::from_cycles(5, &[&[0, 1]]).unwrap()));
        assert!(a5.contains(&Permutation::from_cycles(5, &[&[0, 1], &[2, 3]]).unwrap()));
    }

    #[test]
    fn element_iterator_is_exhaustive() {
        let g = s8().stabilizer(0).unwrap().stabilizer(1).unwrap();
        assert_eq!(g.order(), BigUint::from(720u32));
        let all: HashSet<Permutation> = g.chain().elements().collect();
        assert_eq!(all.len(), 720);
        assert!(all.iter().all(|x| x.apply(0) == 0 && x.apply(1) == 1));
    }

    #[test]
    fn twofold_stabilizer_of_s8() {
        let h = twofold_stabilizer(&s8(), 2, 5).unwrap();
        assert_eq!(h.order(), BigUint::from(720u32));
        assert!(h.generators().iter().all(|g| g.apply(2) == 2 && g.apply(5) == 5));
        assert!(twofold_stabilizer(&s8(), 3, 3).is_err());
    }

    #[test]
    fn random_elements_are_members() {
        let g = s8();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert!(g.contains(&g.chain().random_element(&mut rng)));
        }
    }

    #[test]
    fn transpositions_are_conjugate() {
        let u1 = PermGroup::new(8, vec![Permutation::from_cycles(8, &[&[0, 1]]).unwrap()]).unwrap();
        let u2 = PermGroup::new(8, vec![Permutation::from_cycles(8, &[&[2, 3]]).unwrap()]).unwrap();
        let g = conjugate_in(&u1, &u2, &s8()).unwrap().unwrap();
        assert!(u2.contains(&g.conjugate(&u1.generators()[0])));
        assert!(conjugate_in(&u1, &u1, &s8()).unwrap().unwrap().is_identity());
    }
}
