//! Permutations and permutation groups.

mod coset;
mod facts;
mod schreier;
mod symplectic;

pub use coset::{coset_action, CosetAction};
pub use facts::{appendix_cases, group_facts, swap_element, AppendixCase, Fact};
pub use schreier::{conjugate_in, twofold_stabilizer, PermGroup, StabChain, MAX_DEGREE, MAX_SEARCH};
pub use symplectic::{
    even_subset_coords, form, s8_generators, s8_to_sp6, sp6_group, transvection, u36_group, Sp6Matrix,
    SP6_ORDER,
};

use std::fmt;
use std::ops::Mul;

use rand::Rng;

use crate::error::{Error, Result};

/// A bijection of `{0, ..., n-1}`. Products compose right to left:
/// `(a * b)(i) = a(b(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidArgument("images do not form a bijection".into()));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                let y = c[(k + 1) % c.len()];
                if x as usize >= n || y as usize >= n {
                    return Err(Error::InvalidArgument(format!("point out of range for degree {n}")));
                }
                images[x as usize] = y;
            }
        }
        Permutation::from_images(images)
    }

    pub fn random<G: Rng + ?Sized>(n: usize, rng: &mut G) -> Self {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            images.swap(i, j);
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &Self) -> Self {
        &(self * other) * &self.inverse()
    }

    /// Lengths of all cycles, fixed points included, in order of first point.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.apply(j);
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        Permutation { images: rhs.images.iter().map(|&x| self.images[x as usize]).collect() }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 0-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut any = false;
        for i in 0..n {
            if seen[i] || self.apply(i) == i {
                continue;
            }
            any = true;
            let mut j = i;
            let mut cyc = Vec::new();
            while !seen[j] {
                seen[j] = true;
                cyc.push(j.to_string());
                j = self.apply(j);
            }
            write!(f, "({})", cyc.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Orbits of a set of permutations on `{0..n-1}`, each sorted, ordered by
/// smallest element.
pub fn orbits(n: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// The 28 unordered pairs of `{0..7}` in lexicographic order.
pub fn pairs() -> Vec<(usize, usize)> {
    (0..8).flat_map(|i| (i + 1..8).map(move |j| (i, j))).collect()
}

/// Lexicographic index of the pair `{i, j}`, `i != j`.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    // pairs starting below a, then the offset within the block of a
    a * (15 - a) / 2 + (b - a - 1)
}

/// The induced action of a permutation of 8 points on the 28 pairs.
pub fn two_set_action(sigma: &Permutation) -> Result<Permutation> {
    if sigma.degree() != 8 {
        return Err(Error::InvalidArgument(format!("degree {} instead of 8", sigma.degree())));
    }
    let images = pairs()
        .into_iter()
        .map(|(i, j)| pair_index(sigma.apply(i), sigma.apply(j)) as u32)
        .collect();
    Permutation::from_images(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pair_indexing() {
        for (k, (i, j)) in pairs().into_iter().enumerate() {
            assert_eq!(pair_index(i, j), k);
            assert_eq!(pair_index(j, i), k);
        }
        assert_eq!(pair_index(6, 7), 27);
    }

    #[test]
    fn composition_convention() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // a(b(1)) = a(2) = 2
        assert_eq!((&a * &b).apply(1), 2);
        assert!((&a * &a.inverse()).is_identity());
    }

    #[test]
    fn two_set_cycle_types() {
        assert!(two_set_action(&Permutation::identity(8)).unwrap().is_identity());
        let t = Permutation::from_cycles(8, &[&[0, 1]]).unwrap();
        let mut ct = two_set_action(&t).unwrap().cycle_type();
        ct.sort_unstable();
        assert_eq!(ct, [vec![1; 16], vec![2; 6]].concat());
        let c = Permutation::from_cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]).unwrap();
        let mut ct = two_set_action(&c).unwrap().cycle_type();
        ct.sort_unstable();
        assert_eq!(ct, vec![4, 8, 8, 8]);
        assert!(two_set_action(&Permutation::identity(7)).is_err());
    }

    #[test]
    fn two_set_action_is_an_injective_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        for _ in 0..200 {
            let a = Permutation::random(8, &mut rng);
            let b = Permutation::random(8, &mut rng);
            let lhs = two_set_action(&(&a * &b)).unwrap();
            let rhs = &two_set_action(&a).unwrap() * &two_set_action(&b).unwrap();
            assert_eq!(lhs, rhs);
            if !a.is_identity() {
                assert!(!two_set_action(&a).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn invalid_images_rejected() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }
}
