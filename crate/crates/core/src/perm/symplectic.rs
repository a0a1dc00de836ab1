//! The six-dimensional symplectic space over the two-element field, modeled
//! on even subsets of eight points modulo complementation.
//!
//! Vectors are 6-bit masks in the basis `b_k = {k, k+1}`, `k = 0..5`, and
//! the form is `<A, B> = |A ∩ B| mod 2`.

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

pub const SP6_ORDER: u64 = 1_451_520;

/// `<x, y>`; on basis vectors it is 1 exactly when the indices differ by one.
pub fn form(x: u8, y: u8) -> u8 {
    let mut acc = 0;
    for i in 0..6 {
        if x >> i & 1 == 0 {
            continue;
        }
        if i > 0 {
            acc ^= y >> (i - 1) & 1;
        }
        if i < 5 {
            acc ^= y >> (i + 1) & 1;
        }
    }
    acc
}

/// Coordinates of an even subset of `{0..7}` (an 8-bit mask).
pub fn even_subset_coords(s: u8) -> Result<u8> {
    if s.count_ones() % 2 == 1 {
        return Err(Error::InvalidArgument(format!("subset {s:#010b} has odd size")));
    }
    // a_k = |S ∩ {0..k}| mod 2 describes the representative avoiding 7
    let mut x = 0u8;
    let mut parity = 0u8;
    for k in 0..6 {
        parity ^= s >> k & 1;
        x |= parity << k;
    }
    if s >> 7 & 1 == 1 {
        x ^= 0b01_0101;
    }
    Ok(x)
}

/// A 6x6 matrix over the two-element field, stored by columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sp6Matrix {
    pub cols: [u8; 6],
}

impl Sp6Matrix {
    pub fn identity() -> Self {
        Sp6Matrix { cols: std::array::from_fn(|i| 1 << i) }
    }

    pub fn apply(&self, v: u8) -> u8 {
        (0..6).filter(|&i| v >> i & 1 == 1).fold(0, |acc, i| acc ^ self.cols[i])
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        Sp6Matrix { cols: other.cols.map(|c| self.apply(c)) }
    }

    pub fn preserves_form(&self) -> bool {
        (0..6).all(|i| (0..6).all(|j| form(self.cols[i], self.cols[j]) == form(1 << i, 1 << j)))
    }

    /// The induced permutation of the 63 nonzero vectors, vector `v` being
    /// point `v - 1`.
    pub fn to_permutation(&self) -> Permutation {
        let images = (1..64u8).map(|v| (self.apply(v) - 1) as u32).collect();
        Permutation::from_images(images).expect("invertible matrix")
    }
}

fn permute_subset(sigma: &Permutation, s: u8) -> u8 {
    (0..8).filter(|&i| s >> i & 1 == 1).fold(0, |acc, i| acc | 1 << sigma.apply(i))
}

/// The action of a permutation of 8 points on the symplectic space.
pub fn s8_to_sp6(sigma: &Permutation) -> Result<Sp6Matrix> {
    if sigma.degree() != 8 {
        return Err(Error::InvalidArgument(format!("degree {} instead of 8", sigma.degree())));
    }
    let mut cols = [0u8; 6];
    for (k, c) in cols.iter_mut().enumerate() {
        let b = 0b11u8 << k;
        *c = even_subset_coords(permute_subset(sigma, b))?;
    }
    Ok(Sp6Matrix { cols })
}

/// `x -> x + <x, v> v` on the 63 nonzero vectors.
pub fn transvection(v: u8) -> Permutation {
    let images = (1..64u8)
        .map(|x| {
            let y = if form(x, v) == 1 { x ^ v } else { x };
            (y - 1) as u32
        })
        .collect();
    Permutation::from_images(images).expect("transvections are bijective")
}

/// The symplectic group generated by all 63 transvections.
pub fn sp6_group() -> PermGroup {
    PermGroup::new(63, (1..64u8).map(transvection).collect()).expect("degree 63")
}

/// `(0 1)` and `(0 1 ... 7)`.
pub fn s8_generators() -> Vec<Permutation> {
    vec![
        Permutation::from_cycles(8, &[&[0, 1]]).expect("valid"),
        Permutation::from_cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]]).expect("valid"),
    ]
}

/// The image of the symmetric group on 8 points inside the symplectic group.
pub fn u36_group() -> PermGroup {
    let gens = s8_generators()
        .iter()
        .map(|s| s8_to_sp6(s).expect("degree 8").to_permutation())
        .collect();
    PermGroup::new(63, gens).expect("degree 63")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn form_matches_intersection_parity() {
        let subsets: Vec<u8> = (0..=255u8).filter(|s| s.count_ones() % 2 == 0).collect();
        for &a in &subsets {
            for &b in &subsets {
                let lhs = form(even_subset_coords(a).unwrap(), even_subset_coords(b).unwrap());
                assert_eq!(lhs as u32, (a & b).count_ones() % 2);
            }
        }
    }

    #[test]
    fn coordinates_identify_complements() {
        for s in (0..=255u8).filter(|s| s.count_ones() % 2 == 0) {
            assert_eq!(even_subset_coords(s).unwrap(), even_subset_coords(!s).unwrap());
        }
        for k in 0..6 {
            assert_eq!(even_subset_coords(0b11 << k).unwrap(), 1 << k);
        }
    }

    #[test]
    fn form_is_nondegenerate() {
        for x in 1..64u8 {
            assert!((1..64u8).any(|y| form(x, y) == 1));
        }
    }

    #[test]
    fn embedding_is_a_form_preserving_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        assert_eq!(s8_to_sp6(&Permutation::identity(8)).unwrap(), Sp6Matrix::identity());
        for _ in 0..100 {
            let a = Permutation::random(8, &mut rng);
            let b = Permutation::random(8, &mut rng);
            let fa = s8_to_sp6(&a).unwrap();
            let fb = s8_to_sp6(&b).unwrap();
            assert_eq!(s8_to_sp6(&(&a * &b)).unwrap(), fa.mul(&fb));
            for _ in 0..20 {
                let x: u8 = rng.gen_range(0..64);
                let y: u8 = rng.gen_range(0..64);
                assert_eq!(form(fa.apply(x), fa.apply(y)), form(x, y));
            }
        }
    }

    #[test]
    fn embedding_is_injective_on_transpositions() {
        for i in 0..8 {
            for j in i + 1..8 {
                let t = Permutation::from_cycles(8, &[&[i, j]]).unwrap();
                assert_ne!(s8_to_sp6(&t).unwrap(), Sp6Matrix::identity());
            }
        }
    }

    #[test]
    fn transvections_are_involutions() {
        for v in 1..64u8 {
            let t = transvection(v);
            assert!((&t * &t).is_identity());
            assert!(!t.is_identity());
        }
    }
}
