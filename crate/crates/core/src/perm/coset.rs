use std::collections::HashMap;

use super::{PermGroup, Permutation, StabChain};
use crate::error::{Error, Result};

/// The action of `G` on the left cosets `gH` by left multiplication.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// Canonical representatives; coset 0 is `H` itself.
    pub reps: Vec<Permutation>,
    /// Images of the generators of `G`, in the same order.
    pub images: Vec<Permutation>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn group(&self) -> Result<PermGroup> {
        PermGroup::new(self.degree(), self.images.clone())
    }
}

/// The element of `gH` whose images of the base points of `H` are
/// lexicographically smallest.
fn canonical_rep(g: &Permutation, h: &StabChain) -> Permutation {
    let mut c = g.clone();
    for k in 0..h.base().len() {
        let orbit = h.basic_orbit(k);
        let best = orbit.iter().copied().min_by_key(|&d| c.apply(d)).expect("nonempty orbit");
        c = &c * h.transversal(k, best).expect("orbit point");
    }
    c
}

/// Enumerates `G/H` from the trivial coset by left translation with the
/// generators of `G`.
pub fn coset_action(g: &PermGroup, h: &PermGroup, max_index: usize) -> Result<CosetAction> {
    if h.degree() != g.degree() {
        return Err(Error::NotSubgroup("degrees differ".into()));
    }
    if !g.contains_group(h) {
        return Err(Error::NotSubgroup("a generator of H is not in G".into()));
    }
    let chain = h.chain();
    let start = canonical_rep(&Permutation::identity(g.degree()), chain);
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut reps = vec![start];
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); g.generators().len()];
    let mut k = 0;
    while k < reps.len() {
        for (gi, x) in g.generators().iter().enumerate() {
            let c = canonical_rep(&(x * &reps[k]), chain);
            let j = match index.get(&c) {
                Some(&j) => j,
                None => {
                    if reps.len() >= max_index {
                        return Err(Error::BoundExceeded(format!("index exceeds {max_index}")));
                    }
                    index.insert(c.clone(), reps.len());
                    reps.push(c);
                    reps.len() - 1
                }
            };
            images[gi].push(j as u32);
        }
        k += 1;
    }
    let images = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetAction { reps, images })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosets_of_a_point_stabilizer() {
        let s4 = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let stab = s4.stabilizer(0).unwrap();
        let act = coset_action(&s4, &stab, 100).unwrap();
        assert_eq!(act.degree(), 4);
        assert_eq!(act.group().unwrap().order_u64(), Some(24));
        let whole = coset_action(&s4, &s4, 100).unwrap();
        assert_eq!(whole.degree(), 1);
        assert!(whole.images.iter().all(Permutation::is_identity));
    }

    #[test]
    fn non_subgroup_rejected() {
        let c3 = PermGroup::new(4, vec![Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap()]).unwrap();
        let t = PermGroup::new(4, vec![Permutation::from_cycles(4, &[&[0, 1]]).unwrap()]).unwrap();
        assert!(matches!(coset_action(&c3, &t, 100), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn index_bound_enforced() {
        let s4 = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let triv = PermGroup::trivial(4);
        assert!(matches!(coset_action(&s4, &triv, 10), Err(Error::BoundExceeded(_))));
    }
}
