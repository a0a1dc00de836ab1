//! The fixed checklist of group-theoretic facts and the sampled
//! conjugacy spot-check for subgroups of the `S_8` image.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    coset_action, conjugate_in, s8_generators, s8_to_sp6, sp6_group, twofold_stabilizer, two_set_action,
    u36_group, PermGroup, Permutation, StabChain, SP6_ORDER,
};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub name: String,
    pub expected: String,
    pub observed: String,
}

impl Fact {
    fn new(name: &str, expected: impl ToString, observed: impl ToString) -> Self {
        Fact { name: name.into(), expected: expected.to_string(), observed: observed.to_string() }
    }

    pub fn pass(&self) -> bool {
        self.expected == self.observed
    }

    pub fn format(&self) -> String {
        format!(
            "{}: {} (expected {}) {}",
            self.name,
            self.observed,
            self.expected,
            if self.pass() { "PASS" } else { "FAIL" }
        )
    }
}

/// An element of `g` exchanging `w` and `w2`, if one exists.
pub fn swap_element(g: &PermGroup, w: usize, w2: usize) -> Result<Option<Permutation>> {
    let chain = StabChain::build(g.degree(), g.generators(), &[w, w2])?;
    // u: w -> w2, then s fixing w with s(w2) = u^-1(w)
    let Some(u) = chain.transversal(0, w2) else { return Ok(None) };
    let target = u.inverse().apply(w);
    let Some(s) = chain.transversal(1, target) else { return Ok(None) };
    Ok(Some(u * s))
}

/// One sampled pair `U1`, `g U1 g^-1` inside the `S_8` image.
#[derive(Clone, Debug)]
pub struct AppendixCase {
    pub u1: PermGroup,
    pub g: Permutation,
    pub conjugator: Option<Permutation>,
}

impl AppendixCase {
    /// The conjugator lies in the `S_8` image and conjugates `U1` onto `g U1 g^-1`.
    pub fn verified(&self, u36: &PermGroup) -> bool {
        let Some(h) = &self.conjugator else { return false };
        let u2 = self.u1.conjugate_by(&self.g);
        u36.contains(h) && self.u1.conjugate_by(h).same_group(&u2)
    }
}

/// Builds `count` pairs `U1 ⊆ U36`, `g ∈ Sp6 \ U36` with `g U1 g^-1 ⊆ U36`,
/// and searches `U36` exhaustively for a conjugator.
pub fn appendix_cases(count: usize, seed: u64) -> Result<Vec<AppendixCase>> {
    let big = sp6_group();
    let u36 = u36_group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = big.chain().random_element(&mut rng);
        if u36.contains(&g) {
            continue;
        }
        // elements of U36 ∩ g^-1 U36 g, about one in 35
        let want = 1 + out.len() % 2;
        let mut gens = Vec::new();
        while gens.len() < want {
            let x = u36.chain().random_element(&mut rng);
            if !x.is_identity() && u36.contains(&g.conjugate(&x)) {
                gens.push(x);
            }
        }
        let u1 = PermGroup::new(63, gens)?;
        let u2 = u1.conjugate_by(&g);
        let conjugator = conjugate_in(&u1, &u2, &u36)?;
        out.push(AppendixCase { u1, g, conjugator });
    }
    Ok(out)
}

/// Orders, indices, transitivity and stabilizer facts, plus `samples`
/// swap checks and `appendix` conjugacy spot-checks.
pub fn group_facts(seed: u64, samples: usize, appendix: usize) -> Result<Vec<Fact>> {
    let mut facts = Vec::new();
    let big = sp6_group();
    facts.push(Fact::new("order of Sp6(F2)", SP6_ORDER, big.order()));
    facts.push(Fact::new("Sp6(F2) transitive on 63 vectors", true, big.is_transitive()));
    let u36 = u36_group();
    facts.push(Fact::new("order of S8 image", 40320, u36.order()));
    let inside = s8_generators()
        .iter()
        .all(|s| s8_to_sp6(s).map(|m| big.contains(&m.to_permutation())).unwrap_or(false));
    facts.push(Fact::new("S8 image inside Sp6(F2)", true, inside));
    let act = coset_action(&big, &u36, 10_000)?;
    facts.push(Fact::new("index of S8 image", 36, act.degree()));
    let a36 = act.group()?;
    facts.push(Fact::new("degree-36 action faithful", SP6_ORDER, a36.order()));
    facts.push(Fact::new("degree-36 action doubly transitive", true, a36.is_doubly_transitive()?));
    let st = twofold_stabilizer(&a36, 0, 1)?;
    facts.push(Fact::new("twofold stabilizer order", 1152, st.order()));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut swaps = 0;
    for _ in 0..samples {
        let w = rand::Rng::gen_range(&mut rng, 0..36);
        let mut w2 = rand::Rng::gen_range(&mut rng, 0..35);
        if w2 >= w {
            w2 += 1;
        }
        if let Some(x) = swap_element(&a36, w, w2)? {
            if x.apply(w) == w2 && x.apply(w2) == w && a36.contains(&x) {
                swaps += 1;
            }
        }
    }
    facts.push(Fact::new("sampled point pairs interchanged", samples, swaps));

    let two_set = PermGroup::new(
        28,
        s8_generators().iter().map(two_set_action).collect::<Result<Vec<_>>>()?,
    )?;
    facts.push(Fact::new("order of two-set image", 40320, two_set.order()));
    facts.push(Fact::new("two-set image transitive on 28", true, two_set.is_transitive()));

    if appendix > 0 {
        let cases = appendix_cases(appendix, seed)?;
        let found = cases.iter().filter(|c| c.verified(&u36)).count();
        facts.push(Fact::new("conjugate already in S8 image", appendix, found));
    }
    Ok(facts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swaps_in_symmetric_group() {
        let s5 = PermGroup::new(
            5,
            vec![
                Permutation::from_cycles(5, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            ],
        )
        .unwrap();
        let x = swap_element(&s5, 1, 3).unwrap().unwrap();
        assert_eq!((x.apply(1), x.apply(3)), (3, 1));
        let c5 = PermGroup::new(5, vec![Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()]).unwrap();
        assert!(swap_element(&c5, 0, 1).unwrap().is_none());
    }

    #[test]
    fn two_appendix_cases() {
        let u36 = u36_group();
        for case in appendix_cases(2, 3).unwrap() {
            assert!(!u36.contains(&case.g));
            assert!(case.verified(&u36));
        }
    }
}
