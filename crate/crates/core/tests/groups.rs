use num_bigint::BigUint;
use octad::perm::{
    coset_action, conjugate_in, s8_generators, s8_to_sp6, sp6_group, twofold_stabilizer, two_set_action, u36_group,
    PermGroup, Permutation, SP6_ORDER,
};

#[test]
fn symplectic_group_order() {
    let g = sp6_group();
    assert_eq!(g.order(), BigUint::from(SP6_ORDER));
    assert!(g.is_transitive());
}

#[test]
fn s8_image_has_index_36_and_acts_doubly_transitively() {
    let g = sp6_group();
    let u = u36_group();
    assert_eq!(u.order(), BigUint::from(40320u32));
    assert!(g.contains_group(&u));
    let act = coset_action(&g, &u, 10_000).unwrap();
    assert_eq!(act.degree(), 36);
    let a = act.group().unwrap();
    assert_eq!(a.order(), BigUint::from(SP6_ORDER));
    assert!(a.is_doubly_transitive().unwrap());
    let st = twofold_stabilizer(&a, 0, 1).unwrap();
    assert_eq!(st.order(), BigUint::from(1152u32));
}

#[test]
fn two_set_image_is_s8_and_transitive() {
    let gens = s8_generators().iter().map(|s| two_set_action(s).unwrap()).collect();
    let g = PermGroup::new(28, gens).unwrap();
    assert_eq!(g.order(), BigUint::from(40320u32));
    assert!(g.is_transitive());
}

#[test]
fn embedding_lands_in_symplectic_group() {
    let g = sp6_group();
    for s in s8_generators() {
        assert!(g.contains(&s8_to_sp6(&s).unwrap().to_permutation()));
    }
    let t = Permutation::from_cycles(8, &[&[2, 5]]).unwrap();
    assert!(g.contains(&s8_to_sp6(&t).unwrap().to_permutation()));
}

#[test]
fn conjugacy_within_s8_image() {
    let u = u36_group();
    let t1 = s8_to_sp6(&Permutation::from_cycles(8, &[&[0, 1]]).unwrap()).unwrap().to_permutation();
    let t2 = s8_to_sp6(&Permutation::from_cycles(8, &[&[3, 6]]).unwrap()).unwrap().to_permutation();
    let u1 = PermGroup::new(63, vec![t1]).unwrap();
    let u2 = PermGroup::new(63, vec![t2]).unwrap();
    assert!(conjugate_in(&u1, &u2, &u).unwrap().is_some());
}
