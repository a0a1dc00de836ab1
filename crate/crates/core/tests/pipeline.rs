use octad::field::{FiniteField, PrimeField, Rationals, Ring};
use octad::linalg::{rank, Matrix};
use octad::octad::{construct, det_quartic, NetOfQuadrics};
use octad::perm::{two_set_action, Permutation};
use octad::poly::Poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_certified(k: PrimeField, rng: &mut ChaCha8Rng) -> Poly<PrimeField> {
    loop {
        let mut c: Vec<u64> = (0..8).map(|_| k.random_element(rng)).collect();
        c.push(1);
        let f = Poly::new(k, c);
        if construct(&f).unwrap().certificate.passes {
            return f;
        }
    }
}

fn combine<F: Ring>(k: &F, ms: &[&Matrix<F>], cs: &[F::Elem]) -> Matrix<F> {
    let mut out = Matrix::zero(k.clone(), 4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let mut v = k.zero();
            for (m, c) in ms.iter().zip(cs) {
                v = k.add(&v, &k.mul(c, m.get(i, j)));
            }
            out.set(i, j, v);
        }
    }
    out
}

#[test]
fn quadrics_vanish_on_the_octad_curve() {
    let k = PrimeField::new(23).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10 {
        let c = construct(&random_certified(k, &mut rng)).unwrap();
        for i in 0..3 {
            let r = c.net.restrict_to_curve(i).rem(c.spec.poly()).unwrap();
            assert!(r.is_zero());
        }
    }
    let c = construct(&Poly::from_ints(Rationals, &[1197, 1152, 168, 0, 42, 0, 0, 0, 1])).unwrap();
    for i in 0..3 {
        assert!(c.net.restrict_to_curve(i).rem(c.spec.poly()).unwrap().is_zero());
    }
}

#[test]
fn basis_change_in_the_net_is_a_substitution() {
    let k = PrimeField::new(29).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let c = construct(&random_certified(k, &mut rng)).unwrap();
        let (a, b) = (k.random_element(&mut rng), k.random_element(&mut rng));
        let [m1, m2, m3] = c.net.m.clone();
        let m3b = combine(&k, &[&m3, &m1, &m2], &[1, a, b]);
        let changed = det_quartic(&NetOfQuadrics { m: [m1, m2, m3b] }).unwrap();
        let sub = c.quartic.substitute(&[[1, 0, a], [0, 1, b], [0, 0, 1]]);
        assert_eq!(changed, sub);
    }
}

#[test]
fn net_members_have_rank_at_least_three() {
    let k = PrimeField::new(31).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = construct(&random_certified(k, &mut rng)).unwrap();
    let [m1, m2, m3] = &c.net.m;
    for _ in 0..20 {
        let mut u: Vec<u64> = (0..3).map(|_| k.random_element(&mut rng)).collect();
        if u.iter().all(|x| *x == 0) {
            u[rng.gen_range(0..3)] = 1;
        }
        let m = combine(&k, &[m1, m2, m3], &u);
        assert!(rank(&m) >= 3);
    }
}

#[test]
fn transposition_on_two_sets() {
    let t = Permutation::from_cycles(8, &[&[0, 1]]).unwrap();
    let mut ct = two_set_action(&t).unwrap().cycle_type();
    ct.sort_unstable();
    let mut expect = vec![1; 16];
    expect.extend([2; 6]);
    assert_eq!(ct, expect);
}

#[test]
fn shifted_input_gives_the_same_quartic() {
    // f(T - 3) normalizes to the same trace-zero polynomial as f
    let k = Rationals;
    let f = Poly::from_ints(k, &[1, 0, 4, 7, 0, 1, -5, 0, 1]);
    let g = f.compose(&Poly::from_ints(k, &[-3, 1]));
    let (a, b) = (construct(&f).unwrap(), construct(&g).unwrap());
    assert_eq!(a.spec, b.spec);
    assert_eq!(a.quartic, b.quartic);
}
