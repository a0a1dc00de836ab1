use octad::elimination::is_nonsingular;
use octad::factor::factor;
use octad::field::{Field, FunctionField, PrimeField, Ring};
use octad::linalg::{bareiss_det, Matrix};
use octad::octad::{construct, normalize_trace};
use octad::poly::Poly;
use octad::quartic::smooth_bruteforce;
use proptest::prelude::*;

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn poly_over(p: u64, c: &[u64]) -> Poly<PrimeField> {
    let k = PrimeField::new(p).unwrap();
    Poly::new(k, c.iter().map(|x| x % p).collect())
}

fn prime_and_coeffs(len: usize) -> impl Strategy<Value = (u64, Vec<u64>)> {
    (prop::sample::select(PRIMES.to_vec()), prop::collection::vec(0u64..1000, 1..=len))
}

proptest! {
    #[test]
    fn gcd_divides_and_is_monic((p, a) in prime_and_coeffs(10), b in prop::collection::vec(0u64..1000, 1..10)) {
        let (a, b) = (poly_over(p, &a), poly_over(p, &b));
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
    }

    #[test]
    fn gcd_of_common_multiple((p, a) in prime_and_coeffs(5), b in prop::collection::vec(0u64..1000, 1..5), c in prop::collection::vec(0u64..1000, 2..5)) {
        let (a, b, c) = (poly_over(p, &a), poly_over(p, &b), poly_over(p, &c));
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let g = (&a * &c).gcd(&(&b * &c)).unwrap();
        prop_assert!(g.rem(&c.monic().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn block_diagonal_determinant_is_multiplicative(
        p in prop::sample::select(PRIMES.to_vec()),
        a in prop::collection::vec(0u64..100, 9),
        b in prop::collection::vec(0u64..100, 16),
    ) {
        let k = PrimeField::new(p).unwrap();
        let ma = Matrix::new(k, 3, 3, a.iter().map(|x| x % p).collect()).unwrap();
        let mb = Matrix::new(k, 4, 4, b.iter().map(|x| x % p).collect()).unwrap();
        let mut big = Matrix::zero(k, 7, 7);
        for i in 0..3 { for j in 0..3 { big.set(i, j, *ma.get(i, j)); } }
        for i in 0..4 { for j in 0..4 { big.set(i + 3, j + 3, *mb.get(i, j)); } }
        let lhs = bareiss_det(&big).unwrap();
        prop_assert_eq!(lhs, k.mul(&bareiss_det(&ma).unwrap(), &bareiss_det(&mb).unwrap()));
        prop_assert_eq!(lhs, k.det(&big).unwrap());
    }

    #[test]
    fn rational_function_normalization_is_idempotent(
        p in prop::sample::select(PRIMES.to_vec()),
        n in prop::collection::vec(0u64..100, 1..6),
        d in prop::collection::vec(0u64..100, 1..6),
        m in prop::collection::vec(0u64..100, 1..4),
    ) {
        let k = PrimeField::new(p).unwrap();
        let ff = FunctionField::new(k);
        let (n, d, m) = (poly_over(p, &n), poly_over(p, &d), poly_over(p, &m));
        prop_assume!(!d.is_zero() && !m.is_zero());
        let x = ff.fraction(&n * &m, &d * &m);
        let y = ff.fraction(x.num().clone(), x.den().clone());
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(x, ff.fraction(n, d));
    }

    #[test]
    fn trace_normalization_is_idempotent((p, c) in prime_and_coeffs(8)) {
        let mut f = poly_over(p, &c).into_coeffs();
        f.resize(8, 0);
        f.push(1);
        let f = Poly::new(PrimeField::new(p).unwrap(), f);
        let s = normalize_trace(&f).unwrap();
        prop_assert!(s.is_normalized());
        prop_assert_eq!(normalize_trace(s.poly()).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_reexpands((p, c) in prime_and_coeffs(12), seed in any::<u64>()) {
        let f = poly_over(p, &c);
        prop_assume!(!f.is_zero());
        let fac = factor(&f, seed).unwrap();
        prop_assert_eq!(fac.expand(f.field()), f);
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            prop_assert!(octad::factor::is_irreducible(g).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certified_quartics_are_smooth(p in prop::sample::select(vec![5u64, 7, 11, 13]), c in prop::collection::vec(0u64..1000, 8)) {
        let mut f: Vec<u64> = c.iter().map(|x| x % p).collect();
        f.push(1);
        let con = construct(&Poly::new(PrimeField::new(p).unwrap(), f)).unwrap();
        prop_assume!(con.certificate.passes);
        prop_assert!(smooth_bruteforce(&con.quartic, 1).unwrap());
        prop_assert!(is_nonsingular(&con.quartic, 1, 40).unwrap());
    }
}
