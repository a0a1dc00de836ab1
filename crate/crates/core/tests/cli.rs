use octad::cli::{run, EXIT_CERTIFICATE, EXIT_OK, EXIT_USAGE};
use octad::field::{PrimeField, Ring};
use octad::octad::construct;
use octad::poly::Poly;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXAMPLE_ONE: &str = "T^8 + 42T^4 + 168T^2 + 1152T + 1197";

fn octad(args: &[&str]) -> (i32, String) {
    run(std::iter::once("octad").chain(args.iter().copied()))
}

/// A certified product of eight distinct linear factors over `F_p`.
fn split_poly(p: u64, seed: u64) -> String {
    let k = PrimeField::new(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<u64> = (0..p).collect();
    loop {
        all.shuffle(&mut rng);
        let mut f = Poly::one(k);
        for &r in &all[..8] {
            f = &f * &Poly::new(k, vec![k.neg(&r), k.one()]);
        }
        if construct(&f).unwrap().certificate.passes {
            return f.format_in("T");
        }
    }
}

#[test]
fn non_octad_exits_with_certificate_failure() {
    let (code, out) = octad(&["construct", "--poly", "T^8 - 1"]);
    assert_eq!(code, EXIT_CERTIFICATE);
    assert!(out.contains("certified: false"));
    let (code, _) = octad(&["certify", "--field", "GF(7)", "--poly", "T^8 + 1"]);
    assert_eq!(code, EXIT_CERTIFICATE);
}

#[test]
fn repeated_root_exits_with_certificate_failure() {
    let (code, out) = octad(&["certify", "--poly", "(T-1)^2 (T^6 + T + 3)"]);
    assert_eq!(code, EXIT_CERTIFICATE, "{out}");
    assert!(out.contains("separable: false"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(octad(&["construct", "--poly", "T^8 +* 1"]).0, EXIT_USAGE);
    assert_eq!(octad(&["construct", "--poly", "T^7 + 1"]).0, EXIT_USAGE);
    assert_eq!(octad(&["construct", "--poly", "2T^8 + 1"]).0, EXIT_USAGE);
    assert_eq!(octad(&["construct", "--field", "GF(2)", "--poly", "T^8 + T + 1"]).0, EXIT_USAGE);
    assert_eq!(octad(&["construct", "--field", "GF(15)", "--poly", "T^8 + T + 1"]).0, EXIT_USAGE);
    assert_eq!(octad(&["construct"]).0, EXIT_USAGE);
    assert_eq!(octad(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(octad(&["--help"]).0, EXIT_OK);
}

#[test]
fn construct_example_one() {
    let (code, out) = octad(&["construct", "--poly", EXAMPLE_ONE]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("certified: true"));
    assert!(out.contains("1197,576,84,21;576,0,0,0;84,0,0,0;21,0,0,1"));
}

#[test]
fn split_instance_has_28_rational_bitangents() {
    let f = split_poly(31, 5);
    let (code, out) = octad(&["bitangents", "--field", "GF(31)", "--poly", &f]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.lines().filter(|l| l.ends_with("deg=1")).count(), 28);
    assert!(out.contains(&format!("bitangent_orbits: {}", vec!["1"; 28].join(","))));
    assert!(out.contains("match: true"));
}

#[test]
fn orbit_report_does_not_depend_on_seed() {
    let f = "T^8 + 3T^7 + T^6 + 4T^5 + T^4 + 5T^3 + 9T^2 + 2T + 1";
    let a = octad(&["orbits", "--field", "GF(13)", "--poly", f, "--seed", "1"]);
    let b = octad(&["orbits", "--field", "GF(13)", "--poly", f, "--seed", "99"]);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a, b);
}

#[test]
fn rational_orbits_skip_bad_primes() {
    let (code, out) = octad(&["orbits", "--poly", EXAMPLE_ONE, "--primes", "3,5,9,7,11"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("skipped: 3"));
    assert!(out.contains("skipped: 9"));
    assert!(out.contains("prime: 5"));
    assert!(out.contains("prime: 11"));
    assert!(!out.contains("match: false"));
}

#[test]
fn function_field_orbits_use_specializations() {
    let (code, out) = octad(&["orbits", "--field", "GF(3)(t)", "--poly", "T^8 + tT^5 + 2tT^2 + 1"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("specialization: t=1"));
}

#[test]
fn twists_in_one_square_class_agree() {
    let f = "T^8 + 3T^7 + T^6 + 4T^5 + T^4 + 5T^3 + 9T^2 + 2T + 1";
    let strip = |s: String| s.lines().filter(|l| !l.starts_with("lambda:")).collect::<Vec<_>>().join("\n");
    let (c1, a) = octad(&["twist", "--field", "GF(13)", "--poly", f, "--lambda", "1"]);
    let (c2, b) = octad(&["twist", "--field", "GF(13)", "--poly", f, "--lambda", "9"]);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(strip(a), strip(b));
    let (code, out) = octad(&["twist", "--field", "GF(13)", "--poly", f, "--lambda", "1", "--lambda", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("invariant: true"));
    assert_eq!(octad(&["twist", "--field", "GF(13)", "--poly", f, "--lambda", "0"]).0, EXIT_USAGE);
    assert_eq!(octad(&["twist", "--poly", EXAMPLE_ONE, "--lambda", "1"]).0, EXIT_USAGE);
}

#[test]
fn group_facts_all_pass() {
    let (code, out) = octad(&["group-facts"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("FAIL"));
    assert!(out.contains("1451520"));
}

#[test]
fn canonical_output_is_byte_stable() {
    let args = ["construct", "--canonical", "--field", "GF(3)(t)", "--poly", "T^8 + tT^5 + 2tT^2 + 1"];
    let (code, first) = octad(&args);
    assert_eq!(code, EXIT_OK);
    for _ in 0..3 {
        assert_eq!(octad(&args).1, first);
    }
    let q = octad(&["construct", "--canonical", "--poly", EXAMPLE_ONE]).1;
    let line = q.lines().find_map(|l| l.strip_prefix("quartic: ")).unwrap();
    assert!(!line.contains('u'));
    assert_eq!(line.matches(',').count(), 14);
}
