//! The four worked examples, two over `Q` and two over `F_3(t)`, and the
//! drivers that compare them prime by prime.
//!
//! Printed quartics are compared with the constructed ones only through
//! Frobenius orbit statistics, never coefficient by coefficient.

use crate::bitangent::{bitangent_data, predicted_pair_orbits};
use crate::elimination;
use crate::error::{Error, Result};
use crate::field::{extension_field, ExtensionField, FiniteField, FunctionField, PrimeField, Rationals, Ring};
use crate::octad::{construct, Construction};
use crate::parse::{parse_poly, parse_quartic, FieldSpec};
use crate::poly::Poly;
use crate::quartic::TernaryQuartic;
use crate::reduce::{good_primes, reduce_form, reduce_poly, specialize_form, specialize_poly, BadPrime};

/// Coordinate changes tried by the elimination routines.
const ATTEMPTS: usize = 40;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub number: usize,
    pub field: FieldSpec,
    pub poly: &'static str,
    /// As printed, in the variables `T0, T1, T2`.
    pub quartic: &'static str,
    /// The Galois group of `f`, taken as given.
    pub group: &'static str,
}

pub const FIXTURES: [Fixture; 4] = [
    Fixture {
        number: 1,
        field: FieldSpec::Rationals,
        poly: "T^8 + 42T^4 + 168T^2 + 1152T + 1197",
        quartic: "2T0^3T2 - 5T0^2T2^2 - 3T0T1^3 - 6T0T1^2T2 + 24T0T1T2^2 - 8T0T2^3 + 6T1^3T2 \
                  + 12T1^2T2^2 + 24T1T2^3 - 16T2^4",
        group: "simple group of order 168",
    },
    Fixture {
        number: 2,
        field: FieldSpec::Function(3),
        poly: "T^8 + 2tT^6 + 2t^2T^5 + (t^3+2t^2+t+2)T^4 + 2t^3T^3 + (2t^3+t+2)T^2 \
               + (t^5+t^4+t^3+2t^2)T + (t^6+t^4+2t^3+t^2+1)",
        quartic: "(t^13+t^12+2t^10+t^8+2t^6+2t^4+t^3+t^2+t+1)T0^4 \
                  + (2t^9+2t^8+t^7+t^6+2t^5+t^4+2t+1)T0^3T1 \
                  + (t^10+t^9+t^8+2t^7+t^6+2t^3+t^2+2t+1)T0^3T2 + (t^4+t^3+2t+1)T0^2T1^2 \
                  + (t^6+t^5+2t^4+2t^3+t+1)T0^2T1T2 + (t^7+2t^4+t^3+t^2+2t+2)T0^2T2^2 + T0T1^3 \
                  + tT0T1^2T2 + (t^3+2t^2+t+2)T0T1T2^2 + (2t^3+t+2)T0T2^3 + 2T1T2^3",
        group: "simple group of order 168",
    },
    Fixture {
        number: 3,
        field: FieldSpec::Rationals,
        poly: "T^8 - 5T^6 - T^5 + 7T^4 + T^3 + 4T^2 + 1",
        quartic: "T0^4 - 2T0^3T1 - 5T0^3T2 + 6T0^2T1T2 - 7T0^2T2^2 + 8T0T1^2T2 - 6T0T1T2^2 + 5T0T2^3 \
                  + 8T1^3T2 + T1^2T2^2 - 10T1T2^3 + 2T2^4",
        group: "A8",
    },
    Fixture {
        number: 4,
        field: FieldSpec::Function(3),
        poly: "T^8 + tT^5 + 2tT^2 + 1",
        quartic: "(t^2+t)T0^2T1^2 + T0T1^3 + (t^2+t)T0^3T2 + T0^2T1T2 + 2tT0T2^3 + 2T1T2^3",
        group: "A8",
    },
];

/// Orbit comparison at one prime or one specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCheck {
    pub label: String,
    pub factor_degrees: Vec<usize>,
    /// Orbits of the root permutation on 2-subsets.
    pub predicted: Vec<usize>,
    /// Bitangent orbits of the constructed quartic.
    pub constructed: Vec<usize>,
    /// All per-line checks on the constructed quartic.
    pub constructed_ok: bool,
    /// Bitangent orbits of the printed quartic; `None` when it is singular there.
    pub printed: Option<Vec<usize>>,
}

impl LocalCheck {
    pub fn passes(&self) -> bool {
        self.constructed_ok && self.constructed == self.predicted && self.printed.as_ref() == Some(&self.predicted)
    }

    pub fn format(&self) -> String {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        format!(
            "{}: factors={} pairs={} constructed={} printed={} {}",
            self.label,
            list(&self.factor_degrees),
            list(&self.predicted),
            list(&self.constructed),
            self.printed.as_deref().map_or("singular".to_string(), list),
            if self.passes() { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Clone, Debug)]
pub struct FixtureRun {
    pub certified: bool,
    pub checks: Vec<LocalCheck>,
    /// Primes or points rejected before comparison, with the reason.
    pub skipped: Vec<(String, String)>,
}

impl FixtureRun {
    pub fn all_pass(&self) -> bool {
        self.certified && !self.checks.is_empty() && self.checks.iter().all(LocalCheck::passes)
    }
}

fn local_check<F: FiniteField>(
    label: String,
    c: &Construction<F>,
    printed: &TernaryQuartic<F>,
    seed: u64,
) -> Result<LocalCheck> {
    let data = bitangent_data(&c.spec, &c.net, &c.quartic, seed)?;
    let report = data.report()?;
    let predicted = predicted_pair_orbits(c.spec.poly(), seed)?;
    let printed = if elimination::is_nonsingular(printed, seed, ATTEMPTS)? {
        Some(elimination::bitangent_orbits(printed, seed, ATTEMPTS)?)
    } else {
        None
    };
    Ok(LocalCheck {
        label,
        factor_degrees: report.factor_degrees.clone(),
        predicted,
        constructed: report.bitangent_orbits.clone(),
        constructed_ok: report.all_ok(),
        printed,
    })
}

/// Compares the construction over `Q` and a printed quartic at the first
/// `count` good primes above 3.
pub fn run_rational(f: &Poly<Rationals>, printed: &TernaryQuartic<Rationals>, count: usize, seed: u64) -> Result<FixtureRun> {
    let c = construct(f)?;
    let certified = c.certificate.passes;
    let mut skipped = Vec::new();
    if !certified {
        return Ok(FixtureRun { certified, checks: Vec::new(), skipped });
    }
    let (primes, bad) = good_primes(&c, 3, count)?;
    skipped.extend(bad.into_iter().map(|(p, why)| (format!("p={p}"), why.to_string())));
    let mut checks = Vec::new();
    for p in primes {
        let k = PrimeField::new(p)?;
        let fp = reduce_poly(&k, c.spec.poly()).ok_or(Error::Verification("good prime lost".into()))?;
        let local = construct(&fp)?;
        let Some(printed_p) = reduce_form(&k, printed) else {
            skipped.push((format!("p={p}"), BadPrime::Denominator.to_string()));
            continue;
        };
        checks.push(local_check(format!("p={p}"), &local, &printed_p, seed)?);
    }
    Ok(FixtureRun { certified, checks, skipped })
}

/// Elements of `F_{3^k}` not lying in a smaller field of the chain `F_3 ⊂ F_{3^k}`.
fn new_points(l: &ExtensionField) -> Vec<Vec<u64>> {
    let n = l.size().expect("small field");
    (0..n)
        .map(|i| l.element(i))
        .filter(|x| l.degree() == 1 || x[1..].iter().any(|&c| c != 0))
        .collect()
}

/// Compares the construction over `F_p(t)` and a printed quartic at every
/// point of `F_p`, `F_{p^2}`, `F_{p^3}` where both are certified.
pub fn run_function(
    f: &Poly<FunctionField>,
    printed: &TernaryQuartic<FunctionField>,
    seed: u64,
) -> Result<FixtureRun> {
    let ff = *f.field();
    let p = ff.base().p();
    let c = construct(f)?;
    let certified = c.certificate.passes;
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    if !certified {
        return Ok(FixtureRun { certified, checks, skipped });
    }
    for k in 1..=3 {
        let l = extension_field(p, k)?;
        for tau in new_points(&l) {
            let label = format!("t={} in GF({})", l.format(&tau), p.pow(k as u32));
            let Some(f_tau) = specialize_poly(&ff, &l, &tau, c.spec.poly()) else {
                skipped.push((label, "pole of f".into()));
                continue;
            };
            let local = construct(&f_tau)?;
            if !local.certificate.passes {
                skipped.push((label, "octad certificate fails".into()));
                continue;
            }
            if specialize_form(&ff, &l, &tau, &c.quartic).as_ref() != Some(&local.quartic) {
                return Err(Error::Verification(format!("specialization at {label} does not commute")));
            }
            let Some(printed_tau) = specialize_form(&ff, &l, &tau, printed) else {
                skipped.push((label, "pole of printed quartic".into()));
                continue;
            };
            if !elimination::is_nonsingular(&printed_tau, seed, ATTEMPTS)? {
                skipped.push((label, "printed quartic singular".into()));
                continue;
            }
            checks.push(local_check(label, &local, &printed_tau, seed)?);
        }
    }
    Ok(FixtureRun { certified, checks, skipped })
}

/// Parses and runs one fixture. `count` is the number of good primes used
/// for the fixtures over `Q`.
pub fn run_fixture(fx: &Fixture, count: usize, seed: u64) -> Result<FixtureRun> {
    match fx.field {
        FieldSpec::Rationals => {
            let f = parse_poly(&Rationals, fx.poly)?;
            let q = parse_quartic(&Rationals, fx.quartic)?;
            run_rational(&f, &q, count, seed)
        }
        FieldSpec::Function(p) => {
            let ff = FunctionField::new(PrimeField::new(p)?);
            let f = parse_poly(&ff, fx.poly)?;
            let q = parse_quartic(&ff, fx.quartic)?;
            run_function(&f, &q, seed)
        }
        FieldSpec::Prime(_) => Err(Error::InvalidArgument("fixtures live over Q or F_p(t)".into())),
    }
}

/// The fixture's printed quartic with its `u1^4` coefficient increased by one.
pub fn tampered_quartic<F: crate::parse::Scalars>(field: &F, fx: &Fixture) -> Result<TernaryQuartic<F>> {
    let q = parse_quartic(field, fx.quartic)?;
    let mut coeffs = q.coeffs().to_vec();
    coeffs[0] = field.add(&coeffs[0], &field.one());
    TernaryQuartic::new(field.clone(), 4, coeffs)
}
