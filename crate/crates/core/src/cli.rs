//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 certificate failure,
//! 3 internal verification failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::bitangent::{bitangent_data, OrbitReport};
use crate::error::{Error, Result};
use crate::factor::DEFAULT_SEED;
use crate::field::{Field, FiniteField, FunctionField, PrimeField, Rationals, Ring};
use crate::fixtures::{self, run_rational, FixtureRun, FIXTURES};
use crate::octad::{construct, Construction};
use crate::parse::{parse_field_spec, parse_poly, parse_quartic, parse_scalar, FieldSpec};
use crate::perm::group_facts;
use crate::poly::Poly;
use crate::reduce::{check_prime, good_primes, reduce_poly, specialize_poly};
use crate::twist::{exceptional_structure, twist_invariance_check};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CERTIFICATE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

/// Number of good primes used when `--primes` is absent.
pub const DEFAULT_PRIME_COUNT: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "octad", version, about = "Plane quartics from Cayley octads")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// `QQ`, `GF(p)` or `GF(p)(t)`.
    #[arg(long, global = true, default_value = "QQ")]
    pub field: String,
    /// Monic degree-8 polynomial in `T`.
    #[arg(long, global = true)]
    pub poly: Option<String>,
    /// Primes for reduction of rational input, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Vec<u64>,
    /// Twist parameter; repeat for several.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Vec<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Byte-stable machine-readable output.
    #[arg(long, global = true)]
    pub canonical: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Net of quadrics, quartic and certificate.
    Construct,
    /// Certificate only.
    Certify,
    /// The 28 bitangents with orbit report.
    Bitangents,
    /// Orbit multisets only.
    Orbits,
    /// Exceptional curves of the twists `lambda w^2 = q`.
    Twist,
    /// Group-theoretic checklist.
    GroupFacts,
    /// Runs the four worked examples.
    ReproducePaper,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => (exit_code(&e), format!("error: {e}\n")),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidArgument(_)
        | Error::InvalidSpec(_)
        | Error::NotPrime(_)
        | Error::CharacteristicTwo
        | Error::FieldTooLarge(_) => EXIT_USAGE,
        Error::NotSeparable | Error::Degenerate(_) => EXIT_CERTIFICATE,
        _ => EXIT_VERIFICATION,
    }
}

enum Input {
    Q(Poly<Rationals>),
    P(Poly<PrimeField>),
    T(Poly<FunctionField>),
}

fn read_input(cli: &Cli) -> Result<Input> {
    let spec = parse_field_spec(&cli.field)?;
    let text = cli
        .poly
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--poly is required".into()))?;
    Ok(match spec {
        FieldSpec::Rationals => Input::Q(parse_poly(&Rationals, text)?),
        FieldSpec::Prime(p) => Input::P(parse_poly(&PrimeField::new(p)?, text)?),
        FieldSpec::Function(p) => Input::T(parse_poly(&FunctionField::new(PrimeField::new(p)?), text)?),
    })
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    match cli.command {
        Command::Construct | Command::Certify => {
            let with_net = cli.command == Command::Construct;
            match read_input(cli)? {
                Input::Q(f) => construct_output(&f, &cli.field, with_net, cli.canonical),
                Input::P(f) => construct_output(&f, &cli.field, with_net, cli.canonical),
                Input::T(f) => construct_output(&f, &cli.field, with_net, cli.canonical),
            }
        }
        Command::Bitangents | Command::Orbits => {
            let lines = cli.command == Command::Bitangents;
            match read_input(cli)? {
                Input::Q(f) => rational_orbits(&f, &cli.primes, lines, cli.seed),
                Input::P(f) => {
                    let c = construct(&f)?;
                    if !c.certificate.passes {
                        return Ok((EXIT_CERTIFICATE, "certified: false\n".into()));
                    }
                    let (ok, text) = finite_orbits(&c, lines, cli.seed)?;
                    Ok((if ok { EXIT_OK } else { EXIT_VERIFICATION }, text))
                }
                Input::T(f) => function_orbits(&f, lines, cli.seed),
            }
        }
        Command::Twist => twist_output(cli),
        Command::GroupFacts => {
            let facts = group_facts(cli.seed, 10, 2)?;
            let mut out = String::new();
            for f in &facts {
                writeln!(out, "{}", f.format()).ok();
            }
            let ok = facts.iter().all(|f| f.pass());
            Ok((if ok { EXIT_OK } else { EXIT_VERIFICATION }, out))
        }
        Command::ReproducePaper => reproduce_paper(cli.seed, cli.canonical),
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn construct_output<F: Field>(f: &Poly<F>, field: &str, with_net: bool, canonical: bool) -> Result<(i32, String)> {
    let c = construct(f)?;
    let k = f.field();
    let mut out = String::new();
    writeln!(out, "field: {}", parse_field_spec(field)?).ok();
    writeln!(out, "f: {}", c.spec.poly().format_in("T")).ok();
    writeln!(out, "separable: {}", c.certificate.separable).ok();
    writeln!(out, "subset_sum_det: {}", k.format(&c.certificate.subset_sum_det)).ok();
    writeln!(out, "certified: {}", c.certificate.passes).ok();
    if with_net {
        writeln!(out, "net:").ok();
        writeln!(out, "{}", c.net.canonical()).ok();
        if canonical {
            writeln!(out, "quartic: {}", c.quartic.canonical()).ok();
        } else {
            writeln!(out, "quartic: {}", c.quartic.format_with(["u1", "u2", "u3"])).ok();
        }
    }
    if !c.certificate.passes {
        writeln!(out, "status: uncertified").ok();
        return Ok((EXIT_CERTIFICATE, out));
    }
    Ok((EXIT_OK, out))
}

fn report_block(out: &mut String, r: &OrbitReport) {
    writeln!(out, "factor_degrees: {}", list(&r.factor_degrees)).ok();
    writeln!(out, "pair_orbits: {}", list(&r.pair_orbits)).ok();
    writeln!(out, "bitangent_orbits: {}", list(&r.bitangent_orbits)).ok();
    writeln!(out, "all_bitangent: {}", r.all_bitangent).ok();
    writeln!(out, "distinct: {}", r.distinct).ok();
    writeln!(out, "equivariant: {}", r.equivariant).ok();
    writeln!(out, "match: {}", r.matches).ok();
}

/// Lines and report for a certified construction over a finite field.
fn finite_orbits<F: FiniteField>(c: &Construction<F>, lines: bool, seed: u64) -> Result<(bool, String)> {
    let data = bitangent_data(&c.spec, &c.net, &c.quartic, seed)?;
    let report = data.report()?;
    let mut out = String::new();
    if lines {
        for l in &data.lines {
            writeln!(out, "{}", data.format_line(l)).ok();
        }
    }
    report_block(&mut out, &report);
    Ok((report.all_ok(), out))
}

fn rational_orbits(f: &Poly<Rationals>, primes: &[u64], lines: bool, seed: u64) -> Result<(i32, String)> {
    let c = construct(f)?;
    if !c.certificate.passes {
        return Ok((EXIT_CERTIFICATE, "certified: false\n".into()));
    }
    let mut out = String::new();
    let chosen = if primes.is_empty() {
        let (good, bad) = good_primes(&c, 3, DEFAULT_PRIME_COUNT)?;
        for (p, why) in bad {
            writeln!(out, "skipped: {p} ({why})").ok();
        }
        good
    } else {
        let mut good = Vec::new();
        for &p in primes {
            if !crate::field::is_odd_prime(p) {
                writeln!(out, "skipped: {p} (not an odd prime)").ok();
                continue;
            }
            match check_prime(&c, p)? {
                Ok(()) => good.push(p),
                Err(why) => {
                    writeln!(out, "skipped: {p} ({why})").ok();
                }
            }
        }
        good
    };
    let mut ok = true;
    for p in chosen {
        let k = PrimeField::new(p)?;
        let fp = reduce_poly(&k, c.spec.poly()).ok_or_else(|| Error::Verification("good prime lost".into()))?;
        let local = construct(&fp)?;
        writeln!(out, "prime: {p}").ok();
        let (good, text) = finite_orbits(&local, lines, seed)?;
        ok &= good;
        out.push_str(&text);
    }
    Ok((if ok { EXIT_OK } else { EXIT_VERIFICATION }, out))
}

/// Over `F_p(t)`: reports at every `t` in `F_p` where the certificate survives.
fn function_orbits(f: &Poly<FunctionField>, lines: bool, seed: u64) -> Result<(i32, String)> {
    let ff = *f.field();
    let k = ff.base();
    let c = construct(f)?;
    if !c.certificate.passes {
        return Ok((EXIT_CERTIFICATE, "certified: false\n".into()));
    }
    let mut out = String::new();
    let mut ok = true;
    for tau in 0..k.p() {
        let Some(f_tau) = specialize_poly(&ff, &k, &tau, c.spec.poly()) else {
            writeln!(out, "skipped: t={tau} (pole)").ok();
            continue;
        };
        let local = construct(&f_tau)?;
        if !local.certificate.passes {
            writeln!(out, "skipped: t={tau} (certificate fails)").ok();
            continue;
        }
        writeln!(out, "specialization: t={tau}").ok();
        let (good, text) = finite_orbits(&local, lines, seed)?;
        ok &= good;
        out.push_str(&text);
    }
    Ok((if ok { EXIT_OK } else { EXIT_VERIFICATION }, out))
}

fn twist_output(cli: &Cli) -> Result<(i32, String)> {
    let k = match parse_field_spec(&cli.field)? {
        FieldSpec::Prime(p) => PrimeField::new(p)?,
        _ => return Err(Error::InvalidArgument("twist needs --field GF(p)".into())),
    };
    let Input::P(f) = read_input(cli)? else { unreachable!("prime field input") };
    if cli.lambda.is_empty() {
        return Err(Error::InvalidArgument("at least one --lambda is required".into()));
    }
    let lambdas = cli.lambda.iter().map(|s| parse_scalar(&k, s)).collect::<Result<Vec<_>>>()?;
    if lambdas.iter().any(|l| k.is_zero(l)) {
        return Err(Error::InvalidArgument("lambda must be nonzero".into()));
    }
    let c = construct(&f)?;
    if !c.certificate.passes {
        return Ok((EXIT_CERTIFICATE, "certified: false\n".into()));
    }
    let data = bitangent_data(&c.spec, &c.net, &c.quartic, cli.seed)?;
    let mut out = String::new();
    for lam in &lambdas {
        let rep = exceptional_structure(&data, lam)?;
        writeln!(out, "lambda: {lam}").ok();
        writeln!(out, "{}", rep.format()).ok();
    }
    if lambdas.len() >= 2 {
        writeln!(out, "invariant: {}", twist_invariance_check(&data, &lambdas)?).ok();
    }
    Ok((EXIT_OK, out))
}

fn run_block(out: &mut String, title: &str, run: &FixtureRun, canonical: bool) -> bool {
    let ok = run.all_pass();
    writeln!(out, "{title}: certified {}", if run.certified { "PASS" } else { "FAIL" }).ok();
    for c in &run.checks {
        writeln!(out, "  {}", c.format()).ok();
    }
    if !canonical {
        for (label, why) in &run.skipped {
            writeln!(out, "  skipped {label}: {why}").ok();
        }
    }
    writeln!(out, "{title}: {}", if ok { "PASS" } else { "FAIL" }).ok();
    ok
}

fn reproduce_paper(seed: u64, canonical: bool) -> Result<(i32, String)> {
    let mut out = String::new();
    let mut all = true;
    for fx in &FIXTURES {
        let start = Instant::now();
        let run = fixtures::run_fixture(fx, DEFAULT_PRIME_COUNT, seed)?;
        let title = format!("fixture {} ({}, {})", fx.number, fx.field, fx.group);
        let enough = match fx.field {
            FieldSpec::Function(_) => run.checks.len() >= 5,
            _ => run.checks.len() == DEFAULT_PRIME_COUNT,
        };
        all &= run_block(&mut out, &title, &run, canonical) && enough;
        if !canonical {
            writeln!(out, "  time: {:.2?}", start.elapsed()).ok();
        }
    }
    // negative control: a mutated printed quartic must be detected
    let fx = &FIXTURES[0];
    let f = parse_poly(&Rationals, fx.poly)?;
    let bad = fixtures::tampered_quartic(&Rationals, fx)?;
    let run = run_rational(&f, &bad, DEFAULT_PRIME_COUNT, seed)?;
    let detected = !run_block(&mut out, "tampered fixture 1", &run, canonical);
    writeln!(out, "negative control: {}", if detected { "PASS" } else { "FAIL" }).ok();
    all &= detected;
    writeln!(out, "overall: {}", if all { "PASS" } else { "FAIL" }).ok();
    Ok((if all { EXIT_OK } else { EXIT_VERIFICATION }, out))
}

/// Reads a quartic over the field of `--field` and prints its canonical
/// form; used by tests of the parser round trip.
pub fn canonical_quartic(field: &str, text: &str) -> Result<String> {
    Ok(match parse_field_spec(field)? {
        FieldSpec::Rationals => parse_quartic(&Rationals, text)?.canonical(),
        FieldSpec::Prime(p) => parse_quartic(&PrimeField::new(p)?, text)?.canonical(),
        FieldSpec::Function(p) => parse_quartic(&FunctionField::new(PrimeField::new(p)?), text)?.canonical(),
    })
}
