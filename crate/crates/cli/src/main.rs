//! `seqcert`: exact terms, log-behavior checks, and 2-log-convexity
//! certificates for three-term recurrences with polynomial coefficients.
//!
//! Exit codes: 0 = holds / certified, 1 = refuted, 2 = unknown or
//! inapplicable (including every failure where the math ran but reached no
//! verdict), 3 = usage error (bad arguments, unreadable or malformed spec).
//!
//! All values printed to stdout are exact rationals; `--approx` adds
//! clearly marked lossy decimal renderings. Timing goes to stderr so stdout
//! is deterministic for a given input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use seqcert_core::certifier::{certify_two_log_convex, CertVerdict, Certificate, CertifyOptions};
use seqcert_core::sequences::{
    check_log_behavior, clf_closed_form, l_transform, LogBehavior, Recurrence, SequencesError,
    TermTable,
};
use seqcert_core::specfile::{parse_spec, SequenceSpec};

#[derive(Parser)]
#[command(
    name = "seqcert",
    version,
    about = "Exact sequence terms, log-behavior checks, and 2-log-convexity certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate exact terms of the recurrence in a spec file
    Generate(GenerateArgs),
    /// Check a log-behavior property on exactly generated terms
    Check(CheckArgs),
    /// Certify strict 2-log-convexity and emit the certificate
    Certify(CertifyArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Path to a .seq spec file
    spec: PathBuf,
    /// Largest index to generate
    #[arg(long)]
    to: i64,
    /// Add decimal approximations with this many digits (marked lossy)
    #[arg(long, value_name = "DIGITS")]
    approx: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    LogConcave,
    LogConvex,
    LogBalanced,
    KLogConvex,
    QuotientLogConcave,
}

#[derive(Args)]
struct CheckArgs {
    /// Path to a .seq spec file
    spec: PathBuf,
    /// Property to check
    #[arg(long, value_enum)]
    property: PropertyArg,
    /// Layer count; required by (and only by) k-log-convex
    #[arg(long)]
    k: Option<u32>,
    /// Require strict inequalities
    #[arg(long)]
    strict: bool,
    /// Largest index to generate before checking
    #[arg(long)]
    to: i64,
}

#[derive(Args)]
struct CertifyArgs {
    /// Path to a .seq spec file (must carry a [bounds] section)
    spec: PathBuf,
    /// Largest index of the exactly generated prefix
    #[arg(long = "to-prefix")]
    to_prefix: i64,
    /// Write the certificate as JSON to this path
    #[arg(long)]
    output: Option<PathBuf>,
    /// After certifying, re-verify the conclusion on exact terms up to here
    #[arg(long = "verify-to", value_name = "N")]
    verify_to: Option<i64>,
}

/// A failure that ends the run: `code` follows the exit code contract.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

fn undecided(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn refuted(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let friendly = matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            );
            let _ = e.print();
            return if friendly {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            };
        }
    };
    let started = Instant::now();
    let code = match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    };
    eprintln!("elapsed: {} ms", started.elapsed().as_millis());
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Check(args) => cmd_check(args),
        Command::Certify(args) => cmd_certify(args),
    }
}

fn load_spec(path: &Path) -> Result<SequenceSpec, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn recurrence_of(spec: &SequenceSpec) -> Result<Recurrence, Failure> {
    spec.recurrence()
        .map_err(|e| usage(format!("invalid recurrence: {e}")))
}

/// An out-of-range `--to` is the caller's mistake; anything else that stops
/// generation is a no-verdict outcome.
fn generate(rec: &Recurrence, up_to: i64) -> Result<TermTable, Failure> {
    rec.generate_terms(up_to).map_err(|e| match e {
        SequencesError::InvalidRange { .. } => usage(e.to_string()),
        other => undecided(format!("generation failed: {other}")),
    })
}

/// Rounded decimal rendering (half away from zero), for `--approx` only.
fn approximate(value: &BigRational, digits: usize) -> String {
    let sign = if value.is_negative() { "-" } else { "" };
    let num = value.numer().abs();
    let den = value.denom().clone();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (&num * &scale * 2 + &den) / (&den * 2);
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<u8, Failure> {
    let spec = load_spec(&args.spec)?;
    let rec = recurrence_of(&spec)?;
    let table = generate(&rec, args.to)?;
    println!(
        "# {}: exact terms for n = {}..={}",
        spec.name,
        table.origin(),
        table.last_index()
    );
    for (n, value) in table.iter() {
        match args.approx {
            None => println!("{n}: {value}"),
            Some(digits) => println!("{n}: {value} ≈ {}", approximate(value, digits)),
        }
    }
    Ok(0)
}

fn cmd_check(args: CheckArgs) -> Result<u8, Failure> {
    let property = match (args.property, args.k) {
        (PropertyArg::KLogConvex, Some(k)) => LogBehavior::KLogConvex(k),
        (PropertyArg::KLogConvex, None) => {
            return Err(usage("--property k-log-convex requires --k"))
        }
        (_, Some(_)) => return Err(usage("--k only applies to --property k-log-convex")),
        (PropertyArg::LogConcave, None) => LogBehavior::LogConcave,
        (PropertyArg::LogConvex, None) => LogBehavior::LogConvex,
        (PropertyArg::LogBalanced, None) => LogBehavior::LogBalanced,
        (PropertyArg::QuotientLogConcave, None) => LogBehavior::QuotientLogConcave,
    };
    let spec = load_spec(&args.spec)?;
    let rec = recurrence_of(&spec)?;
    let table = generate(&rec, args.to)?;
    let verdict = check_log_behavior(&table, property, args.strict)
        .map_err(|e| undecided(format!("check could not run: {e}")))?;
    println!("spec: {}", spec.name);
    println!(
        "property: {}{}",
        verdict.property,
        if verdict.strict { " (strict)" } else { "" }
    );
    println!("range: n <= {}", args.to);
    if verdict.holds {
        println!("verdict: holds");
        Ok(0)
    } else {
        println!("verdict: fails");
        if let Some(v) = &verdict.first_violation {
            println!("first violation: {v}");
        }
        Ok(1)
    }
}

fn certify_options() -> Result<CertifyOptions, Failure> {
    let mut opts = CertifyOptions::default();
    if let Ok(raw) = std::env::var("SEQCERT_MAX_DEGREE") {
        opts.max_degree = raw.trim().parse().map_err(|_| {
            usage(format!(
                "SEQCERT_MAX_DEGREE must be a nonnegative integer, got '{raw}'"
            ))
        })?;
    }
    Ok(opts)
}

fn cmd_certify(args: CertifyArgs) -> Result<u8, Failure> {
    let spec = load_spec(&args.spec)?;
    let bounds = spec.bounds.as_ref().ok_or_else(|| {
        usage("the spec has no [bounds] section; certification needs ratio bounds")
    })?;
    let rec = recurrence_of(&spec)?;
    let lower = bounds
        .lower_bound()
        .map_err(|e| undecided(format!("lower bound rejected: {e}")))?;
    let upper = bounds
        .upper_bound()
        .map_err(|e| undecided(format!("upper bound rejected: {e}")))?;
    let opts = certify_options()?;
    let cert = certify_two_log_convex(&rec, &lower, &upper, args.to_prefix, &opts)
        .map_err(|e| undecided(format!("certification failed: {e}")))?;

    report_certificate(&spec, &cert);
    if let Some(path) = &args.output {
        fs::write(path, cert.to_json())
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        println!("certificate written to {}", path.display());
    }
    if let Some(up_to) = args.verify_to {
        if cert.is_certified() {
            verify_independently(&spec, &rec, &cert, up_to)?;
        } else {
            println!("independent verification skipped: not certified");
        }
    }
    Ok(match cert.verdict {
        CertVerdict::Certified => 0,
        CertVerdict::Refuted { .. } => 1,
        CertVerdict::Inapplicable { .. } | CertVerdict::Unknown { .. } => 2,
    })
}

fn report_certificate(spec: &SequenceSpec, cert: &Certificate) {
    println!("spec: {}", spec.name);
    match &cert.verdict {
        CertVerdict::Certified => println!(
            "verdict: certified ({})",
            if cert.strict { "strict" } else { "non-strict" }
        ),
        CertVerdict::Refuted { violation } => {
            println!("verdict: refuted");
            println!("counterexample: {violation}");
        }
        CertVerdict::Inapplicable { reason } => {
            println!("verdict: inapplicable");
            println!("reason: {reason}");
        }
        CertVerdict::Unknown { reason } => {
            println!("verdict: unknown");
            println!("reason: {reason}");
        }
    }
    if let Some(n0) = cert.n0 {
        println!("N0 = {n0}");
    }
    if !cert.rays.is_empty() {
        println!("ray claims:");
        for ray in &cert.rays {
            println!(
                "  {} {} from n = {} (established: {})",
                ray.name, ray.claim, ray.from, ray.verdict.kind
            );
        }
    }
    for bound in &cert.bounds {
        println!(
            "{} bound {} valid from n = {}; {} base checks; step gap positive from k = {}",
            bound.direction,
            bound.expr,
            bound.valid_from,
            bound.base_checks.len(),
            bound.step_from
        );
    }
    if let (Some(first), Some(last)) = (cert.prefix_checks.first(), cert.prefix_checks.last()) {
        let strict = cert.prefix_checks.iter().filter(|c| c.strict).count();
        println!(
            "prefix checks: {} <= n <= {}, {} of {} strict",
            first.index,
            last.index,
            strict,
            cert.prefix_checks.len()
        );
    }
}

/// Re-derives the certified conclusion from freshly generated exact terms,
/// without reusing any intermediate of the certification run. Also checks
/// the terms against the spec's builtin closed form when one is named.
fn verify_independently(
    spec: &SequenceSpec,
    rec: &Recurrence,
    cert: &Certificate,
    up_to: i64,
) -> Result<(), Failure> {
    let table = rec
        .generate_terms(up_to)
        .map_err(|e| undecided(format!("verification generation failed: {e}")))?;
    if spec.closed_form.as_deref() == Some("clf-binomial-sum") {
        for (n, value) in table.iter() {
            let Ok(index) = u32::try_from(n) else { continue };
            let expected = BigRational::from_integer(clf_closed_form(index));
            if *value != expected {
                return Err(refuted(format!(
                    "closed form disagrees with the recurrence at n = {n}"
                )));
            }
        }
        println!(
            "closed form agrees with the recurrence for 0 <= n <= {}",
            table.last_index()
        );
    }
    let s = l_transform(&table)
        .map_err(|e| undecided(format!("verification transform failed: {e}")))?;
    let last = up_to - 3;
    for n in s.origin()..=last {
        let lhs = s.get(n + 1).unwrap() * s.get(n + 1).unwrap();
        let rhs = s.get(n).unwrap() * s.get(n + 2).unwrap();
        let ok = if cert.strict { lhs < rhs } else { lhs <= rhs };
        if !ok {
            return Err(refuted(format!(
                "certified inequality fails at n = {n}: {lhs} vs {rhs}"
            )));
        }
    }
    println!(
        "independent verification: conclusion holds exactly for {} <= n <= {last}",
        s.origin()
    );
    Ok(())
}
