//! Command-line driver.
//!
//! Exit codes: 0 when every check passes, 1 when at least one fails, 2 on
//! usage or parameter errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::field::{make_field, FieldParams, MAX_FIELD_ORDER};
use crate::identities::{
    generalized_wilson_checks, verify_wilson_prime, verify_wolstenholme_classical, vieta_checks,
    wolstenholme_field_check, CheckResult,
};
use crate::modnum::{primes_up_to, MAX_MODULUS};
use crate::symmetric::{esp_all_product, esp_naive, predicted_sk, SymmetricProfile};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "gfwilson",
    version,
    about = "Verify Wilson- and Wolstenholme-type identities over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity suite on GF(p^n)
    Verify(FieldArgs),
    /// Run the identity suite on every prime power 3 <= q <= max-q
    Sweep(SweepArgs),
    /// Print s_k next to its predicted value for k = 1 .. q-1
    Table(FieldArgs),
    /// Check (p-1)! = -1 mod p for primes up to max-p
    Wilson(PrimeArgs),
    /// Check sum (p-1)!/k = 0 mod p^2 for primes up to max-p
    Wolstenholme(PrimeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// Product expansion of prod (x - a)
    Product,
    /// Literal subset sums (small fields only)
    Naive,
    /// Product expansion, cross-checked against subset sums where feasible
    Both,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Field characteristic
    #[arg(long)]
    pub p: u64,
    /// Extension degree
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long)]
    pub json: bool,
    #[arg(long, value_enum, default_value_t = Strategy::Product)]
    pub strategy: Strategy,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long = "max-q")]
    pub max_q: u64,
    #[arg(long)]
    pub json: bool,
    #[arg(long, value_enum, default_value_t = Strategy::Product)]
    pub strategy: Strategy,
}

#[derive(Debug, Args)]
pub struct PrimeArgs {
    #[arg(long = "max-p")]
    pub max_p: u64,
    #[arg(long)]
    pub json: bool,
    /// Also run p = 3 for Wolstenholme, which is expected to fail
    #[arg(long = "allow-negative-control")]
    pub allow_negative_control: bool,
}

/// Full identity suite for one field, in the CLI's JSON layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldReport {
    pub schema: u32,
    pub subject: String,
    pub p: u64,
    pub n: usize,
    pub q: u64,
    pub modulus: Vec<u64>,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    pub schema: u32,
    pub subject: String,
    pub max_p: u64,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

#[derive(Debug, Serialize)]
struct TableRow {
    k: u64,
    s_k: u64,
    s_k_poly: String,
    predicted: u64,
    matches: bool,
}

#[derive(Debug, Serialize)]
struct TableReport {
    schema: u32,
    subject: String,
    p: u64,
    n: usize,
    q: u64,
    modulus: Vec<u64>,
    rows: Vec<TableRow>,
    all_pass: bool,
}

/// A usage or parameter error, reported on stderr with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn build_field(p: u64, n: usize) -> Result<FieldParams, UsageError> {
    let f = make_field(p, n).map_err(|e| usage(e.to_string()))?;
    if f.q() < 3 {
        return Err(usage(format!(
            "q = {} unsupported: identities require q >= 3",
            f.q()
        )));
    }
    Ok(f)
}

fn profile_for<'f>(
    f: &'f FieldParams,
    strategy: Strategy,
) -> Result<SymmetricProfile<'f>, UsageError> {
    match strategy {
        Strategy::Product | Strategy::Both => Ok(esp_all_product(f)),
        Strategy::Naive => SymmetricProfile::naive(f).map_err(|e| {
            usage(format!(
                "naive strategy unavailable for {}: {}",
                f.name(),
                e
            ))
        }),
    }
}

/// Generalized Wilson, Vieta evaluation and (for `q >= 5`) the field
/// Wolstenholme analogue on one field.
pub fn field_report(f: &FieldParams, strategy: Strategy) -> Result<FieldReport, UsageError> {
    let profile = profile_for(f, strategy)?;
    let identity_err = |e: crate::identities::IdentityError| usage(e.to_string());
    let mut checks = generalized_wilson_checks(&profile)
        .map_err(identity_err)?
        .checks;
    if strategy == Strategy::Both {
        for (k, &s) in (1u64..).zip(profile.values()) {
            // subsets beyond the budget are skipped
            if let Ok(naive) = esp_naive(f, k) {
                checks.push(CheckResult::new(
                    "esp_naive_agreement",
                    &[("p", f.p()), ("n", f.n() as u64), ("q", f.q()), ("k", k)],
                    s.encoding(),
                    naive.encoding(),
                ));
            }
        }
    }
    checks.extend(vieta_checks(&profile).map_err(identity_err)?.checks);
    if f.q() >= 5 {
        checks.push(wolstenholme_field_check(&profile).map_err(identity_err)?);
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(FieldReport {
        schema: SCHEMA_VERSION,
        subject: f.name(),
        p: f.p(),
        n: f.n(),
        q: f.q(),
        modulus: f.modulus().coeffs().to_vec(),
        checks,
        all_pass,
    })
}

/// Prime powers `3 <= q <= max_q` as `(p, n)`, ascending in `q` then `p`.
pub fn prime_powers(max_q: u64) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for p in primes_up_to(max_q) {
        let mut q = p;
        let mut n = 1;
        while q <= max_q {
            if q >= 3 {
                out.push((q, p, n));
            }
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
            n += 1;
        }
    }
    out.sort_unstable();
    out.into_iter().map(|(_, p, n)| (p, n)).collect()
}

fn exit_for(all_pass: bool) -> i32 {
    if all_pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{}", text)
}

fn check_summary(out: &mut dyn Write, report: &FieldReport) -> std::io::Result<()> {
    let mut names: Vec<&str> = Vec::new();
    for c in &report.checks {
        if !names.contains(&c.name.as_str()) {
            names.push(&c.name);
        }
    }
    writeln!(out, "{:<24} {:>8} {:>8}", "check", "total", "passed")?;
    for name in names {
        let group = report.checks.iter().filter(|c| c.name == name);
        let (total, passed) = group.fold((0, 0), |(t, p), c| (t + 1, p + c.pass as usize));
        writeln!(out, "{:<24} {:>8} {:>8}", name, total, passed)?;
    }
    for c in report.checks.iter().filter(|c| !c.pass) {
        writeln!(
            out,
            "failed {} {:?}: expected {}, got {}",
            c.name, c.params, c.expected, c.actual
        )?;
    }
    Ok(())
}

fn modulus_string(f: &FieldParams) -> String {
    f.modulus().to_string()
}

fn run_verify(args: &FieldArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let f = build_field(args.p, args.n)?;
    let report = field_report(&f, args.strategy)?;
    let io = |e: std::io::Error| usage(format!("write failed: {}", e));
    if args.json {
        write_json(out, &report).map_err(io)?;
    } else {
        (|| -> std::io::Result<()> {
            writeln!(
                out,
                "{}  q={}  modulus {}",
                report.subject,
                f.q(),
                modulus_string(&f)
            )?;
            check_summary(out, &report)?;
            writeln!(out, "result: {}", pass_word(report.all_pass))
        })()
        .map_err(io)?;
    }
    Ok(exit_for(report.all_pass))
}

fn run_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    if args.max_q < 3 {
        return Err(usage(format!("empty sweep: max-q = {} < 3", args.max_q)));
    }
    if args.max_q > MAX_FIELD_ORDER {
        return Err(usage(format!("max-q = {} exceeds 2^20", args.max_q)));
    }
    let fields = prime_powers(args.max_q);
    let reports = fields
        .par_iter()
        .map(|&(p, n)| build_field(p, n).and_then(|f| field_report(&f, args.strategy)))
        .collect::<Result<Vec<_>, _>>()?;
    let all_pass = reports.iter().all(|r| r.all_pass);
    let io = |e: std::io::Error| usage(format!("write failed: {}", e));
    if args.json {
        write_json(out, &reports).map_err(io)?;
    } else {
        (|| -> std::io::Result<()> {
            writeln!(
                out,
                "{:<12} {:>8} {:>8} {:>8}  result",
                "field", "q", "checks", "passed"
            )?;
            for r in &reports {
                let passed = r.checks.iter().filter(|c| c.pass).count();
                writeln!(
                    out,
                    "{:<12} {:>8} {:>8} {:>8}  {}",
                    r.subject,
                    r.q,
                    r.checks.len(),
                    passed,
                    pass_word(r.all_pass)
                )?;
            }
            let passed = reports.iter().filter(|r| r.all_pass).count();
            writeln!(
                out,
                "{} fields, {} passed, {} failed",
                reports.len(),
                passed,
                reports.len() - passed
            )
        })()
        .map_err(io)?;
    }
    Ok(exit_for(all_pass))
}

fn run_table(args: &FieldArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let f = build_field(args.p, args.n)?;
    let profile = profile_for(&f, args.strategy)?;
    let rows: Vec<TableRow> = profile
        .values()
        .iter()
        .zip(1u64..)
        .map(|(&s, k)| {
            let predicted = predicted_sk(&f, k).expect("q >= 3 and k in range");
            TableRow {
                k,
                s_k: s.encoding(),
                s_k_poly: s.to_string(),
                predicted: predicted.encoding(),
                matches: s == predicted,
            }
        })
        .collect();
    let all_pass = rows.iter().all(|r| r.matches);
    let io = |e: std::io::Error| usage(format!("write failed: {}", e));
    if args.json {
        let report = TableReport {
            schema: SCHEMA_VERSION,
            subject: f.name(),
            p: f.p(),
            n: f.n(),
            q: f.q(),
            modulus: f.modulus().coeffs().to_vec(),
            rows,
            all_pass,
        };
        write_json(out, &report).map_err(io)?;
    } else {
        (|| -> std::io::Result<()> {
            writeln!(
                out,
                "{}  q={}  modulus {}",
                f.name(),
                f.q(),
                modulus_string(&f)
            )?;
            writeln!(
                out,
                "{:>8} {:>10} {:<24} {:>10}  match",
                "k", "s_k", "s_k (poly)", "predicted"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>8} {:>10} {:<24} {:>10}  {}",
                    r.k,
                    r.s_k,
                    r.s_k_poly,
                    r.predicted,
                    if r.matches { "ok" } else { "FAIL" }
                )?;
            }
            Ok(())
        })()
        .map_err(io)?;
    }
    Ok(exit_for(all_pass))
}

fn prime_report(
    out: &mut dyn Write,
    subject: &str,
    args: &PrimeArgs,
    checks: Vec<CheckResult>,
) -> Result<i32, UsageError> {
    let all_pass = checks.iter().all(|c| c.pass);
    let report = PrimeReport {
        schema: SCHEMA_VERSION,
        subject: subject.to_owned(),
        max_p: args.max_p,
        checks,
        all_pass,
    };
    let io = |e: std::io::Error| usage(format!("write failed: {}", e));
    if args.json {
        write_json(out, &report).map_err(io)?;
    } else {
        (|| -> std::io::Result<()> {
            writeln!(
                out,
                "{:>10} {:>12} {:>12}  result",
                "p", "expected", "actual"
            )?;
            for c in &report.checks {
                writeln!(
                    out,
                    "{:>10} {:>12} {:>12}  {}",
                    c.params["p"],
                    c.expected,
                    c.actual,
                    pass_word(c.pass)
                )?;
            }
            let passed = report.checks.iter().filter(|c| c.pass).count();
            writeln!(
                out,
                "{}: {} primes, {} passed, {} failed",
                subject,
                report.checks.len(),
                passed,
                report.checks.len() - passed
            )
        })()
        .map_err(io)?;
    }
    Ok(exit_for(all_pass))
}

fn run_wilson(args: &PrimeArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    if args.max_p < 3 {
        return Err(usage(format!(
            "max-p = {} < 3: no primes to check",
            args.max_p
        )));
    }
    if args.max_p > MAX_MODULUS {
        return Err(usage(format!("max-p = {} exceeds 2^30", args.max_p)));
    }
    let primes: Vec<u64> = primes_up_to(args.max_p)
        .into_iter()
        .filter(|&p| p >= 3)
        .collect();
    let checks = primes
        .par_iter()
        .map(|&p| verify_wilson_prime(p).map_err(|e| usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    prime_report(out, "wilson", args, checks)
}

/// Largest prime whose square fits the modulus cap.
const WOLSTENHOLME_MAX_P: u64 = 32_749;

fn run_wolstenholme(args: &PrimeArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let min = if args.allow_negative_control { 3 } else { 5 };
    if args.max_p < min {
        return Err(usage(format!(
            "max-p = {} < {}: no primes to check{}",
            args.max_p,
            min,
            if min == 5 {
                " (p = 3 only with --allow-negative-control)"
            } else {
                ""
            }
        )));
    }
    if args.max_p > WOLSTENHOLME_MAX_P {
        return Err(usage(format!(
            "max-p = {} too large: p^2 must not exceed 2^30",
            args.max_p
        )));
    }
    let primes: Vec<u64> = primes_up_to(args.max_p)
        .into_iter()
        .filter(|&p| p >= min)
        .collect();
    let checks = primes
        .par_iter()
        .map(|&p| {
            verify_wolstenholme_classical(p, args.allow_negative_control)
                .map_err(|e| usage(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    prime_report(out, "wolstenholme", args, checks)
}

/// Executes one already-parsed command.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, UsageError> {
    match &cli.command {
        Command::Verify(a) => run_verify(a, out),
        Command::Sweep(a) => run_sweep(a, out),
        Command::Table(a) => run_table(a, out),
        Command::Wilson(a) => run_wilson(a, out),
        Command::Wolstenholme(a) => run_wolstenholme(a, out),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e);
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{}", e);
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            EXIT_USAGE
        }
    }
}
