//! The `polydiff` command line: argument definitions, job execution and
//! report rendering.

mod render;
pub mod schema;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::extension::{validate_spec, ExtensionKind, ExtensionSpec};
use crate::par::ExecMode;
use crate::sweep::SweepConfig;
use schema::{parse_orders, parse_spec, SpecDocument};

pub use render::SCHEMA_VERSION;

/// Largest group order accepted by `oracle`.
pub const ORACLE_SWEEP_LIMIT: u64 = 128;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_REALIZABILITY: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "polydiff", version, about = "Galois module structure of holomorphic polydifferentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ν_ik(m) and Γ_k(m) for every index k.
    Table(SpecArgs),
    /// Multiplicities of the indecomposable summands of Ω_F(m).
    Decompose(SpecArgs),
    /// Explicit basis of Ω_F(m) over a rational base.
    Basis(SpecArgs),
    /// Deformation tangent-space dimensions (single ramified place, m = 2).
    Deform(SpecArgs),
    /// Rank-oracle covariant, fixed-space and Jordan-kernel dimensions.
    Oracle(OracleArgs),
    /// Run the identity suite on a spec, or on a seeded random sweep.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, value_name = "PATH")]
    pub spec: PathBuf,
    /// Order or inclusive range, e.g. `2` or `1..4`.
    #[arg(long, value_name = "INT[..INT]")]
    pub m: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Also require Φ(i,j+1) >= p Φ(i,j) for cyclic towers.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Spec to check; without it a random sweep is run.
    #[arg(long, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    #[arg(long, value_name = "INT[..INT]")]
    pub m: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub strict: bool,
    /// Seed of the random sweep.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random specs in the sweep.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
}

/// What a run writes and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn error(code: i32, message: impl Into<String>) -> Self {
        Outcome { stdout: String::new(), stderr: format!("polydiff: {}\n", message.into()), code }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Validation(_) | Error::Range(_) => EXIT_VALIDATION,
        Error::Realizability { .. } => EXIT_REALIZABILITY,
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
        Error::Internal(_) => EXIT_FAILURE,
    }
}

fn from_error(err: Error) -> Outcome {
    Outcome::error(exit_code(&err), err.to_string())
}

fn load(path: &Path) -> Result<SpecDocument, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::error(EXIT_VALIDATION, format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| Outcome::error(EXIT_VALIDATION, format!("{}: {e}", path.display())))
}

fn check(spec: &ExtensionSpec, strict: bool) -> Result<(), Outcome> {
    let report = validate_spec(spec, strict);
    if report.is_ok() {
        Ok(())
    } else {
        Err(from_error(Error::Validation(report)))
    }
}

fn default_orders(spec: &ExtensionSpec, all: bool) -> Vec<u32> {
    match (spec.kind(), all) {
        (ExtensionKind::Tame, _) => vec![1],
        (_, true) => vec![1, 2, 3, 4],
        (_, false) => vec![2],
    }
}

fn resolve_orders(flag: &Option<String>, doc: &SpecDocument, all: bool) -> Result<Vec<u32>, Outcome> {
    match flag {
        Some(s) => parse_orders(s).map_err(|e| Outcome::error(EXIT_VALIDATION, format!("--m: {e}"))),
        None => Ok(doc.orders.clone().unwrap_or_else(|| default_orders(&doc.spec, all))),
    }
}

fn spec_job(args: &SpecArgs) -> Result<(SpecDocument, Vec<u32>), Outcome> {
    let doc = load(&args.spec)?;
    check(&doc.spec, args.strict)?;
    let orders = resolve_orders(&args.m, &doc, false)?;
    Ok((doc, orders))
}

fn run_inner(cli: &Cli) -> Result<Outcome, Outcome> {
    let mode = ExecMode::default();
    let out = match &cli.command {
        Command::Table(args) => {
            let (doc, orders) = spec_job(args)?;
            render::table(&doc.spec, &orders, args.format, mode).map_err(from_error)?
        }
        Command::Decompose(args) => {
            let (doc, orders) = spec_job(args)?;
            render::decompose(&doc.spec, &orders, args.format, mode).map_err(from_error)?
        }
        Command::Basis(args) => {
            let (doc, orders) = spec_job(args)?;
            render::basis(&doc.spec, &orders, args.format, mode).map_err(from_error)?
        }
        Command::Deform(args) => {
            let doc = load(&args.spec)?;
            check(&doc.spec, args.strict)?;
            render::deform(&doc.spec, args.format).map_err(from_error)?
        }
        Command::Oracle(args) => {
            let q = args.p.checked_pow(args.n).filter(|&q| q <= ORACLE_SWEEP_LIMIT);
            if q.is_none() {
                return Err(Outcome::error(
                    EXIT_UNSUPPORTED,
                    format!("oracle sweeps are limited to p^n <= {ORACLE_SWEEP_LIMIT}"),
                ));
            }
            render::oracle(args.p, args.n, args.format, mode).map_err(from_error)?
        }
        Command::Verify(args) => {
            let report = match &args.spec {
                Some(path) => {
                    let doc = load(path)?;
                    check(&doc.spec, args.strict)?;
                    let orders = resolve_orders(&args.m, &doc, true)?;
                    render::verify_spec(&doc.spec, &orders, args.format, mode)
                }
                None => {
                    let orders = match &args.m {
                        Some(s) => parse_orders(s).map_err(|e| Outcome::error(EXIT_VALIDATION, format!("--m: {e}")))?,
                        None => vec![1, 2, 3, 4],
                    };
                    let cfg = SweepConfig { seed: args.seed, count: args.count, ..SweepConfig::default() };
                    render::verify_sweep(&cfg, &orders, args.format, mode)
                }
            };
            return Ok(Outcome {
                stdout: report.text,
                stderr: String::new(),
                code: if report.failures == 0 { EXIT_OK } else { EXIT_FAILURE },
            });
        }
    };
    Ok(Outcome::ok(out))
}

pub fn run(cli: &Cli) -> Outcome {
    run_inner(cli).unwrap_or_else(|e| e)
}
