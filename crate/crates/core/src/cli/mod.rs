//! Command-line front end: argument and config-file parsing, dispatch and
//! record output.

mod commands;
pub mod record;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use record::{encode_csv, encode_jsonl, write_atomic, ResultRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "AMENABLE_DIM_THREADS";

#[derive(Parser, Debug, Clone)]
#[command(
    name = "amenable-dim",
    version,
    about = "Følner-set calculus, quasi-tilings, widths and spectral dimension counts over Z^d",
    long_about = "Each subcommand evaluates one family of quantities attached to finite subsets of Z^d \
and emits machine-readable records. Exit status is 0 on success, 1 on a usage error and 2 when a \
checked inequality or invariant fails.\n\nSets are written as point lists `x,y;x,y;...` or as boxes \
`lo..hi[,lo..hi...]`. Every flag may also be given in a file passed with --config, one `key = value` \
per line; command-line flags take precedence."
)]
pub struct Cli {
    /// Seed for every random choice; identical seeds give identical output.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Output file, written atomically. Standard output if omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// File of `key = value` lines supplying default flag values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Outer, inner and full F-boundaries of Ω, interior, closure and
    /// α(Ω;F) = |∂_F Ω|/|Ω|, exact.
    Boundary(BoundaryArgs),
    /// Greedy ε-quasi-tiling of Ω by translates of F; checks that the
    /// covered fraction is at least ε(1 − α(Ω;F)).
    Tile(TileArgs),
    /// Multi-scale δ-disjoint cover of a box by centered boxes; checks that
    /// at most δ|Ω| points stay uncovered.
    Owcover(OwcoverArgs),
    /// Bounds on the width dimension wdim_ε of a unit ball, or of the
    /// ℓ^q ball measured in ℓ^p, with an optional compression fiber audit.
    Widths(WidthsArgs),
    /// Spectrum of the restriction of the band-limited projection to Ω:
    /// normalized trace (equal to |E|) and eigenvalue counts in intervals.
    Spectrum(SpectrumArgs),
    /// Fraction of eigenvalues strictly inside (0,1) along growing boxes;
    /// it tends to zero as the eigenvalues concentrate at 0 and 1.
    Concentration(ConcentrationArgs),
    /// Counts n[ε,1] and n[ε/2,1] bracketing wdim_ε of the band-limited
    /// ball, normalized by |Ω|.
    Sandwich(SandwichArgs),
    /// Limit of a(ε,Ω_i)/|Ω_i| along a Følner sequence for a subadditive,
    /// invariant set function, then ε → 0; optionally compares two sequences.
    Owlimit(OwlimitArgs),
    /// ℓ¹ sandwich (1−2ε)|a|₁ ≤ |Σ a_g y(·−g)|₁ ≤ (1+ε)|a|₁ over disjoint
    /// translates of the essential support of y.
    L1(L1Args),
    /// Residue sums π_k of y_N = (δ_0 − δ_N)/2, the lift to the common kernel
    /// of π_1..π_j, and triviality of the kernel intersection on [−M,M].
    Counterexample(CounterexampleArgs),
    /// Normalized trace before and after passing to the sublattice N·Z^d:
    /// the dimension over the sublattice is N^d times the dimension over Z^d.
    Reduction(ReductionArgs),
    /// Rank of a finite-type symbol over E on a grid: the image has
    /// dimension at most min(rank)·|E|.
    Symbolrank(SymbolrankArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Boundary(_) => "boundary",
            Command::Tile(_) => "tile",
            Command::Owcover(_) => "owcover",
            Command::Widths(_) => "widths",
            Command::Spectrum(_) => "spectrum",
            Command::Concentration(_) => "concentration",
            Command::Sandwich(_) => "sandwich",
            Command::Owlimit(_) => "owlimit",
            Command::L1(_) => "l1",
            Command::Counterexample(_) => "counterexample",
            Command::Reduction(_) => "reduction",
            Command::Symbolrank(_) => "symbolrank",
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BoundaryArgs {
    /// The set Ω.
    #[arg(long, default_value = "0..9", allow_hyphen_values = true)]
    pub omega: String,
    /// The tile F; must contain the origin.
    #[arg(long, default_value = "-1..1", allow_hyphen_values = true)]
    pub tile: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TileArgs {
    #[arg(long, default_value = "0..99", allow_hyphen_values = true)]
    pub omega: String,
    #[arg(long, default_value = "0..3", allow_hyphen_values = true)]
    pub tile: String,
    /// Overlap allowance ε in (0,1), as `p/q` or a decimal.
    #[arg(long, default_value = "1/4")]
    pub eps: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OwcoverArgs {
    /// Ω = [−radius, radius]^dim.
    #[arg(long, default_value_t = 2000)]
    pub radius: i64,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Residual target δ in (0, 1/2).
    #[arg(long, default_value = "0.3")]
    pub delta: String,
    /// Indices i of the centered boxes [−i,i]^dim used as scales.
    #[arg(long, default_value = "64,16,4,1")]
    pub scales: String,
    /// Choose the scales from the centered boxes so that every covering
    /// hypothesis holds, failing if none exist.
    #[arg(long)]
    pub strict: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    /// Unit ball of an n-dimensional normed space, scaled by --radius.
    Unit,
    /// Unit ball of ℓ^q(n) in the ℓ^p distance, q < p.
    Lq,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct WidthsArgs {
    #[arg(long, value_enum, default_value_t = BallKind::Lq)]
    pub ball: BallKind,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    /// Exponent q (a number ≥ 1 or `inf`).
    #[arg(long, default_value = "1")]
    pub q: String,
    /// Exponent p (a number ≥ 1 or `inf`).
    #[arg(long, default_value = "2")]
    pub p: String,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Comma-separated list of ε.
    #[arg(long, default_value = "2,1,0.5,0.25,0.1")]
    pub eps: String,
    /// Audit the compression witness with k retained coordinates.
    #[arg(long)]
    pub audit_k: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub audit_pairs: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumArgs {
    /// Measure of a symmetric band E around 0 in each coordinate.
    #[arg(long, default_value_t = 0.5)]
    pub measure: f64,
    /// Explicit E as `a:b[,a:b]` per torus coordinate, coordinates
    /// separated by `;`. Overrides --measure.
    #[arg(long)]
    pub multiplier: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Side length of the box Ω = [0, size−1]^dim.
    #[arg(long, default_value_t = 257)]
    pub size: usize,
    /// Closed intervals `a:b[,a:b]` in which eigenvalues are counted.
    #[arg(long, default_value = "0.1:0.9")]
    pub intervals: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ConcentrationArgs {
    #[arg(long, default_value_t = 0.5)]
    pub measure: f64,
    /// Sizes of the centered intervals [−i,i], each odd.
    #[arg(long, default_value = "65,257,1025")]
    pub sizes: String,
    #[arg(long, default_value_t = 0.1)]
    pub a: f64,
    #[arg(long, default_value_t = 0.9)]
    pub b: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SandwichArgs {
    #[arg(long, default_value_t = 0.5)]
    pub measure: f64,
    #[arg(long)]
    pub multiplier: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Side length of the box Ω = [0, size−1]^dim.
    #[arg(long, default_value_t = 1025)]
    pub size: usize,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SetFunction {
    /// a(ε,Ω) = |Ω|.
    Volume,
    /// a(ε,Ω) = |∂_F Ω|.
    Boundary,
    /// a(ε,Ω) = number of eigenvalues in [ε,1] for the band of --measure.
    Spectral,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// [−i,i]^d
    Centered,
    /// [0,2i]^d
    Shifted,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OwlimitArgs {
    #[arg(long = "fn", value_enum, default_value_t = SetFunction::Volume)]
    pub function: SetFunction,
    #[arg(long, default_value_t = 0.5)]
    pub measure: f64,
    /// Tile for the boundary function.
    #[arg(long, default_value = "-1..1", allow_hyphen_values = true)]
    pub tile: String,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = Family::Centered)]
    pub family: Family,
    /// Second Følner family whose limit is compared with the first.
    #[arg(long, value_enum)]
    pub compare: Option<Family>,
    /// Set sizes along the sequence, ascending.
    #[arg(long, default_value = "65,129,257")]
    pub sizes: String,
    /// Descending grid of ε.
    #[arg(long, default_value = "0.2,0.1,0.05")]
    pub eps: String,
    #[arg(long, default_value_t = 0.05)]
    pub tolerance: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct L1Args {
    /// `geometric` for (1/2)^{k+1} on k ≥ 0, or explicit `k:v[,k:v]` with
    /// unit ℓ¹ norm.
    #[arg(long, default_value = "geometric", allow_hyphen_values = true)]
    pub y: String,
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
    /// ε in (0, 1/2).
    #[arg(long, default_value_t = 0.125)]
    pub eps: f64,
    /// Ω = [−radius, radius].
    #[arg(long, default_value_t = 50)]
    pub radius: i64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CounterexampleArgs {
    /// Largest j, with N_j = lcm(1..j).
    #[arg(long, default_value_t = 8)]
    pub j: u64,
    /// Largest M for the triviality check.
    #[arg(long, default_value_t = 10)]
    pub m: i64,
    #[arg(long, default_value_t = 100)]
    pub lift_samples: usize,
    /// Random inputs of the lift live on [−lift_radius, lift_radius].
    #[arg(long, default_value_t = 10)]
    pub lift_radius: i64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ReductionArgs {
    #[arg(long, default_value_t = 0.3)]
    pub measure: f64,
    #[arg(long)]
    pub multiplier: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Sublattice index N.
    #[arg(long, default_value_t = 2)]
    pub index: usize,
    /// Side length of the box; a multiple of the index.
    #[arg(long, default_value_t = 64)]
    pub size: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SymbolrankArgs {
    /// identity, pair or difference.
    #[arg(long, default_value = "difference")]
    pub symbol: String,
    #[arg(long, default_value_t = 0.5)]
    pub measure: f64,
    #[arg(long)]
    pub multiplier: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    /// Grid points per torus coordinate.
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
}

/// A usage-level failure with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

const VALUE_FLAGS: [&str; 4] = ["--seed", "--output", "--format", "--config"];

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Position of the subcommand token, skipping leading global flags.
fn subcommand_position(args: &[OsString]) -> Option<usize> {
    let mut i = 1;
    while i < args.len() {
        let s = args[i].to_string_lossy();
        if VALUE_FLAGS.contains(&s.as_ref()) {
            i += 2;
        } else if s.starts_with('-') {
            i += 1;
        } else {
            return Some(i);
        }
    }
    None
}

/// Turns `key = value` lines into flags. Blank lines and `#` comments are
/// skipped; `true`/`false` toggle switches.
pub fn config_flags(text: &str) -> Result<Vec<OsString>, CliError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected `key = value`", n + 1)))?;
        let key = k.trim().replace('_', "-");
        let value = v.trim().trim_matches('"');
        if key.is_empty() {
            return Err(CliError::usage(format!("config line {}: empty key", n + 1)));
        }
        if key == "config" {
            return Err(CliError::usage("config files cannot include other config files"));
        }
        match value {
            "true" => out.push(OsString::from(format!("--{key}"))),
            "false" => {}
            _ => {
                out.push(OsString::from(format!("--{key}")));
                out.push(OsString::from(value));
            }
        }
    }
    Ok(out)
}

fn command() -> clap::Command {
    Cli::command()
        .args_override_self(true)
        .mut_subcommands(|s| {
            s.args_override_self(true).mut_args(|a| {
                if a.get_action().takes_values() {
                    a.allow_negative_numbers(true)
                } else {
                    a
                }
            })
        })
}

/// Parses `argv` (program name first), merging a `--config` file whose
/// values are overridden by explicit flags.
pub fn parse_config<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let merged = match (config_path(&args), subcommand_position(&args)) {
        (Some(path), Some(pos)) => {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                command().error(
                    clap::error::ErrorKind::Io,
                    format!("cannot read config file {}: {e}", path.display()),
                )
            })?;
            let file = config_flags(&text)
                .map_err(|e| command().error(clap::error::ErrorKind::InvalidValue, e.message))?;
            // subcommand, file flags, then every user flag so that later
            // occurrences (the user's) win
            let mut merged = vec![args[0].clone(), args[pos].clone()];
            merged.extend(file);
            merged.extend(args[1..pos].iter().cloned());
            merged.extend(args[pos + 1..].iter().cloned());
            merged
        }
        _ => args,
    };
    let matches = command().try_get_matches_from(merged)?;
    Cli::from_arg_matches(&matches)
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::usage(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) | Error::InvalidTiling(_) | Error::EigenNonConvergence { .. } => EXIT_VIOLATION,
        Error::Evaluation { source, .. } => exit_code(source),
        _ => EXIT_USAGE,
    }
}

/// Records produced by one subcommand and whether a check failed.
#[derive(Debug)]
pub struct Outcome {
    pub records: Vec<ResultRecord>,
    pub violation: Option<String>,
}

/// Runs a parsed configuration and returns its records without writing.
pub fn execute(cli: &Cli) -> Result<Outcome, (i32, String)> {
    commands::dispatch(cli).map_err(|e| (exit_code(&e), e.to_string()))
}

fn emit(cli: &Cli, records: &[ResultRecord]) -> Result<(), CliError> {
    let bytes = match cli.format {
        Format::Jsonl => encode_jsonl(records),
        Format::Csv => encode_csv(records).map_err(|e| CliError::usage(format!("csv encoding failed: {e}")))?,
    };
    match &cli.output {
        Some(path) => write_atomic(Path::new(path), &bytes)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn status_record(cli: &Cli, message: &str) -> ResultRecord {
    ResultRecord::new(cli.command.name(), commands::input_echo(cli))
        .with("status", "violation")
        .with("message", message)
}

/// Full entry point: parse, run, write. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let cli = match parse_config(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {}", e.message);
        return e.code;
    }
    let (mut records, violation, code) = match execute(&cli) {
        Ok(o) => {
            let code = if o.violation.is_some() { EXIT_VIOLATION } else { EXIT_OK };
            (o.records, o.violation, code)
        }
        Err((EXIT_VIOLATION, msg)) => (Vec::new(), Some(msg), EXIT_VIOLATION),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };
    if let Some(msg) = &violation {
        // the trailing status record flags the output as incomplete or failed
        records.push(status_record(&cli, msg));
        eprintln!("violation: {msg}");
    }
    if let Err(e) = emit(&cli, &records) {
        eprintln!("error: {}", e.message);
        return e.code;
    }
    code
}
