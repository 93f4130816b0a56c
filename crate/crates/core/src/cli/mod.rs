//! Command-line workflows behind the `zcacs` binary.
//!
//! Exit codes: 0 pass, 1 property failure, 2 configuration or usage error,
//! 3 I/O error, 4 corrupt input.

mod doc;
pub mod format;
pub mod report;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;

pub use doc::{ConfigDocument, CouplingName};
pub use format::{read_codeset, write_codeset, Encoding, FileError};

use crate::codeset::{CodeKind, CodeSet, CodeSetParams};
use crate::correlation::{optimality, verify_ccc, verify_zcacs, Engine, VerifyOptions};
use crate::generator::{build, derive_params, reduce_to_1d};
use crate::GeneratorConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    PropertyFail = 1,
    ConfigError = 2,
    IoError = 3,
    CorruptInput = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] crate::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    File(#[from] FileError),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Config(_) | CliError::Usage(_) => ExitStatus::ConfigError,
            CliError::File(FileError::Io { .. }) => ExitStatus::IoError,
            CliError::File(FileError::Corrupt { .. }) => ExitStatus::CorruptInput,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum EngineArg {
    #[default]
    Direct,
    Separable,
}

#[derive(Debug, Parser)]
#[command(
    name = "zcacs",
    version,
    about = "Build and verify optimal 2D Z-complementary array code sets"
)]
pub struct Cli {
    /// Log progress (also honours RUST_LOG).
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the family described by a config and write a code-set file.
    Generate(BuildArgs),
    /// Build the single-row family of a config whose row side is trivial.
    Reduce(BuildArgs),
    /// Check the correlation properties of a code-set file or config.
    Verify(VerifyArgs),
    /// Evaluate the set-size bound for given parameters.
    Bound(BoundArgs),
    /// Tabulate achievable parameters over a grid.
    Table(TableArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    /// TOML config document.
    #[arg(long)]
    pub config: PathBuf,
    /// Output code-set file.
    #[arg(long)]
    pub out: PathBuf,
    /// `text` or `binary`.
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Replace permutations, linear coefficients and offsets with random draws.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Code-set file (text or binary).
    pub input: Option<PathBuf>,
    /// Build from a config instead of reading a file.
    #[arg(long, conflicts_with = "input")]
    pub config: Option<PathBuf>,
    #[arg(long, requires = "config")]
    pub seed: Option<u64>,
    /// Report file (the report is also printed).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub z1: Option<usize>,
    #[arg(long)]
    pub z2: Option<usize>,
    /// Absolute tolerance (default 1e-9 * flock * l1 * l2).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Decide every zero exactly in the cyclotomic integers.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum, default_value_t)]
    pub engine: EngineArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    /// Derive the parameters from a config instead.
    #[arg(long, conflicts_with_all = ["sets", "flock", "rows", "cols", "z1", "z2"])]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub sets: Option<usize>,
    #[arg(long)]
    pub flock: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub z1: Option<usize>,
    #[arg(long)]
    pub z2: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// TOML grid document.
    #[arg(long)]
    pub config: PathBuf,
    /// `text` or `csv`.
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| {
        FileError::Io {
            path: path.display().to_string(),
            source,
        }
        .into()
    })
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| {
        FileError::Io {
            path: path.display().to_string(),
            source,
        }
        .into()
    })
}

/// Reads and validates a config document, optionally re-drawing its free
/// coefficients from `seed`.
pub fn load_config(path: &Path, seed: Option<u64>) -> CliResult<GeneratorConfig> {
    let cfg = ConfigDocument::from_toml_str(&read_text(path)?)?.to_config()?;
    Ok(match seed {
        Some(seed) => {
            let coupling = cfg.coupling();
            GeneratorConfig::random(cfg.params().clone(), &mut StdRng::seed_from_u64(seed)).with_coupling(coupling)
        }
        None => cfg,
    })
}

fn with_threads<T: Send>(threads: Option<u64>, f: impl FnOnce() -> T + Send) -> T {
    match threads.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n as usize).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn encoding(format: OutputFormat) -> CliResult<Encoding> {
    match format {
        OutputFormat::Text => Ok(Encoding::Text),
        OutputFormat::Binary => Ok(Encoding::Binary),
        OutputFormat::Csv => Err(CliError::Usage("code-set files are written as text or binary".into())),
    }
}

fn emit(out: &mut dyn Write, text: &str) {
    if let Err(e) = out.write_all(text.as_bytes()) {
        log::warn!("could not write to output: {e}");
    }
}

fn finish_build(cs: &CodeSet, cfg: &GeneratorConfig, args: &BuildArgs, out: &mut dyn Write) -> CliResult<ExitStatus> {
    write_codeset(cs, &args.out, encoding(args.format)?)?;
    let mut derived = derive_params(cfg);
    derived.code.kind = cs.meta().kind;
    emit(out, &report::render_params(&derived));
    emit(out, &format!("written = {}\n", args.out.display()));
    Ok(ExitStatus::Pass)
}

pub fn run_generate(args: &BuildArgs, out: &mut dyn Write) -> CliResult<ExitStatus> {
    encoding(args.format)?;
    let cfg = load_config(&args.config, args.seed)?;
    let cs = with_threads(args.threads, || build(&cfg));
    finish_build(&cs, &cfg, args, out)
}

pub fn run_reduce(args: &BuildArgs, out: &mut dyn Write) -> CliResult<ExitStatus> {
    encoding(args.format)?;
    let cfg = load_config(&args.config, args.seed)?;
    let cs = with_threads(args.threads, || reduce_to_1d(&cfg))?;
    finish_build(&cs, &cfg, args, out)
}

pub fn run_verify(args: &VerifyArgs, verbose: bool, out: &mut dyn Write) -> CliResult<ExitStatus> {
    if let Some(tol) = args.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive and finite, got {tol}")));
        }
    }
    let cs = match (&args.input, &args.config) {
        (Some(path), _) => read_codeset(path)?,
        (None, Some(path)) => {
            let cfg = load_config(path, args.seed)?;
            with_threads(args.threads, || build(&cfg))
        }
        (None, None) => return Err(CliError::Usage("verify needs a code-set file or --config".into())),
    };
    let opts = VerifyOptions {
        tol: args.tol,
        exact: args.exact,
        engine: match args.engine {
            EngineArg::Direct => Engine::Direct,
            EngineArg::Separable => Engine::Separable,
        },
        threads: args.threads.map(|n| n as usize),
        verbose,
    };
    let meta = cs.meta();
    let report = match (meta.kind, args.z1, args.z2) {
        (CodeKind::Ccc, None, None) => verify_ccc(&cs, &opts),
        _ => verify_zcacs(&cs, args.z1.unwrap_or(meta.z1), args.z2.unwrap_or(meta.z2), &opts),
    };
    let text = report::render_report(&report);
    if let Some(path) = &args.out {
        write_text(path, &text)?;
    }
    emit(out, &text);
    Ok(if report.pass {
        ExitStatus::Pass
    } else {
        ExitStatus::PropertyFail
    })
}

pub fn run_bound(args: &BoundArgs, out: &mut dyn Write) -> CliResult<ExitStatus> {
    let params = match &args.config {
        Some(path) => derive_params(&load_config(path, None)?).code,
        None => {
            let need = |v: Option<usize>, name: &str| {
                v.ok_or_else(|| CliError::Usage(format!("bound needs --{name} (or --config)")))
            };
            CodeSetParams {
                kind: CodeKind::Zcacs2d,
                sets: need(args.sets, "sets")?,
                flock: need(args.flock, "flock")?,
                rows: need(args.rows, "rows")?,
                cols: need(args.cols, "cols")?,
                z1: need(args.z1, "z1")?,
                z2: need(args.z2, "z2")?,
                modulus: 1,
            }
        }
    };
    let o = optimality(&params)?;
    emit(out, &report::render_optimality(&o));
    Ok(if o.within_bound {
        ExitStatus::Pass
    } else {
        ExitStatus::PropertyFail
    })
}

pub fn run_table(args: &TableArgs, out: &mut dyn Write) -> CliResult<ExitStatus> {
    let grid = table::TableGrid::from_toml_str(&read_text(&args.config)?)?;
    let rows = grid.rows()?;
    let text = match args.format {
        OutputFormat::Text => table::render_text(&rows),
        OutputFormat::Csv => table::render_csv(&rows),
        OutputFormat::Binary => return Err(CliError::Usage("tables are written as text or csv".into())),
    };
    match &args.out {
        Some(path) => write_text(path, &text)?,
        None => emit(out, &text),
    }
    Ok(ExitStatus::Pass)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitStatus::ConfigError.code()
            } else {
                0
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                emit(out, &rendered);
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => run_generate(a, out),
        Command::Reduce(a) => run_reduce(a, out),
        Command::Verify(a) => run_verify(a, cli.verbose, out),
        Command::Bound(a) => run_bound(a, out),
        Command::Table(a) => run_table(a, out),
    };
    match result {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status().code()
        }
    }
}

/// Entry point for the binary: process arguments, stdout and stderr.
pub fn main() -> i32 {
    let verbose = std::env::args().any(|a| a == "--verbose");
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(if verbose {
        "info"
    } else {
        "warn"
    }))
    .try_init();
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}
