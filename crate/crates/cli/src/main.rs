//! `fredkin`: command-line driver for the Fredkin chain toolkit.
//!
//! Every run writes a provenance header (tool version and the full config)
//! followed by CSV or JSON. Exit codes: 0 ok, 2 bad configuration,
//! 3 solver convergence failure, 4 size cap exceeded, 5 verification failed.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fredkin_core::entanglement::EntropyMode;
use fredkin_core::model::{BoundarySpec, ModelForm};
use fredkin_core::Error;
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "fredkin", version, about = "Exact computations for the Fredkin spin chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Output file (default stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for data-parallel loops.
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,

    /// Seed for iterative-solver start vectors.
    #[arg(long, default_value_t = 0x5eed, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Lowest eigenvalues, ground degeneracy and gap.
    Spectrum(SpectrumArgs),
    /// Entanglement entropy of the (colored) Dyck state across cuts.
    Entropy(EntropyArgs),
    /// Orbits of the Fredkin-move graph.
    Orbits(OrbitArgs),
    /// Truncated MPS of the Dyck state.
    Mps(MpsArgs),
    /// One-magnon sector against the XXX chain.
    Magnon(MagnonArgs),
    /// Ground degeneracy per sign quadrant of the boundary couplings.
    Phase(PhaseArgs),
    /// Amplitudes of an exact state, one `word<TAB>amplitude` line each.
    State(StateArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub sites: usize,
    /// `open`, `open(alpha,beta)` or `periodic`.
    #[arg(long, default_value = "open")]
    #[serde(serialize_with = "output::display")]
    pub boundary: BoundarySpec,
    /// `projector`, `pauli` or `fredkin-gate`.
    #[arg(long, default_value = "projector")]
    #[serde(serialize_with = "output::display")]
    pub form: ModelForm,
    #[arg(long, default_value_t = 1)]
    pub colors: usize,
    /// Number of eigenvalues to report.
    #[arg(long, default_value_t = 6)]
    pub count: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct EntropyArgs {
    #[arg(long)]
    pub sites: usize,
    /// Cut position; every cut when omitted.
    #[arg(long)]
    pub cut: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub colors: usize,
    /// `svd`, `formula` or `asymptotic`.
    #[arg(long, default_value = "formula")]
    #[serde(serialize_with = "output::display")]
    pub mode: EntropyMode,
}

#[derive(Debug, Args, Serialize)]
pub struct OrbitArgs {
    #[arg(long)]
    pub sites: usize,
    #[arg(long)]
    pub periodic: bool,
    /// Number of colors; uncolored when omitted.
    #[arg(long)]
    pub colors: Option<usize>,
    /// Compare the orbit count with the bulk kernel dimension.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct MpsArgs {
    #[arg(long)]
    pub sites: usize,
    /// Bond dimension; `sites/2 + 1` (exact) when omitted.
    #[arg(long)]
    pub bond_dim: Option<usize>,
    /// Check every amplitude against the height-bounded Dyck indicator.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct MagnonArgs {
    #[arg(long)]
    pub sites: usize,
    /// Check spectra and sector closure.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct PhaseArgs {
    #[arg(long)]
    pub sites: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Dyck,
    Class,
    Colored,
    Anomalous,
}

#[derive(Debug, Args, Serialize)]
pub struct StateArgs {
    #[arg(long, value_enum)]
    pub kind: StateKind,
    #[arg(long)]
    pub sites: usize,
    /// Unmatched downs and ups as `a,b` (class states).
    #[arg(long, value_parser = parse_pair)]
    pub class: Option<(usize, usize)>,
    #[arg(long, default_value_t = 2)]
    pub colors: usize,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((num(a)?, num(b)?))
}

/// Failure of a run, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Config(String),
    Verification(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) | Failure::Io(_) => 2,
            Failure::Verification(_) => 5,
            Failure::Core(e) => match e {
                Error::ConvergenceFailure(_) => 3,
                Error::CapExceeded { .. } => 4,
                Error::MismatchDetected(_) | Error::FormsInequivalent(_) | Error::NotNormalized { .. } => 5,
                _ => 2,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Config(m) => m.clone(),
            Failure::Verification(m) => format!("verification failed: {m}"),
            Failure::Io(e) => format!("i/o: {e}"),
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.common.threads == 0 {
        return Err(Failure::Config("--threads must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.threads)
        .build()
        .map_err(|e| Failure::Config(e.to_string()))?;
    let report = pool.install(|| commands::dispatch(cli))?;
    let mut sink: Box<dyn Write> = match &cli.common.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    output::write_report(&mut sink, cli, &report)?;
    sink.flush()?;
    match report.verification_failure {
        Some(msg) => Err(Failure::Verification(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message().replace('\n', " "));
            ExitCode::from(f.exit_code())
        }
    }
}
