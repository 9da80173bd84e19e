//! `vsep`: separability structure of multiqubit states from the command
//! line. Generates state files, inspects circuit pools, runs the four
//! detection pipelines, and reproduces the library's headline experiments.
//!
//! Exit codes: 0 detected (or command succeeded), 3 inconclusive, 2 usage
//! or input error, 1 reproduction bound violated.

mod config;
mod report;
mod reproduce;
mod statefile;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use vsep_core::circuits::{build_pool, WMode};
use vsep_core::detect::{algorithm1, algorithm2, detect_noisy_pure, detect_pure};
use vsep_core::statelib::{NamedStateSpec, StateFamily};

use config::RunConfig;
use report::{DetectReport, PoolReport};
use statefile::{LoadedState, StateFile, StateKind};

/// A failed run, carrying its exit code.
pub(crate) enum Failure {
    /// Bad flags, unreadable or invalid input: exit 2.
    Usage(String),
    /// A self-checking reproduction missed its bound: exit 1.
    Bound(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Bound(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Bound(m) => m,
        }
    }
}

impl From<vsep_core::Error> for Failure {
    fn from(e: vsep_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "vsep",
    version,
    about = "Variational separability detection for multiqubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the candidate circuit pool for n qubits.
    Pool(PoolArgs),
    /// Run a detection pipeline on a state file.
    Detect(DetectArgs),
    /// State file utilities.
    State {
        #[command(subcommand)]
        action: StateAction,
    },
    /// Re-run a built-in experiment and check its expected bounds.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct PoolArgs {
    /// Qubit count, 2..=14.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Rotation content of the product layers.
    #[arg(long, value_enum, default_value_t = WModeArg::Full3)]
    w_mode: WModeArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WModeArg {
    Full3,
    Reduced2,
}

impl From<WModeArg> for WMode {
    fn from(w: WModeArg) -> WMode {
        match w {
            WModeArg::Full3 => WMode::Full3,
            WModeArg::Reduced2 => WMode::Reduced2,
        }
    }
}

#[derive(Args)]
struct DetectArgs {
    /// Which pipeline to run; the state kind must match (pure for `pure`,
    /// density for the rest).
    #[arg(long, value_enum)]
    mode: Mode,
    /// State file (JSON, optionally gzipped).
    #[arg(long)]
    state: PathBuf,
    /// Run configuration file; flags below override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Detection cost threshold.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Cap on adaptive rounds.
    #[arg(long)]
    s_max: Option<usize>,
    /// Largest density-matrix power for noisy mode.
    #[arg(long)]
    m_max: Option<u32>,
    /// Also report a finite-shot re-estimate of the final cost.
    #[arg(long)]
    shots: Option<u64>,
    /// Write the decisive optimization trace as CSV.
    #[arg(long)]
    trace_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Pure,
    Noisy,
    MixedFull,
    MixedK,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Pure => "pure",
            Mode::Noisy => "noisy",
            Mode::MixedFull => "mixed-full",
            Mode::MixedK => "mixed-k",
        }
    }

    fn required_kind(self) -> StateKind {
        match self {
            Mode::Pure => StateKind::Pure,
            _ => StateKind::Density,
        }
    }
}

#[derive(Subcommand)]
enum StateAction {
    /// Generate a state file from a named family or a spec file.
    Gen(StateGenArgs),
}

#[derive(Args)]
struct StateGenArgs {
    /// JSON spec file; mutually exclusive with the inline flags.
    #[arg(long, conflicts_with_all = ["family", "n", "q", "seed"])]
    spec: Option<PathBuf>,
    #[arg(long, value_enum, requires = "n")]
    family: Option<FamilyArg>,
    /// Qubit count for the inline families.
    #[arg(long)]
    n: Option<usize>,
    /// Global depolarization strength; presence switches the output to a
    /// density file.
    #[arg(long)]
    q: Option<f64>,
    /// Seed for the random product family.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    /// Compress the output (implied by a `.gz` extension).
    #[arg(long)]
    gzip: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Ghz,
    BellChain,
    ProductRandom,
}

impl From<FamilyArg> for StateFamily {
    fn from(f: FamilyArg) -> StateFamily {
        match f {
            FamilyArg::Ghz => StateFamily::Ghz,
            FamilyArg::BellChain => StateFamily::BellChain,
            FamilyArg::ProductRandom => StateFamily::ProductRandom,
        }
    }
}

#[derive(Args)]
struct ReproduceArgs {
    #[arg(long, value_enum)]
    experiment: Experiment,
    /// Output directory for the CSV and report files.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Experiment {
    #[value(name = "fig3a")]
    Fig3a,
    #[value(name = "alg1-demo")]
    Alg1Demo,
    #[value(name = "alg2-demo")]
    Alg2Demo,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Pool(args) => cmd_pool(args),
        Command::Detect(args) => cmd_detect(args),
        Command::State { action: StateAction::Gen(args) } => cmd_state_gen(args),
        Command::Reproduce(args) => cmd_reproduce(args),
    }
}

fn cmd_pool(args: PoolArgs) -> Result<ExitCode, Failure> {
    if !(2..=14).contains(&args.n) {
        return Err(Failure::Usage(format!(
            "pool needs 2..=14 qubits, got {}",
            args.n
        )));
    }
    let pool = build_pool(args.n, args.w_mode.into())?;
    let report = PoolReport::of(&pool)?;
    match args.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("pool serializes"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_detect(args: DetectArgs) -> Result<ExitCode, Failure> {
    let mut config = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.optimizer.seed = seed;
    }
    if let Some(epsilon) = args.epsilon {
        config.epsilon = epsilon;
    }
    if let Some(s_max) = args.s_max {
        config.s_max = Some(s_max);
    }
    if let Some(m_max) = args.m_max {
        config.m_max = m_max;
    }
    if args.shots.is_some() {
        config.shots = args.shots;
    }
    if args.out.is_some() {
        config.out = args.out.clone();
    }
    if args.trace_csv.is_some() {
        config.trace_csv = args.trace_csv.clone();
    }

    let state = statefile::load(&args.state)?;
    if state.kind() != args.mode.required_kind() {
        let (want, got) = match args.mode.required_kind() {
            StateKind::Pure => ("pure", "density"),
            StateKind::Density => ("density", "pure"),
        };
        return Err(Failure::Usage(format!(
            "mode {} needs a {want} state file, {} holds a {got} state",
            args.mode.name(),
            args.state.display()
        )));
    }

    let detection = config.detection();
    let verdict = match (args.mode, state) {
        (Mode::Pure, LoadedState::Pure(psi)) => detect_pure(&psi, &detection)?,
        (Mode::Noisy, LoadedState::Density(rho)) => detect_noisy_pure(&rho, &detection)?,
        (Mode::MixedFull, LoadedState::Density(rho)) => algorithm1(&rho, &detection)?,
        (Mode::MixedK, LoadedState::Density(rho)) => algorithm2(&rho, &detection)?,
        _ => unreachable!("kind checked above"),
    };

    if let Some(path) = &config.trace_csv {
        report::write_trace_csv(path, &verdict)?;
    }
    let report = DetectReport::new(args.mode.name(), config.shots, verdict)?;
    let json = report.to_json();
    match &config.out {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    Ok(if report.verdict.detected() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_state_gen(args: StateGenArgs) -> Result<ExitCode, Failure> {
    let spec = match (&args.spec, args.family) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<NamedStateSpec>(&text)
                .map_err(|e| Failure::Usage(format!("invalid spec {}: {e}", path.display())))?
        }
        (None, Some(family)) => NamedStateSpec {
            family: family.into(),
            n_qubits: args.n.expect("clap enforces --n with --family"),
            q: args.q,
            seed: args.seed,
            amplitudes: None,
        },
        (None, None) => {
            return Err(Failure::Usage(
                "state gen needs either --spec or --family with --n".into(),
            ))
        }
    };
    let realized = spec.realize()?;
    let file = StateFile::from_realized(&realized);
    statefile::save(&args.out, &file, args.gzip)?;
    println!(
        "wrote {} ({} qubits, {} entries)",
        args.out.display(),
        file.n_qubits,
        file.data.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<ExitCode, Failure> {
    fs::create_dir_all(&args.out)
        .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", args.out.display())))?;
    match args.experiment {
        Experiment::Fig3a => reproduce::fig3a(&args.out)?,
        Experiment::Alg1Demo => reproduce::alg1_demo(&args.out)?,
        Experiment::Alg2Demo => reproduce::alg2_demo(&args.out)?,
    }
    Ok(ExitCode::SUCCESS)
}
