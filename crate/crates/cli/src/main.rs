//! `susy-hbs`: build partner potentials from half-bound-state seeds, find their
//! bound states, scan scattering, check areas, and regenerate reference data.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use susy_hbs::ansatz::Family;
use susy_hbs::partner::Side;

use scenario::{Format, Scenario, Task};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, scenario or parameters. Exit 2.
    Usage(String),
    /// Numerical or I/O failure. Exit 3.
    Numerical(String),
    /// A reproduction row missed its tolerance. Exit 1.
    RowsFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::RowsFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<susy_hbs::Error> for CliError {
    fn from(e: susy_hbs::Error) -> Self {
        use susy_hbs::Error::*;
        match e {
            NodeDetected(_) | InvalidParams(_) | NonPositiveScale(_) | ConstraintPole
            | GridMismatch(_) | DomainError(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "susy-hbs",
    version,
    about = "Partner potentials from nodeless half-bound states"
)]
struct Cli {
    /// JSON scenario file; flags override its fields.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Grid half-width L (grid is [-L, L]).
    #[arg(long = "grid-L", global = true)]
    grid_l: Option<f64>,
    /// Number of grid points (odd).
    #[arg(long = "grid-n", global = true)]
    grid_n: Option<usize>,
    /// Output file (directory for `reproduce --figure`); stdout if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Run the task named in the scenario file when omitted.
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct AnsatzArgs {
    /// gaussian | tanh | erf | xgauss | constant
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    /// Offset A in psi* = A + F(x).
    #[arg(long, allow_hyphen_values = true)]
    pub offset: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct PotentialArgs {
    /// minus | plus
    #[arg(long, value_parser = parse_side)]
    pub side: Option<Side>,
    /// Use -V instead of V.
    #[arg(long)]
    pub negate: bool,
    /// Multiply the potential by c > 0.
    #[arg(long)]
    pub scale: Option<f64>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct WindowArgs {
    #[arg(long = "e-min", allow_hyphen_values = true)]
    pub e_min: Option<f64>,
    #[arg(long = "e-max", allow_hyphen_values = true)]
    pub e_max: Option<f64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Tabulate W, W', V- and V+.
    Partner {
        #[command(flatten)]
        ansatz: AnsatzArgs,
    },
    /// Bound states of a partner potential.
    Bound {
        #[command(flatten)]
        ansatz: AnsatzArgs,
        #[command(flatten)]
        potential: PotentialArgs,
        #[command(flatten)]
        window: WindowArgs,
        /// Keep the grid fixed even for shallow states.
        #[arg(long)]
        no_extend: bool,
    },
    /// R(E) and T(E) over log-spaced positive energies.
    Scatter {
        #[command(flatten)]
        ansatz: AnsatzArgs,
        #[command(flatten)]
        potential: PotentialArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long = "n-energies")]
        n_energies: Option<usize>,
    },
    /// Enclosed area and the bound-state prediction it implies.
    Area {
        #[command(flatten)]
        ansatz: AnsatzArgs,
        #[command(flatten)]
        potential: PotentialArgs,
    },
    /// Triple-delta half-bound state (--u1, --a) or bound states of a delta array.
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        u1: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        /// Delta array as position:strength pairs, e.g. "-1:2,0:-1,1:2" (strength > 0 is a well).
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
    },
    /// Compare against reference values, or regenerate one figure's data.
    Reproduce {
        /// Figure panel 1a..3c; files go to the --out directory.
        #[arg(long)]
        figure: Option<String>,
        /// Restrict the table to groups: eigenvalues, areas, scaled, delta, reflection.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

impl Command {
    fn task(&self) -> Task {
        match self {
            Command::Partner { .. } => Task::Partner,
            Command::Bound { .. } => Task::Bound,
            Command::Scatter { .. } => Task::Scatter,
            Command::Area { .. } => Task::Area,
            Command::Delta { .. } => Task::Delta,
            Command::Reproduce { .. } => Task::Reproduce,
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: susy_hbs::Error| e.to_string())
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse().map_err(|e: susy_hbs::Error| e.to_string())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SUSY_HBS_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "SUSY_HBS_THREADS must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Numerical(format!("cannot size thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let scenario = match &cli.scenario {
        Some(path) => Scenario::load(path)?,
        None => Scenario::default(),
    };
    let task = match (&cli.command, scenario.task) {
        (Some(c), Some(t)) if c.task() != t => {
            return Err(CliError::Usage(format!(
                "subcommand {:?} conflicts with scenario task {t:?}",
                c.task()
            )))
        }
        (Some(c), _) => c.task(),
        (None, Some(t)) => t,
        (None, None) => {
            return Err(CliError::Usage(
                "no subcommand given and no scenario task".into(),
            ))
        }
    };
    let settings = commands::Settings::resolve(&cli, task, scenario)?;
    commands::execute(settings)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::RowsFailed(n) => eprintln!("susy-hbs: {n} row(s) outside tolerance"),
                CliError::Usage(m) => eprintln!("susy-hbs: error: {m}"),
                CliError::Numerical(m) => eprintln!("susy-hbs: numerical failure: {m}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
