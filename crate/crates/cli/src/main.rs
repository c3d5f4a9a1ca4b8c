use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod output;

use output::{Format, Table};

#[derive(Parser, Debug)]
#[command(
    name = "mapcov",
    version,
    about = "Maps, Jucys-Murphy coverings, and Plancherel/GUE edge statistics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Exponent / perimeter vector, comma separated.
    #[arg(long, global = true)]
    pub k: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub genus: Option<usize>,
    #[arg(long, global = true)]
    pub s: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub reps: Option<usize>,
    /// Comma-separated ξ values (or z values for kontsevich-eval).
    #[arg(long, global = true)]
    pub xi: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Run past the size caps.
    #[arg(long, global = true)]
    pub force: bool,
    /// Budget on the estimated number of enumerated objects.
    #[arg(long, global = true)]
    pub max_work: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Census of polygon gluings with perimeters --k.
    EnumerateMaps {
        #[arg(long)]
        by_genus: bool,
    },
    /// Solutions of the covering equation for --k.
    EnumerateCoverings {
        #[arg(long)]
        by_genus: bool,
    },
    /// One-polygon map counts by genus at perimeter --k.
    HarerZagier {
        /// Compare against exhaustive enumeration.
        #[arg(long)]
        check: bool,
    },
    /// Jucys-Murphy trace by word counting and by the partition sum.
    TraceCheck {
        /// Let every letter range over the nonspecial sheets.
        #[arg(long)]
        modified: bool,
    },
    /// Collapse round trip and image exactness at --k.
    PsiRoundtrip,
    /// Trivalent Laplace-domain sum for (--genus, --s) at z = --xi.
    KontsevichEval,
    /// Coefficients of the genus-1 two-trivalent-sheet series up to z^n.
    Cov31Series,
    /// Plancherel samples of size --n.
    SamplePlancherel,
    /// GUE samples of size --n.
    SampleGue {
        #[arg(long, value_enum, default_value_t = ModelArg::Dense)]
        model: ModelArg,
    },
    /// Quadrature checks of the closed-form integrals.
    Identities,
    /// Plancherel vs GUE edge moments against the Airy quadrature.
    EdgeCompare {
        #[arg(long, default_value_t = 400)]
        n_gue: usize,
        #[arg(long, value_enum, default_value_t = ModelArg::Tridiagonal)]
        model: ModelArg,
    },
    /// Rotated profile of a Plancherel sample against the limit shape.
    LimitShape {
        #[arg(long, default_value_t = 401)]
        grid: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelArg {
    Dense,
    Tridiagonal,
}

impl From<ModelArg> for mapcov::GueModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Dense => mapcov::GueModel::Dense,
            ModelArg::Tridiagonal => mapcov::GueModel::Tridiagonal,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Violation(String),
    SizeCap(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Violation(_) => 2,
            CliError::SizeCap(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid configuration: {m}"),
            CliError::Violation(m) => write!(f, "identity violated: {m}"),
            CliError::SizeCap(m) => write!(f, "size cap exceeded (use --force): {m}"),
        }
    }
}

impl From<mapcov::Error> for CliError {
    fn from(e: mapcov::Error) -> Self {
        match e {
            mapcov::Error::SizeCap(m) => CliError::SizeCap(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Invalid(format!("i/o: {e}"))
    }
}

/// What a command produced: a table, plus optional lines for stdout.
pub struct Report {
    pub table: Table,
    pub message: Option<String>,
    pub violation: Option<String>,
}

impl Report {
    pub fn table(table: Table) -> Self {
        Report {
            table,
            message: None,
            violation: None,
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    match (&cli.out, &report.message) {
        (Some(path), _) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.table.write(cli.format, &mut w)?;
            w.flush()?;
            if let Some(m) = &report.message {
                println!("{m}");
            }
        }
        (None, Some(m)) => println!("{m}"),
        (None, None) => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.table.write(cli.format, &mut lock)?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(CliError::Invalid("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| CliError::Invalid(e.to_string()))?;
    }
    let report = commands::dispatch(cli)?;
    emit(cli, &report)?;
    match report.violation {
        Some(v) => Err(CliError::Violation(v)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mapcov: {e}");
            ExitCode::from(e.code())
        }
    }
}
