use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kummer_cli::{run, CliError, Command, Options, RankMode, Report};

#[derive(Parser, Debug)]
#[command(name = "kummer", version, about = "Verification reports for the Kummer surface engine")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Relative tolerance for successive quadrature levels.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol_quadrature: f64,
    /// Finite-difference step.
    #[arg(long, global = true, default_value_t = 1e-3)]
    tol_fd: f64,
    /// Number of sample points (default 5 for periods, 24 for rank).
    #[arg(long, global = true)]
    points: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Omit wall_time so that reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Group orders and subgroup indices.
    Groups {
        /// Build the groups from a deliberately corrupted c-action table.
        #[arg(long)]
        corrupt_table: bool,
    },
    /// Cocycle identities.
    Cocycles {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Transformation of the Picard-Fuchs operators.
    Operators,
    /// Period and regulator numerics.
    Periods,
    /// Image table and rank certificate.
    Rank {
        #[arg(long, value_enum, default_value_t = Mode::Table2)]
        mode: Mode,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Table2,
    FullOrbit,
    Canonical,
}

fn emit(report: &Report, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => sink.write_all(report.to_json()?.as_bytes())?,
        Format::Csv => report.write_csv(&mut sink)?,
    }
    sink.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut opts = Options {
        seed: args.seed,
        tol_quadrature: args.tol_quadrature,
        tol_fd: args.tol_fd,
        points: args.points,
        ..Options::default()
    };
    let command = match args.command {
        Cmd::Groups { corrupt_table } => {
            opts.corrupt_table = corrupt_table;
            Command::Groups
        }
        Cmd::Cocycles { samples } => {
            opts.samples = samples;
            Command::Cocycles
        }
        Cmd::Operators => Command::Operators,
        Cmd::Periods => Command::Periods,
        Cmd::Rank { mode } => Command::Rank(match mode {
            Mode::Table2 => RankMode::Table2,
            Mode::FullOrbit => RankMode::FullOrbit,
            Mode::Canonical => RankMode::Canonical,
        }),
    };
    let result = run(command, &opts, !args.no_timing).and_then(|r| emit(&r, args.format, args.out.as_ref()).map(|_| r));
    match result {
        Ok(r) if r.passed() => ExitCode::SUCCESS,
        Ok(r) => {
            for c in r.checks.iter().filter(|c| c.status == kummer_cli::Status::Fail) {
                eprintln!("FAIL {}: {}", c.name, c.witness);
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
