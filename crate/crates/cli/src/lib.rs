//! Verification reports for the `kummer` command-line tool.

pub mod commands;
pub mod report;

use std::time::Instant;

use thiserror::Error;

pub use report::{Check, Report, Status, TableRecord};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    Table2,
    FullOrbit,
    Canonical,
}

impl RankMode {
    pub fn name(self) -> &'static str {
        match self {
            RankMode::Table2 => "table2",
            RankMode::FullOrbit => "full-orbit",
            RankMode::Canonical => "canonical",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Groups,
    Cocycles,
    Operators,
    Periods,
    Rank(RankMode),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub seed: u64,
    pub tol_quadrature: f64,
    /// Finite-difference step.
    pub tol_fd: f64,
    /// Number of sample points; each command has its own default.
    pub points: Option<usize>,
    pub samples: usize,
    pub corrupt_table: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 1, tol_quadrature: 1e-12, tol_fd: 1e-3, points: None, samples: 10_000, corrupt_table: false }
    }
}

impl Options {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.samples == 0 {
            return Err(CliError::InvalidParameter("--samples must be at least 1".into()));
        }
        if self.points == Some(0) {
            return Err(CliError::InvalidParameter("--points must be at least 1".into()));
        }
        kummer_core::numerics::QuadratureSpec::new(kummer_core::numerics::quad::MAX_LEVEL, self.tol_quadrature)
            .map_err(|e| CliError::InvalidParameter(e.to_string()))?;
        kummer_core::numerics::FdScheme::new(self.tol_fd).map_err(|e| CliError::InvalidParameter(e.to_string()))?;
        Ok(())
    }
}

/// Runs one command. `wall_time` is filled in only when `timing` is set, so
/// that untimed reports are byte-identical across runs.
pub fn run(command: Command, opts: &Options, timing: bool) -> Result<Report, CliError> {
    opts.validate()?;
    let start = Instant::now();
    let mut report = match command {
        Command::Groups => commands::groups(opts),
        Command::Cocycles => commands::cocycles(opts),
        Command::Operators => commands::operators(opts),
        Command::Periods => commands::periods(opts),
        Command::Rank(mode) => commands::rank(opts, mode),
    };
    if timing {
        report.wall_time = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}
