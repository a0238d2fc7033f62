//! Scenario files: ring and module declarations, a list of verification tasks, and
//! byte-deterministic reports.

mod bundled;
pub mod model;
pub mod report;
pub mod run;
pub mod suite;
pub mod syntax;

use std::path::Path;

pub use bundled::{bundled, BUNDLED};
pub use model::{Law, RingDecl, Scenario, Task, TaskKind};
pub use report::{Outcome, Record, Report, ReportFormat, TaskReport};
pub use run::{run_scenario, RunOptions};

use crate::error::{Error, Result};

pub fn load(src: &str) -> Result<Scenario> {
    Scenario::parse(src)
}

pub fn run_source(src: &str, opts: RunOptions) -> Result<Report> {
    Ok(run_scenario(&load(src)?, opts))
}

pub fn run_file(path: &Path, opts: RunOptions) -> Result<Report> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    run_source(&src, opts)
}
