use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fitting_res::scenario::{bundled, run_file, run_source, Outcome, Report, ReportFormat, RunOptions, BUNDLED};

#[derive(Parser)]
#[command(name = "fitres", version, about = "Run scenario files of resolution and minor-ideal checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Structured,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Structured => ReportFormat::Structured,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// Seed for randomized tasks; overrides the file's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Degree cap for truncated resolutions over non-artinian rings.
    #[arg(long)]
    cap: Option<i32>,
    #[arg(long, value_enum, default_value_t)]
    report: Format,
}

impl Common {
    fn options(&self) -> RunOptions {
        RunOptions { seed: self.seed, cap: self.cap }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one scenario file (or the name of a bundled scenario).
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run every bundled scenario.
    CheckAll {
        #[command(flatten)]
        common: Common,
    },
    /// List the bundled scenarios.
    List,
}

fn exit(outcome: Outcome) -> ExitCode {
    ExitCode::from(outcome.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run { scenario, common } => {
            let report = match (scenario.exists(), scenario.to_str().and_then(bundled)) {
                (false, Some(src)) => run_source(src, common.options()),
                _ => run_file(&scenario, common.options()),
            };
            match report {
                Ok(r) => {
                    print!("{}", r.render(common.report.into()));
                    exit(r.outcome())
                }
                Err(e) => {
                    eprintln!("{}: {e}", scenario.display());
                    ExitCode::from(1)
                }
            }
        }
        Cmd::CheckAll { common } => {
            let mut worst = Outcome::Pass;
            let mut summary = Vec::new();
            for (name, src) in BUNDLED {
                let outcome = match run_source(src, common.options()) {
                    Ok(r) => {
                        print_one(name, &r, common.report.into());
                        r.outcome()
                    }
                    Err(e) => {
                        eprintln!("{name}: {e}");
                        Outcome::Fail
                    }
                };
                worst = worst.max(outcome);
                summary.push(format!("{name}: {}", outcome.as_str()));
            }
            println!("\n{}", summary.join("\n"));
            exit(worst)
        }
        Cmd::List => {
            for (name, _) in BUNDLED {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
    }
}

fn print_one(name: &str, r: &Report, format: ReportFormat) {
    match format {
        ReportFormat::Text => println!("##### {name}\n{}", r.render(format)),
        ReportFormat::Structured => {
            for line in r.render(format).lines().skip(1) {
                println!("{name}/{line}");
            }
        }
    }
}
