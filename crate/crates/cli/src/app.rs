use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use quasihom_core::exactalg::rational::{fmt_pq, parse_rational};
use quasihom_core::exactalg::{Rate, Rational};
use quasihom_core::families::FamilyParams;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{self, SweepReport};
use crate::spec::MetricSpec;
use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "quasihom", version, about = "Curvature, Killing fields and local geometry of 3-dimensional Lorentz metrics")]
pub struct Cli {
    /// Output format of the report printed on stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Curvature, Killing algebra, isotropy and orbit analysis of a metric spec file.
    Analyze {
        spec: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        /// Exponential rate `λx,λh,λz` of an extra ansatz sector; repeatable.
        #[arg(long = "exp-rate", allow_hyphen_values = true)]
        exp_rate: Vec<String>,
    },
    /// Classify the family member g_{C,D}.
    Family {
        #[arg(long = "C", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
        /// Include the Killing basis, isotropy, orbit ranks and degeneracy locus.
        #[arg(long)]
        full: bool,
    },
    /// Classify every (C, D) on a grid and write `sweep.json` to the output directory.
    Sweep {
        /// `min:max:step`, applied to both C and D.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify the curvature-module table.
    CartanCheck,
    /// Solve the Killing equation of a metric spec file.
    SolveKilling {
        spec: PathBuf,
        #[arg(long)]
        max_degree: u32,
        #[arg(long = "exp-rate", allow_hyphen_values = true)]
        exp_rate: Vec<String>,
    },
}

fn rational_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|_| CliError::Input(format!("{name}: invalid rational `{text}`")))
}

pub fn parse_rate(text: &str) -> Result<Rate, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Input(format!("exp-rate needs three components: `{text}`")));
    }
    Ok(Rate::new(
        rational_arg("exp-rate", parts[0])?,
        rational_arg("exp-rate", parts[1])?,
        rational_arg("exp-rate", parts[2])?,
    ))
}

pub fn parse_grid(text: &str) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Input(format!("grid must be min:max:step, got `{text}`")));
    }
    report::grid_values(
        &rational_arg("grid", parts[0])?,
        &rational_arg("grid", parts[1])?,
        &rational_arg("grid", parts[2])?,
    )
}

fn read_spec(path: &Path) -> Result<MetricSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    MetricSpec::from_toml(&text)
}

fn render<T: Serialize>(value: &T, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => report::render_text(&serde_json::to_value(value).expect("report serializes")),
    }
}

/// Classifies every grid cell, in parallel when `jobs` allows; cell order is
/// the row-major grid order regardless of scheduling.
pub fn sweep(values: &[Rational], jobs: Option<usize>) -> Result<SweepReport, CliError> {
    let cells: Vec<FamilyParams> = values
        .iter()
        .flat_map(|c| values.iter().map(move |d| FamilyParams::new(c.clone(), d.clone())))
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| CliError::Analysis(e.to_string()))?;
    let results: Vec<report::SweepCell> = pool.install(|| cells.par_iter().map(report::sweep_cell).collect());
    let failures = results.iter().filter(|c| c.error.is_some()).count();
    Ok(SweepReport {
        command: "sweep".into(),
        grid: values.iter().map(fmt_pq).collect(),
        cells: results,
        failures,
    })
}

/// Runs a parsed command line and returns the text for stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let rates = |texts: &[String]| texts.iter().map(|t| parse_rate(t)).collect::<Result<Vec<_>, _>>();
    match &cli.command {
        Command::Analyze {
            spec,
            max_degree,
            exp_rate,
        } => {
            let r = report::analyze(read_spec(spec)?, *max_degree, &rates(exp_rate)?)?;
            Ok(render(&r, cli.format))
        }
        Command::Family { c, d, full } => {
            let p = FamilyParams::new(rational_arg("C", c)?, rational_arg("D", d)?);
            Ok(render(&report::family(&p, *full)?, cli.format))
        }
        Command::Sweep { grid, jobs, out } => {
            let values = parse_grid(grid)?;
            let r = sweep(&values, *jobs)?;
            fs::create_dir_all(out).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
            let path = out.join("sweep.json");
            fs::write(&path, render(&r, Format::Json)).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            if r.failures > 0 {
                return Err(CliError::Analysis(format!(
                    "{} of {} cells failed; see {}",
                    r.failures,
                    r.cells.len(),
                    path.display()
                )));
            }
            Ok(format!("{} cells classified; report written to {}\n", r.cells.len(), path.display()))
        }
        Command::CartanCheck => {
            let r = report::cartan_check();
            let text = render(&r, cli.format);
            if r.all_passed {
                Ok(text)
            } else {
                Err(CliError::Analysis(format!("table verification failed\n{text}")))
            }
        }
        Command::SolveKilling {
            spec,
            max_degree,
            exp_rate,
        } => {
            let r = report::solve_killing(read_spec(spec)?, *max_degree, &rates(exp_rate)?)?;
            Ok(render(&r, cli.format))
        }
    }
}
