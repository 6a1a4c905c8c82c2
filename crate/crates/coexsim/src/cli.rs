//! Argument parsing and the three subcommands.
//!
//! Exit codes: 0 on success, 2 for anything wrong with the input (flags,
//! config file, sweep values), 3 for failures while running or writing.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use coexsim_core::Tech;

use crate::config::{self, BaselineChoice, FileConfig, Overrides};
use crate::{driver, output, CliError};

#[derive(Parser)]
#[command(
    name = "coexsim",
    version,
    about = "Monte Carlo interference risk model for Wi-Fi/LAA/LTE-U sharing the 5 GHz band"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Simulate one campaign; write per-AP results, CCDF charts, a summary
    Run(RunArgs),
    /// Simulate a family of campaigns along one axis; write CCDFs per cell
    Sweep(SweepArgs),
    /// Re-derive CCDF charts from a previous run's per-AP CSV, no simulation
    Chart(ChartArgs),
}

#[derive(Args)]
pub struct CommonArgs {
    /// TOML config file (omitted or empty: built-in defaults)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// override [engine] master_seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// override [engine] realizations
    #[arg(long)]
    pub realizations: Option<usize>,
    /// output directory
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
    /// worker threads, 0 = one per core (never affects results)
    #[arg(long)]
    pub parallelism: Option<usize>,
    /// which baselines to simulate alongside coexistence
    #[arg(long, value_enum)]
    pub baseline: Option<BaselineChoice>,
}

#[derive(Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum SweepAxis {
    /// entrant AP count; cells cross the values with all three entrant techs
    EntrantCount,
    /// channel plan; cells cross the values with all three entrant techs
    ChannelMode,
    /// entrant technology alone
    EntrantTech,
    /// deployment scenario; cells cross the values with all three entrant techs
    Scenario,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// swept dimension
    #[arg(long, value_enum)]
    pub axis: SweepAxis,
    /// comma-separated axis values, e.g. 5,10,15 or single_1,indoor_19
    #[arg(long)]
    pub values: String,
}

#[derive(Args)]
pub struct ChartArgs {
    /// run directory containing aps.csv
    pub run_dir: PathBuf,
    /// where the re-derived CCDF files go (must differ from the run dir)
    #[arg(long, default_value = "chart")]
    pub out_dir: PathBuf,
}

/// Parse and dispatch, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // help and version land on stdout and exit 0; usage errors are 2
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(a) => cmd_run(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Chart(a) => cmd_chart(&a),
    }
}

fn effective_config(common: &CommonArgs) -> Result<FileConfig, CliError> {
    let mut fc = match &common.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    fc.apply(&Overrides {
        seed: common.seed,
        realizations: common.realizations,
        baseline: common.baseline,
        parallelism: common.parallelism,
    });
    Ok(fc)
}

/// Simulate one effective config and write the full output set into `dir`.
/// Shared by `run` and the acceptance/integration tests.
pub fn run_one(fc: &FileConfig, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let rc = fc.to_run_config()?;
    let campaign = driver::run_campaign(&rc, fc.engine.parallelism)?;
    let label = rc.label();
    let pre = output::preamble(&label, &fc.echo_toml());
    let set = output::derive_series(&campaign, None)?;

    std::fs::create_dir_all(dir).map_err(|e| crate::io_err(dir, e))?;
    let mut written = Vec::new();

    let aps = dir.join("aps.csv");
    output::write_file(&aps, &output::render_aps_csv(&pre, &campaign))?;
    written.push(aps);

    for name in output::write_ccdf_files(dir, &pre, &set)? {
        written.push(dir.join(name));
    }

    let summary = dir.join("summary.json");
    output::write_file(
        &summary,
        &output::render_summary_json(
            &label,
            rc.master_seed,
            rc.realizations,
            &set,
            &fc.echo_toml(),
        )?,
    )?;
    written.push(summary);
    Ok(written)
}

fn cmd_run(args: &RunArgs) -> Result<(), CliError> {
    let fc = effective_config(&args.common)?;
    for path in run_one(&fc, &args.common.out_dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// All sweep cells for one axis. Count, plan, and scenario axes cross
/// their values with the three entrant technologies; the tech axis uses
/// its values directly.
pub fn expand_sweep(
    base: &FileConfig,
    axis: SweepAxis,
    values: &str,
) -> Result<Vec<FileConfig>, CliError> {
    let raw: Vec<&str> = values
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .collect();
    if raw.is_empty() {
        return Err(CliError::Config(String::from("no sweep values given")));
    }
    const ALL_TECHS: [Tech; 3] = [Tech::Wifi, Tech::Laa, Tech::Lteu];
    let mut cells = Vec::new();
    match axis {
        SweepAxis::EntrantCount => {
            for v in &raw {
                let count: usize = v
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad entrant count `{v}`")))?;
                for tech in ALL_TECHS {
                    let mut fc = base.clone();
                    fc.scenario.entrants = count;
                    fc.scenario.entrant_tech = tech;
                    cells.push(fc);
                }
            }
        }
        SweepAxis::ChannelMode => {
            for v in &raw {
                let plan = config::parse_plan(v)?;
                for tech in ALL_TECHS {
                    let mut fc = base.clone();
                    fc.spectrum.plan = plan;
                    fc.scenario.entrant_tech = tech;
                    cells.push(fc);
                }
            }
        }
        SweepAxis::Scenario => {
            for v in &raw {
                let kind = config::parse_scenario(v)?;
                for tech in ALL_TECHS {
                    let mut fc = base.clone();
                    fc.scenario.kind = kind;
                    fc.scenario.entrant_tech = tech;
                    cells.push(fc);
                }
            }
        }
        SweepAxis::EntrantTech => {
            for v in &raw {
                let mut fc = base.clone();
                fc.scenario.entrant_tech = config::parse_tech(v)?;
                cells.push(fc);
            }
        }
    }
    // a duplicate label would silently overwrite a sibling cell's files
    let mut labels: Vec<String> = Vec::new();
    for fc in &cells {
        let label = fc.to_run_config()?.label();
        if labels.contains(&label) {
            return Err(CliError::Config(format!(
                "sweep values produce duplicate cell `{label}`"
            )));
        }
        labels.push(label);
    }
    Ok(cells)
}

fn cell_filename(base_name: &str, label: &str) -> String {
    match base_name.strip_suffix(".csv") {
        Some(stem) => format!("{stem}_{label}.csv"),
        None => format!("{base_name}_{label}"),
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let base = effective_config(&args.common)?;
    let cells = expand_sweep(&base, args.axis, &args.values)?;
    let dir = &args.common.out_dir;
    std::fs::create_dir_all(dir).map_err(|e| crate::io_err(dir, e))?;

    for fc in &cells {
        let rc = fc.to_run_config()?;
        let label = rc.label();
        let campaign = driver::run_campaign(&rc, fc.engine.parallelism)?;
        let pre = output::preamble(&label, &fc.echo_toml());
        let set = output::derive_series(&campaign, None)?;
        for series in set
            .degradation
            .iter()
            .chain(std::iter::once(&set.unfairness))
        {
            let name = cell_filename(&output::ccdf_filename(series), &label);
            let path = dir.join(&name);
            output::write_file(&path, &output::render_ccdf_csv(&pre, series))?;
            println!("wrote {}", path.display());
        }
        let summary_path = dir.join(format!("summary_{label}.json"));
        output::write_file(
            &summary_path,
            &output::render_summary_json(
                &label,
                rc.master_seed,
                rc.realizations,
                &set,
                &fc.echo_toml(),
            )?,
        )?;
        println!("wrote {}", summary_path.display());
    }
    Ok(())
}

fn cmd_chart(args: &ChartArgs) -> Result<(), CliError> {
    // chart never writes into the run directory it reads from
    if let (Ok(a), Ok(b)) = (args.run_dir.canonicalize(), args.out_dir.canonicalize()) {
        if a == b {
            return Err(CliError::Config(String::from(
                "chart output directory must differ from the run directory",
            )));
        }
    }
    for name in output::rederive_charts(&args.run_dir, &args.out_dir)? {
        println!("wrote {}", args.out_dir.join(name).display());
    }
    Ok(())
}
