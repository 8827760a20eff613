//! Thin command-line front end over the pcsim library.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use pcsim::annual::{simulate_days, storage_transaction_stats};
use pcsim::economics::capacity_credit;
use pcsim::milp::{build_day_model, SolveOptions};
use pcsim::solver::{export_problem, ExportFormat};
use pcsim::sweep::{
    emit_reports, run_sweep, PortfolioEntry, StoragePortfolio, SweepSpec,
};
use pcsim::system::{load_system, slice_day, validate, StorageTech, SystemModel, SystemState};

#[derive(Parser)]
#[command(name = "pcsim", version, about = "Production-cost simulation and storage valuation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct DatasetArg {
    /// Dataset directory (system.toml, series.csv, hydro.csv).
    #[arg(long)]
    dataset: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    /// Relative MIP gap.
    #[arg(long)]
    gap: Option<f64>,
    /// Per-day time limit, seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl SolveArgs {
    fn options(&self) -> SolveOptions {
        let mut o = SolveOptions::default();
        if let Some(g) = self.gap {
            o.mip_rel_gap = g;
        }
        if let Some(t) = self.time_limit {
            o.time_limit_secs = t;
        }
        o
    }
}

fn parse_tech(s: &str) -> Result<StorageTech, String> {
    match s {
        "bess" => Ok(StorageTech::Bess),
        "phs" => Ok(StorageTech::Phs),
        other => Err(format!("unknown technology {other} (expected bess or phs)")),
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Load a dataset and report every consistency violation.
    Validate(DatasetArg),
    /// Run the rolling-horizon simulation and print annual KPIs.
    Simulate {
        #[command(flatten)]
        dataset: DatasetArg,
        #[command(flatten)]
        solve: SolveArgs,
        /// Days to simulate (365 = full year).
        #[arg(long, default_value_t = 365)]
        days: usize,
        /// Write the full annual result as JSON here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a grid of storage portfolios and write CSV reports.
    Sweep {
        #[command(flatten)]
        dataset: DatasetArg,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_parser = parse_tech, default_value = "bess")]
        tech: StorageTech,
        #[arg(long, default_value_t = 0.0)]
        power_min: f64,
        #[arg(long)]
        power_max: f64,
        #[arg(long)]
        power_step: f64,
        /// Discharge durations, h (comma separated).
        #[arg(long, value_delimiter = ',', default_value = "4")]
        durations: Vec<f64>,
        #[arg(long, default_value_t = 365)]
        days: usize,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Report directory.
        #[arg(long)]
        output: PathBuf,
    },
    /// Load-leveling capacity credit of one storage asset, MW.
    Credit {
        #[command(flatten)]
        dataset: DatasetArg,
        #[arg(long, value_parser = parse_tech, default_value = "bess")]
        tech: StorageTech,
        #[arg(long)]
        power: f64,
        #[arg(long)]
        duration: f64,
    },
    /// Export one day's MILP as a problem file.
    ExportMps {
        #[command(flatten)]
        dataset: DatasetArg,
        #[arg(long, default_value_t = 0)]
        day: usize,
        /// Write CPLEX-style LP instead of free MPS.
        #[arg(long)]
        lp: bool,
        #[arg(long)]
        output: PathBuf,
    },
}

fn load(arg: &DatasetArg) -> Result<SystemModel> {
    load_system(&arg.dataset.join("system.toml"), &arg.dataset)
        .with_context(|| format!("loading dataset {}", arg.dataset.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Validate(arg) => {
            let model = load(&arg)?;
            let report = validate(&model);
            if report.is_empty() {
                println!("ok: {} assets, no violations", model.asset_count());
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &report.violations {
                    eprintln!("{v}");
                }
                Ok(ExitCode::FAILURE)
            }
        }
        Cmd::Simulate { dataset, solve, days, output } => {
            let model = load(&dataset)?;
            let r = simulate_days(&model, &StoragePortfolio::empty(), &solve.options(), days)?;
            println!("days simulated:    {}", r.num_days);
            println!("operating cost:    {:.2} EUR", r.operating_cost);
            println!("  conventional:    {:.2}", r.cost.conventional);
            println!("  hydro offers:    {:.2}", r.cost.hydro);
            println!("  cross-border:    {:.2}", r.cost.cross_border);
            println!("  demand response: {:.2}", r.cost.demand_response);
            println!("  slack penalties: {:.2}", r.cost.slack_penalty);
            println!("RES penetration:   {:.2} %", r.res_penetration_pct());
            println!("curtailed energy:  {:.1} MWh", r.total_curtailed_mwh());
            println!("CO2:               {:.1} t", r.co2_tons);
            println!("energy not served: {:.3} MWh", r.ens_mwh);
            println!("worst MIP gap:     {:.2e}", r.max_gap);
            for s in storage_transaction_stats(&r) {
                println!(
                    "storage {}: {:.2} h/d discharge, {:.2} h/d charge",
                    s.id, s.discharge_hours_per_day, s.charge_hours_per_day
                );
            }
            if let Some(path) = output {
                std::fs::write(&path, serde_json::to_vec_pretty(&r)?)
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep {
            dataset,
            solve,
            tech,
            power_min,
            power_max,
            power_step,
            durations,
            days,
            workers,
            output,
        } => {
            let model = load(&dataset)?;
            let spec = SweepSpec {
                tech,
                power_min,
                power_max,
                power_step,
                durations,
                days,
                workers,
                options: solve.options(),
            };
            let result = run_sweep(&model, &spec)?;
            let paths = emit_reports(&result, &output)?;
            for p in &paths {
                println!("wrote {}", p.display());
            }
            if let Some(best) = &result.best_do_minimum {
                println!("best vs do-minimum: {best}");
            }
            let failed = result.rows.iter().filter(|r| r.status != "ok").count();
            if failed > 0 {
                eprintln!("{failed} scenario(s) failed");
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Credit { dataset, tech, power, duration } => {
            let model = load(&dataset)?;
            let pf = StoragePortfolio {
                entries: vec![PortfolioEntry { tech, power, duration }],
            };
            println!("{:.2}", capacity_credit(&model, &pf));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ExportMps { dataset, day, lp, output } => {
            let model = load(&dataset)?;
            let state = SystemState::cold_start(&model);
            let input = slice_day(&model, day, &state)?;
            let milp = build_day_model(&input, &SolveOptions::default())?;
            let format = if lp { ExportFormat::Lp } else { ExportFormat::Mps };
            export_problem(&milp, &output, format)
                .with_context(|| format!("writing {}", output.display()))?;
            println!(
                "wrote {} ({} vars, {} rows)",
                output.display(),
                milp.vars.len(),
                milp.rows.len()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
