//! Evaluate a small grid of battery portfolios in parallel and write the
//! CSV reports.

use pcsim::milp::SolveOptions;
use pcsim::sweep::{emit_reports, run_sweep, SweepSpec};
use pcsim::system::testutil::miniature_model;
use pcsim::system::StorageTech;

fn main() -> anyhow::Result<()> {
    let model = miniature_model();
    let spec = SweepSpec {
        tech: StorageTech::Bess,
        power_min: 0.0,
        power_max: 60.0,
        power_step: 30.0,
        durations: vec![2.0, 4.0],
        days: 2,
        workers: 0,
        options: SolveOptions::default(),
    };

    let result = run_sweep(&model, &spec)?;
    println!(
        "{} scenarios over {} days in {:.1} s",
        result.rows.len(),
        result.days,
        result.wall_time_secs
    );
    println!("{:<18} {:>10} {:>14} {:>14}", "portfolio", "credit MW", "net bau", "net do-min");
    for row in &result.rows {
        match row.kpis {
            Some(k) => println!(
                "{:<18} {:>10.1} {:>14.0} {:>14.0}",
                row.label, k.capacity_credit_mw, k.net_bau_eur, k.net_do_minimum_eur
            ),
            None => println!("{:<18} {}", row.label, row.status),
        }
    }
    if let Some(best) = &result.best_do_minimum {
        println!("best against do-minimum: {best}");
    }

    let out = std::env::temp_dir().join("pcsim-sweep");
    for p in emit_reports(&result, &out)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}
