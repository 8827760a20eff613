//! Rolling-horizon run over the first weeks of the year. Pass a day count
//! to simulate more (365 gives the full year).

use pcsim::annual::{simulate_days, storage_transaction_stats};
use pcsim::milp::SolveOptions;
use pcsim::sweep::StoragePortfolio;
use pcsim::system::testutil::miniature_model;

fn main() -> anyhow::Result<()> {
    let days: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(14);
    let model = miniature_model();

    let r = simulate_days(&model, &StoragePortfolio::empty(), &SolveOptions::default(), days)?;

    println!("{} days, operating cost {:.0} EUR", r.num_days, r.operating_cost);
    println!("  conventional    {:>12.0}", r.cost.conventional);
    println!("  hydro offers    {:>12.0}", r.cost.hydro);
    println!("  cross-border    {:>12.0}", r.cost.cross_border);
    println!("  demand response {:>12.0}", r.cost.demand_response);
    println!("  slack penalties {:>12.0}", r.cost.slack_penalty);
    println!("RES penetration {:.1} %", r.res_penetration_pct());
    for (i, tech) in model.renewables.iter().enumerate() {
        println!("  {} curtailment {:.2} %", tech.kind.label(), r.curtailment_pct(i));
    }
    println!("CO2 {:.0} t, ENS {:.3} MWh, worst gap {:.1e}", r.co2_tons, r.ens_mwh, r.max_gap);

    for s in storage_transaction_stats(&r) {
        println!(
            "{}: {:.2} h/day discharging, {:.2} h/day charging",
            s.id, s.discharge_hours_per_day, s.charge_hours_per_day
        );
    }

    let slowest = r.daily.iter().max_by(|a, b| a.wall_time_secs.total_cmp(&b.wall_time_secs));
    if let Some(d) = slowest {
        println!("slowest day: {} ({:.2} s, gap {:.1e})", d.day, d.wall_time_secs, d.rel_gap);
    }
    Ok(())
}
