//! Storage arbitrage on a constructed two-price day: a cheap baseload unit
//! covers the night, an expensive peaker the evening; the battery shifts
//! energy from one to the other whenever the price spread beats the
//! roundtrip losses.

use pcsim::milp::{build_day_model, names, SolveOptions};
use pcsim::solver::solve;
use pcsim::system::testutil::{bare_system, simple_thermal};
use pcsim::system::{build_storage_unit, slice_day, StorageTech, SystemState};
use pcsim::HOURS_PER_DAY;

fn main() -> anyhow::Result<()> {
    let mut demand = vec![100.0; 24];
    for t in 17..21 {
        demand[t] = 180.0;
    }
    let mut model = bare_system(
        vec![
            simple_thermal("base", 0.0, 150.0, 20.0),
            simple_thermal("peak", 0.0, 100.0, 100.0),
        ],
        demand.iter().cloned().cycle().take(8760).collect(),
    );
    model.storage.push(build_storage_unit(
        "batt",
        StorageTech::Bess,
        30.0,
        30.0,
        75.0,
        Some(0.81),
        None,
        Some(0.0), // no end-of-day stored value: cycling must pay for itself
        0.0,
    ));

    let state = SystemState::cold_start(&model);
    let day = slice_day(&model, 0, &state)?;
    let milp = build_day_model(&day, &SolveOptions::exact())?;
    let sol = solve(&milp, &SolveOptions::exact())?;
    println!("objective {:.2} EUR", sol.objective);

    println!("hour  demand   base   peak  charge  discharge    soc");
    for t in 0..HOURS_PER_DAY {
        println!(
            "{t:>4}  {:>6.0} {:>6.1} {:>6.1}  {:>6.1}  {:>9.1} {:>6.1}",
            day.demand[t],
            sol.value(&milp, &names::power("base", t)),
            sol.value(&milp, &names::power("peak", t)),
            sol.value(&milp, &names::storage_charge("batt", t)),
            sol.value(&milp, &names::storage_discharge("batt", t)),
            sol.value(&milp, &names::storage_soc("batt", t)),
        );
    }

    let peak_mwh: f64 = (0..24).map(|t| sol.value(&milp, &names::power("peak", t))).sum();
    println!("peaker energy with the battery in the market: {peak_mwh:.1} MWh");
    Ok(())
}
