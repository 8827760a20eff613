//! Solve one day of the bundled miniature system and print the dispatch.

use pcsim::milp::{build_day_model, names, SolveOptions};
use pcsim::solver::{solve, verify_solution};
use pcsim::system::testutil::miniature_model;
use pcsim::system::{slice_day, SystemState};

fn main() -> anyhow::Result<()> {
    let model = miniature_model();
    let state = SystemState::cold_start(&model);
    let day = slice_day(&model, 10, &state)?;
    let milp = build_day_model(&day, &SolveOptions::default())?;
    println!(
        "day 10: {} variables ({} binary), {} rows",
        milp.vars.len(),
        milp.num_binaries(),
        milp.rows.len()
    );

    let sol = solve(&milp, &SolveOptions::default())?;
    println!("objective {:.2} EUR, status {}", sol.objective, sol.status.label());

    let report = verify_solution(&milp, &sol, 1e-6);
    println!("independent verification: {}", if report.pass { "pass" } else { "FAIL" });

    println!("\nhour  demand  thermal   hydro  storage     res  import     ens");
    for t in 0..24 {
        let thermal: f64 = model.thermal.iter().map(|u| sol.value(&milp, &names::power(&u.id, t))).sum();
        let hydro: f64 = model.hydro.iter().map(|h| sol.value(&milp, &names::power(&h.id, t))).sum();
        let storage: f64 = model
            .storage
            .iter()
            .map(|s| {
                sol.value(&milp, &names::storage_discharge(&s.id, t))
                    - sol.value(&milp, &names::storage_charge(&s.id, t))
            })
            .sum();
        let res: f64 = model
            .renewables
            .iter()
            .enumerate()
            .map(|(i, r)| sol.value(&milp, &names::res_power(r.kind.label(), i, t)))
            .sum();
        let import: f64 = model
            .interconnectors
            .iter()
            .map(|ic| {
                sol.value(&milp, &names::import_total(&ic.id, t))
                    - sol.value(&milp, &names::export_total(&ic.id, t))
            })
            .sum();
        println!(
            "{t:>4}  {:>6.1}  {thermal:>7.1}  {hydro:>6.1}  {storage:>7.1}  {res:>6.1}  {import:>6.1}  {:>6.2}",
            day.demand[t],
            sol.value(&milp, &names::ens(t)),
        );
    }
    Ok(())
}
