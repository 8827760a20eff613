//! Rolling-horizon simulation: 365 chained daily solves.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::annual::carry::carry_state;
use crate::annual::result::{
    AnnualResult, CostBreakdown, DayDiagnostics, HourRecord, StorageFlows,
};
use crate::milp::{build_day_model, names, BuildError, MilpModel, SolveOptions};
use crate::solver::{solve, verify_solution, MilpSolution, SolveError};
use crate::sweep::StoragePortfolio;
use crate::system::{slice_day, SystemModel, SystemState, RESERVE_SLOTS};
use crate::{DAYS_PER_YEAR, HOURS_PER_DAY};

#[derive(Debug, thiserror::Error)]
pub enum SimulateError {
    #[error("num_days must be in 1..={DAYS_PER_YEAR}")]
    Days,
    #[error("day {day}: {source}")]
    Build {
        day: usize,
        #[source]
        source: BuildError,
    },
    #[error("day {day}: {source}")]
    Solve {
        day: usize,
        #[source]
        source: SolveError,
    },
    #[error("day {day}: solution failed verification\n{report}")]
    Verify { day: usize, report: String },
    #[error("day {day}: carryover failed: {msg}")]
    Carry { day: usize, msg: String },
}

/// The base system with a candidate portfolio's assets appended.
pub fn apply_portfolio(model: &SystemModel, portfolio: &StoragePortfolio) -> SystemModel {
    let mut out = model.clone();
    out.storage.extend(portfolio.build_units());
    out
}

/// Fingerprint of the base system, used to refuse comparing runs made on
/// different datasets.
pub fn dataset_digest(model: &SystemModel) -> u64 {
    let mut h = DefaultHasher::new();
    for u in &model.thermal {
        u.id.hash(&mut h);
    }
    for u in &model.hydro {
        u.id.hash(&mut h);
    }
    for u in &model.storage {
        u.id.hash(&mut h);
    }
    for d in &model.demand.demand {
        d.to_bits().hash(&mut h);
    }
    h.finish()
}

/// Objective contribution of every column with a nonzero cost, split by
/// variable family. Recomputed from coefficients and values, independent of
/// the solver's reported objective.
fn day_cost_breakdown(milp: &MilpModel, sol: &MilpSolution) -> CostBreakdown {
    let mut c = CostBreakdown::default();
    for (var, &x) in milp.vars.iter().zip(&sol.values) {
        if var.obj == 0.0 {
            continue;
        }
        let amount = var.obj * x;
        let family = var.name.split(':').next().unwrap_or("");
        let slot = match family {
            "s" | "ssyn" | "ssoak" | "sdsp" | "sdes" | "y" | "yg" | "z" | "p" | "psyn"
            | "psoak" | "pdes" | "q" => &mut c.conventional,
            "rho" | "omega" | "ohc" | "ohd" | "sohc" | "sohd" => &mut c.hydro,
            "e" | "eoh" => &mut c.stored_energy_credit,
            "r" => &mut c.reserve_virtual,
            "imp" | "exp" | "qimp" | "qexp" => &mut c.cross_border,
            "dr" => &mut c.demand_response,
            "ens" | "exc" | "slr" => &mut c.slack_penalty,
            other => panic!("costed variable in unknown family {other}"),
        };
        *slot += amount;
    }
    // the constant from re-anchoring the stored-energy credit at the lower
    // reservoir bounds belongs to the same family
    c.stored_energy_credit += milp.objective_offset;
    c
}

fn record_hour(milp: &MilpModel, sol: &MilpSolution, model: &SystemModel, t: usize) -> HourRecord {
    let v = |name: &str| sol.value(milp, name);
    HourRecord {
        thermal_power: model.thermal.iter().map(|u| v(&names::power(&u.id, t))).collect(),
        thermal_online: model
            .thermal
            .iter()
            .map(|u| v(&names::online(&u.id, t)) > 0.5)
            .collect(),
        hydro_power: model.hydro.iter().map(|u| v(&names::power(&u.id, t))).collect(),
        hydro_pumping: model
            .hydro
            .iter()
            .map(|u| if u.pump.is_some() { v(&names::ohps_charge(&u.id, t)) } else { 0.0 })
            .collect(),
        hydro_soc: model
            .hydro
            .iter()
            .map(|u| u.pump.as_ref().map(|_| v(&names::ohps_soc(&u.id, t))))
            .collect(),
        storage_charge: model
            .storage
            .iter()
            .map(|u| v(&names::storage_charge(&u.id, t)))
            .collect(),
        storage_discharge: model
            .storage
            .iter()
            .map(|u| v(&names::storage_discharge(&u.id, t)))
            .collect(),
        storage_soc: model.storage.iter().map(|u| v(&names::storage_soc(&u.id, t))).collect(),
        imports: model
            .interconnectors
            .iter()
            .map(|ic| v(&names::import_total(&ic.id, t)))
            .collect(),
        exports: model
            .interconnectors
            .iter()
            .map(|ic| v(&names::export_total(&ic.id, t)))
            .collect(),
        res_power: model
            .renewables
            .iter()
            .enumerate()
            .map(|(i, r)| v(&names::res_power(r.kind.label(), i, t)))
            .collect(),
        res_curtailed: model
            .renewables
            .iter()
            .enumerate()
            .map(|(i, r)| v(&names::curtailment(r.kind.label(), i, t)))
            .collect(),
        demand_response: v(&names::demand_response(t)),
        ens: v(&names::ens(t)),
        surplus: v(&names::surplus(t)),
        reserve_shortfall: {
            let mut rs = crate::system::ReserveSeries::<f64>::default();
            for (e, d) in RESERVE_SLOTS {
                *rs.get_mut(e, d) = v(&names::reserve_slack(e, d, t));
            }
            rs
        },
    }
}

/// Simulate the first `num_days` days of the year with the portfolio's
/// assets added to the base system. State carries over between days; every
/// daily solution must pass independent verification at 1e-6.
pub fn simulate_days(
    base: &SystemModel,
    portfolio: &StoragePortfolio,
    opts: &SolveOptions,
    num_days: usize,
) -> Result<AnnualResult, SimulateError> {
    if num_days == 0 || num_days > DAYS_PER_YEAR {
        return Err(SimulateError::Days);
    }
    let digest = dataset_digest(base);
    let model = apply_portfolio(base, portfolio);
    let mut state = SystemState::cold_start(&model);

    let mut out = AnnualResult {
        num_days,
        res_available_mwh: vec![0.0; model.renewables.len()],
        res_delivered_mwh: vec![0.0; model.renewables.len()],
        res_curtailed_mwh: vec![0.0; model.renewables.len()],
        storage: model
            .storage
            .iter()
            .map(|s| StorageFlows {
                id: s.id.clone(),
                rated_discharge: s.discharge_max,
                rated_charge: s.charge_max,
                charged_mwh: 0.0,
                discharged_mwh: 0.0,
            })
            .collect(),
        dataset_digest: digest,
        ..AnnualResult::default()
    };
    out.hours.reserve(num_days * HOURS_PER_DAY);

    for day in 0..num_days {
        let input = slice_day(&model, day, &state).expect("day index in range");
        let milp =
            build_day_model(&input, opts).map_err(|source| SimulateError::Build { day, source })?;
        let sol = solve(&milp, opts).map_err(|source| SimulateError::Solve { day, source })?;
        let report = verify_solution(&milp, &sol, 1e-6);
        if !report.pass {
            return Err(SimulateError::Verify { day, report: report.to_string() });
        }
        let objective = milp.objective_at(&sol.values);
        let cost = day_cost_breakdown(&milp, &sol);
        out.cost.add(&cost);
        out.operating_cost += objective - cost.stored_energy_credit;
        out.max_gap = out.max_gap.max(sol.rel_gap);
        let max_residual = report
            .worst_row
            .as_ref()
            .map(|&(_, v)| v)
            .unwrap_or(0.0)
            .max(report.bound_violation);
        out.daily.push(DayDiagnostics {
            day,
            objective,
            status: sol.status.label().to_string(),
            rel_gap: sol.rel_gap,
            wall_time_secs: sol.wall_time_secs,
            max_residual,
        });

        for t in 0..HOURS_PER_DAY {
            let rec = record_hour(&milp, &sol, &model, t);
            out.demand_mwh += input.demand[t];
            for i in 0..model.renewables.len() {
                out.res_available_mwh[i] += input.res_availability[i][t];
                out.res_delivered_mwh[i] += rec.res_power[i];
                out.res_curtailed_mwh[i] += rec.res_curtailed[i];
            }
            for (i, u) in model.thermal.iter().enumerate() {
                out.co2_tons += rec.thermal_power[i] * u.emission_factor;
            }
            for i in 0..model.storage.len() {
                out.storage[i].charged_mwh += rec.storage_charge[i];
                out.storage[i].discharged_mwh += rec.storage_discharge[i];
            }
            out.ens_mwh += rec.ens;
            out.surplus_mwh += rec.surplus;
            out.demand_response_mwh += rec.demand_response;
            for (e, d) in RESERVE_SLOTS {
                *out.reserve_shortfall.get_mut(e, d) += rec.reserve_shortfall.get(e, d);
            }
            out.hours.push(rec);
        }

        state = carry_state(&milp, &sol, &input)
            .map_err(|msg| SimulateError::Carry { day, msg })?;
    }
    Ok(out)
}

/// Full-year run.
pub fn simulate_year(
    base: &SystemModel,
    portfolio: &StoragePortfolio,
    opts: &SolveOptions,
) -> Result<AnnualResult, SimulateError> {
    simulate_days(base, portfolio, opts, DAYS_PER_YEAR)
}
