//! Driving a battery of scenarios through the annual simulator.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annual::{simulate_days, SimulateError};
use crate::economics::{capacity_credit, net_benefit, LedgerError};
use crate::sweep::spec::{enumerate_portfolios, SpecError, SweepSpec};
use crate::sweep::StoragePortfolio;
use crate::system::SystemModel;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("baseline run failed: {0}")]
    Baseline(#[from] SimulateError),
    #[error("ledger: {0}")]
    Ledger(#[from] LedgerError),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// KPIs of one successfully evaluated scenario.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScenarioKpis {
    pub operating_cost_eur: f64,
    pub fixed_cost_eur: f64,
    pub capacity_credit_mw: f64,
    pub avoided_peaker_value_eur: f64,
    pub net_bau_eur: f64,
    pub net_do_minimum_eur: f64,
    pub curtailment_pct: f64,
    pub ens_mwh: f64,
    pub co2_tons: f64,
    pub max_gap: f64,
}

/// One row of the sweep: a portfolio plus either its KPIs or the failure.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioRow {
    pub portfolio: StoragePortfolio,
    pub label: String,
    pub power_mw: f64,
    pub usable_energy_mwh: f64,
    /// "ok" or the failure message.
    pub status: String,
    pub kpis: Option<ScenarioKpis>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    /// Rows in deterministic order: by total power, then label.
    pub rows: Vec<ScenarioRow>,
    /// Label of the best scenario against business as usual, if any beats 0.
    pub best_bau: Option<String>,
    pub best_do_minimum: Option<String>,
    pub days: usize,
    pub workers: usize,
    pub wall_time_secs: f64,
}

fn overall_curtailment_pct(avail: f64, curt: f64) -> f64 {
    if avail > 0.0 {
        curt / avail * 100.0
    } else {
        0.0
    }
}

/// Evaluate every portfolio of the spec's grid. The baseline (no storage)
/// is always evaluated, even when the grid does not contain it. Individual
/// scenario failures become rows with an error status instead of aborting
/// the sweep.
pub fn run_sweep(model: &SystemModel, spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    let started = std::time::Instant::now();
    let mut portfolios = enumerate_portfolios(spec)?;
    if !portfolios.iter().any(|p| p.is_empty()) {
        portfolios.insert(0, StoragePortfolio::empty());
    }

    let baseline = simulate_days(model, &StoragePortfolio::empty(), &spec.options, spec.days)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    let evaluated: Vec<(StoragePortfolio, Result<ScenarioKpis, String>)> = pool.install(|| {
        portfolios
            .into_par_iter()
            .map(|pf| {
                let kpis = evaluate(model, &pf, spec, &baseline);
                (pf, kpis)
            })
            .collect()
    });

    let mut rows: Vec<ScenarioRow> = evaluated
        .into_iter()
        .map(|(pf, res)| {
            let (status, kpis) = match res {
                Ok(k) => ("ok".to_string(), Some(k)),
                Err(e) => (e, None),
            };
            ScenarioRow {
                label: pf.label(),
                power_mw: pf.total_power(),
                usable_energy_mwh: pf.total_usable_energy(),
                portfolio: pf,
                status,
                kpis,
            }
        })
        .collect();
    rows.sort_by(|a, b| {
        a.power_mw
            .partial_cmp(&b.power_mw)
            .unwrap()
            .then_with(|| a.label.cmp(&b.label))
    });

    let best = |key: fn(&ScenarioKpis) -> f64| {
        rows.iter()
            .filter_map(|r| r.kpis.map(|k| (r, key(&k))))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .map(|(r, _)| r.label.clone())
    };
    Ok(SweepResult {
        best_bau: best(|k| k.net_bau_eur),
        best_do_minimum: best(|k| k.net_do_minimum_eur),
        rows,
        days: spec.days,
        workers: spec.workers,
        wall_time_secs: started.elapsed().as_secs_f64(),
    })
}

fn evaluate(
    model: &SystemModel,
    pf: &StoragePortfolio,
    spec: &SweepSpec,
    baseline: &crate::annual::AnnualResult,
) -> Result<ScenarioKpis, String> {
    let run = if pf.is_empty() {
        baseline.clone()
    } else {
        simulate_days(model, pf, &spec.options, spec.days).map_err(|e| e.to_string())?
    };
    let credit = capacity_credit(model, pf);
    let outcome = net_benefit(baseline, &run, pf, &model.economics, credit)
        .map_err(|e| e.to_string())?;
    Ok(ScenarioKpis {
        operating_cost_eur: run.operating_cost,
        fixed_cost_eur: outcome.fixed_cost,
        capacity_credit_mw: outcome.capacity_credit_mw,
        avoided_peaker_value_eur: outcome.avoided_peaker_value,
        net_bau_eur: outcome.net_bau,
        net_do_minimum_eur: outcome.net_do_minimum,
        curtailment_pct: overall_curtailment_pct(
            run.res_available_mwh.iter().sum(),
            run.res_curtailed_mwh.iter().sum(),
        ),
        ens_mwh: run.ens_mwh,
        co2_tons: run.co2_tons,
        max_gap: run.max_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::SolveOptions;
    use crate::system::testutil::miniature_model;
    use crate::system::StorageTech;

    fn tiny_spec() -> SweepSpec {
        SweepSpec {
            tech: StorageTech::Bess,
            power_min: 0.0,
            power_max: 30.0,
            power_step: 30.0,
            durations: vec![2.0],
            days: 1,
            workers: 2,
            options: SolveOptions::default(),
        }
    }

    #[test]
    fn sweep_rows_are_deterministic_and_include_baseline() {
        let model = miniature_model();
        let a = run_sweep(&model, &tiny_spec()).unwrap();
        let b = run_sweep(&model, &tiny_spec()).unwrap();
        assert_eq!(a.rows.len(), 2);
        assert_eq!(a.rows[0].label, "none");
        assert_eq!(a.rows[0].status, "ok");
        let base = a.rows[0].kpis.unwrap();
        assert_eq!(base.net_bau_eur, 0.0);
        assert_eq!(base.capacity_credit_mw, 0.0);
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            assert_eq!(ra.label, rb.label);
            let (ka, kb) = (ra.kpis.unwrap(), rb.kpis.unwrap());
            assert_eq!(ka.fixed_cost_eur, kb.fixed_cost_eur);
            assert_eq!(ka.capacity_credit_mw, kb.capacity_credit_mw);
        }
    }

    #[test]
    fn scenario_rows_carry_portfolio_kpis() {
        let model = miniature_model();
        let r = run_sweep(&model, &tiny_spec()).unwrap();
        let row = &r.rows[1];
        assert_eq!(row.power_mw, 30.0);
        let k = row.kpis.unwrap();
        assert!(k.fixed_cost_eur > 0.0);
        assert!(k.capacity_credit_mw >= 0.0);
        assert!((k.net_do_minimum_eur - k.net_bau_eur - k.avoided_peaker_value_eur).abs() < 1e-6);
        assert!(r.best_bau.is_some());
    }
}
