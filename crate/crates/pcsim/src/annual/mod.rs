//! Rolling-horizon simulation: the year as 365 chained daily solves, with
//! operating state carried across each midnight.

mod carry;
mod result;
mod simulate;

pub use carry::carry_state;
pub use result::{
    storage_transaction_stats, AnnualResult, CostBreakdown, DayDiagnostics, HourRecord,
    StorageFlows, StorageTransactionStats,
};
pub use simulate::{
    apply_portfolio, dataset_digest, simulate_days, simulate_year, SimulateError,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::SolveOptions;
    use crate::system::testutil::miniature_model;
    use crate::system::SystemState;
    use crate::sweep::StoragePortfolio;

    fn short_run(days: usize) -> AnnualResult {
        let model = miniature_model();
        simulate_days(&model, &StoragePortfolio::empty(), &SolveOptions::default(), days).unwrap()
    }

    #[test]
    fn soc_recursion_holds_across_day_boundaries() {
        let model = miniature_model();
        let r = short_run(3);
        assert_eq!(r.hours.len(), 72);
        let init = SystemState::cold_start(&model);
        for (i, unit) in model.storage.iter().enumerate() {
            let sn = unit.roundtrip.sqrt();
            for t in 0..r.hours.len() {
                let prev = if t == 0 { init.storage_soc[i] } else { r.hours[t - 1].storage_soc[i] };
                let want =
                    prev + r.hours[t].storage_charge[i] * sn - r.hours[t].storage_discharge[i] / sn;
                let got = r.hours[t].storage_soc[i];
                assert!((got - want).abs() < 1e-5, "{} hour {t}: {got} vs {want}", unit.id);
            }
        }
    }

    #[test]
    fn reservoir_continuity_across_day_boundaries() {
        let model = miniature_model();
        let r = short_run(2);
        for (i, unit) in model.hydro.iter().enumerate() {
            let Some(pump) = &unit.pump else { continue };
            let sn = pump.roundtrip.sqrt();
            // recursion includes turbine output only when the reservoir is
            // drawn down; here just check levels stay in bounds and move
            // plausibly (the verifier already enforces the exact recursion)
            for h in &r.hours {
                let e = h.hydro_soc[i].unwrap();
                assert!(e >= pump.energy_min - 1e-6 && e <= pump.energy_max + 1e-6);
                let _ = sn;
            }
        }
    }

    #[test]
    fn cost_breakdown_sums_to_daily_objectives() {
        let r = short_run(2);
        let total: f64 = r.daily.iter().map(|d| d.objective).sum();
        assert!((r.cost.total() - total).abs() < 1e-6, "{} vs {total}", r.cost.total());
        assert!(
            (r.operating_cost - (total - r.cost.stored_energy_credit)).abs() < 1e-6
        );
        // the credit is a credit
        assert!(r.cost.stored_energy_credit <= 1e-9);
    }

    #[test]
    fn res_energy_balance_and_kpis() {
        let model = miniature_model();
        let r = short_run(2);
        assert_eq!(r.res_available_mwh.len(), model.renewables.len());
        for i in 0..model.renewables.len() {
            let diff = r.res_available_mwh[i] - r.res_delivered_mwh[i] - r.res_curtailed_mwh[i];
            assert!(diff.abs() < 1e-5, "tech {i}: {diff}");
            let pct = r.curtailment_pct(i);
            assert!((0.0..=100.0).contains(&pct));
        }
        assert!(r.demand_mwh > 0.0);
        assert!(r.res_penetration_pct() > 0.0);
        assert!(r.co2_tons >= 0.0);
    }

    #[test]
    fn transaction_stats_reflect_flows() {
        let r = short_run(2);
        for (s, stat) in r.storage.iter().zip(storage_transaction_stats(&r)) {
            assert_eq!(s.id, stat.id);
            assert!(stat.discharge_hours_per_day >= 0.0);
            let want = s.discharged_mwh / s.rated_discharge / 2.0;
            assert!((stat.discharge_hours_per_day - want).abs() < 1e-12);
        }
    }

    #[test]
    fn portfolio_assets_participate() {
        let model = miniature_model();
        let pf = StoragePortfolio {
            entries: vec![crate::sweep::PortfolioEntry {
                tech: crate::system::StorageTech::Bess,
                power: 30.0,
                duration: 2.0,
            }],
        };
        let r = simulate_days(&model, &pf, &SolveOptions::default(), 1).unwrap();
        assert_eq!(r.storage.len(), model.storage.len() + 1);
        assert_eq!(r.storage.last().unwrap().id, "sw-bess1");
    }

    #[test]
    fn zero_days_rejected() {
        let model = miniature_model();
        assert!(matches!(
            simulate_days(&model, &StoragePortfolio::empty(), &SolveOptions::default(), 0),
            Err(SimulateError::Days)
        ));
    }

    #[test]
    fn digest_distinguishes_datasets() {
        let a = miniature_model();
        let mut b = a.clone();
        b.demand.demand[100] += 1.0;
        assert_ne!(dataset_digest(&a), dataset_digest(&b));
        assert_eq!(dataset_digest(&a), dataset_digest(&a.clone()));
    }
}
