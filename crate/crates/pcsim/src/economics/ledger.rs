//! Net-benefit ledger of a storage portfolio against two counterfactuals:
//! business as usual (nothing is built) and do-minimum (peaking capacity
//! equal to the portfolio's capacity credit would have been built instead).

use thiserror::Error;

use crate::annual::AnnualResult;
use crate::economics::annuity::{annualized_cost, storage_fixed_cost, AnnuityError};
use crate::sweep::StoragePortfolio;
use crate::system::EconomicParams;

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("runs come from different datasets or horizons")]
    Mismatch,
    #[error(transparent)]
    Annuity(#[from] AnnuityError),
}

/// Annual net-benefit figures of one portfolio, EUR/y.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct EconomicOutcome {
    /// Baseline minus scenario operating cost.
    pub operating_saving: f64,
    /// Annualized investment plus fixed O&M of the portfolio.
    pub fixed_cost: f64,
    /// Load-leveling capacity credit, MW.
    pub capacity_credit_mw: f64,
    /// Annualized cost of the peaking capacity the credit displaces.
    pub avoided_peaker_value: f64,
    /// Against business as usual: savings minus fixed costs.
    pub net_bau: f64,
    /// Against do-minimum: additionally credits the displaced peakers.
    pub net_do_minimum: f64,
}

/// Assemble the ledger from a baseline run (no portfolio) and a scenario
/// run (portfolio added), both on the same dataset and horizon.
pub fn net_benefit(
    baseline: &AnnualResult,
    scenario: &AnnualResult,
    portfolio: &StoragePortfolio,
    params: &EconomicParams,
    capacity_credit_mw: f64,
) -> Result<EconomicOutcome, LedgerError> {
    if baseline.dataset_digest != scenario.dataset_digest
        || baseline.num_days != scenario.num_days
    {
        return Err(LedgerError::Mismatch);
    }
    let operating_saving = baseline.operating_cost - scenario.operating_cost;
    let mut fixed_cost = 0.0;
    for unit in portfolio.build_units() {
        fixed_cost += storage_fixed_cost(&unit, params)?;
    }
    let peaker_per_kw = annualized_cost(
        params.ocgt.capex_power,
        params.ocgt.opex_fraction,
        params.ocgt.discount_rate,
        params.ocgt.lifetime,
    )?;
    let avoided_peaker_value = capacity_credit_mw * 1000.0 * peaker_per_kw;
    let net_bau = operating_saving - fixed_cost;
    Ok(EconomicOutcome {
        operating_saving,
        fixed_cost,
        capacity_credit_mw,
        avoided_peaker_value,
        net_bau,
        net_do_minimum: net_bau + avoided_peaker_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::PortfolioEntry;
    use crate::system::{default_economic_params, StorageTech};

    fn run(cost: f64) -> AnnualResult {
        AnnualResult { operating_cost: cost, num_days: 365, dataset_digest: 7, ..Default::default() }
    }

    #[test]
    fn empty_portfolio_is_all_zero() {
        let params = default_economic_params();
        let o = net_benefit(&run(100.0), &run(100.0), &StoragePortfolio::empty(), &params, 0.0)
            .unwrap();
        assert_eq!(o.operating_saving, 0.0);
        assert_eq!(o.fixed_cost, 0.0);
        assert_eq!(o.net_bau, 0.0);
        assert_eq!(o.net_do_minimum, 0.0);
    }

    #[test]
    fn counterfactuals_differ_by_the_avoided_peaker_value() {
        let params = default_economic_params();
        let pf = StoragePortfolio {
            entries: vec![PortfolioEntry { tech: StorageTech::Phs, power: 500.0, duration: 6.0 }],
        };
        let o = net_benefit(&run(9.0e8), &run(8.2e8), &pf, &params, 500.0).unwrap();
        assert!((o.operating_saving - 8.0e7).abs() < 1e-3);
        assert!(o.fixed_cost > 0.0);
        assert!(
            (o.net_do_minimum - o.net_bau - o.avoided_peaker_value).abs() < 1e-6
        );
        // 500 MW of displaced peakers at 34.10 EUR/kW/y
        assert!((o.avoided_peaker_value - 17.05e6).abs() / 17.05e6 < 1e-3, "{}", o.avoided_peaker_value);
    }

    #[test]
    fn mismatched_runs_are_refused() {
        let params = default_economic_params();
        let mut other = run(1.0);
        other.dataset_digest = 8;
        assert!(matches!(
            net_benefit(&run(1.0), &other, &StoragePortfolio::empty(), &params, 0.0),
            Err(LedgerError::Mismatch)
        ));
        let mut short = run(1.0);
        short.num_days = 30;
        assert!(matches!(
            net_benefit(&run(1.0), &short, &StoragePortfolio::empty(), &params, 0.0),
            Err(LedgerError::Mismatch)
        ));
    }

    #[test]
    fn fixed_cost_matches_the_per_unit_annuities() {
        let params = default_economic_params();
        let pf = StoragePortfolio {
            entries: vec![
                PortfolioEntry { tech: StorageTech::Bess, power: 100.0, duration: 4.0 },
                PortfolioEntry { tech: StorageTech::Phs, power: 200.0, duration: 6.0 },
            ],
        };
        let o = net_benefit(&run(5.0), &run(5.0), &pf, &params, 0.0).unwrap();
        let want: f64 = pf
            .build_units()
            .iter()
            .map(|u| storage_fixed_cost(u, &params).unwrap())
            .sum();
        assert!((o.fixed_cost - want).abs() < 1e-9);
    }
}
