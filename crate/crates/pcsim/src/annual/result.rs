//! Aggregated output of a rolling-horizon run.

use serde::{Deserialize, Serialize};

use crate::system::ReserveSeries;

/// Solver diagnostics for one day of the run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DayDiagnostics {
    pub day: usize,
    /// Daily objective as recomputed from the solution values, EUR.
    pub objective: f64,
    pub status: String,
    pub rel_gap: f64,
    pub wall_time_secs: f64,
    /// Largest constraint residual found by the independent verifier.
    pub max_residual: f64,
}

/// Objective split by cost family, each recomputed from solution values and
/// the column coefficients (not taken from the solver's reported total).
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct CostBreakdown {
    /// Thermal min-load, energy blocks, startup and shutdown costs.
    pub conventional: f64,
    /// Priced hydro offers.
    pub hydro: f64,
    /// Import cost minus export revenue.
    pub cross_border: f64,
    pub demand_response: f64,
    /// Virtual reserve allocation costs (tie-breaking only).
    pub reserve_virtual: f64,
    /// End-of-horizon stored-energy credit; non-positive.
    pub stored_energy_credit: f64,
    /// Energy-not-served, surplus, and reserve-shortfall penalties.
    pub slack_penalty: f64,
}

impl CostBreakdown {
    /// Sum of all families; matches the sum of daily objectives.
    pub fn total(&self) -> f64 {
        self.conventional
            + self.hydro
            + self.cross_border
            + self.demand_response
            + self.reserve_virtual
            + self.stored_energy_credit
            + self.slack_penalty
    }

    pub fn add(&mut self, other: &CostBreakdown) {
        self.conventional += other.conventional;
        self.hydro += other.hydro;
        self.cross_border += other.cross_border;
        self.demand_response += other.demand_response;
        self.reserve_virtual += other.reserve_virtual;
        self.stored_energy_credit += other.stored_energy_credit;
        self.slack_penalty += other.slack_penalty;
    }
}

/// Dispatch of every asset in one hour. Vectors are aligned with the asset
/// lists of the model the run was made on.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HourRecord {
    pub thermal_power: Vec<f64>,
    pub thermal_online: Vec<bool>,
    /// Hydro turbine output (net of nothing; pumping is separate).
    pub hydro_power: Vec<f64>,
    /// Pumping load per hydro unit; zero for units without a pump.
    pub hydro_pumping: Vec<f64>,
    /// Reservoir energy per hydro unit at the end of the hour, if pumped.
    pub hydro_soc: Vec<Option<f64>>,
    pub storage_charge: Vec<f64>,
    pub storage_discharge: Vec<f64>,
    /// State of charge at the end of the hour, usable MWh.
    pub storage_soc: Vec<f64>,
    pub imports: Vec<f64>,
    pub exports: Vec<f64>,
    pub res_power: Vec<f64>,
    pub res_curtailed: Vec<f64>,
    pub demand_response: f64,
    pub ens: f64,
    pub surplus: f64,
    pub reserve_shortfall: ReserveSeries<f64>,
}

/// Annual charge/discharge volumes of one storage asset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StorageFlows {
    pub id: String,
    pub rated_discharge: f64,
    pub rated_charge: f64,
    pub charged_mwh: f64,
    pub discharged_mwh: f64,
}

/// Everything a rolling-horizon run produces.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct AnnualResult {
    pub num_days: usize,
    /// One record per simulated hour, day-major.
    pub hours: Vec<HourRecord>,
    pub daily: Vec<DayDiagnostics>,
    pub cost: CostBreakdown,
    /// Total production cost, EUR: the sum of daily objectives with the
    /// end-of-horizon stored-energy credits (a planning incentive, not a
    /// cash flow) stripped back out.
    pub operating_cost: f64,
    pub demand_mwh: f64,
    /// Per renewable technology.
    pub res_available_mwh: Vec<f64>,
    pub res_delivered_mwh: Vec<f64>,
    pub res_curtailed_mwh: Vec<f64>,
    pub co2_tons: f64,
    pub ens_mwh: f64,
    pub surplus_mwh: f64,
    pub demand_response_mwh: f64,
    /// MW-hours of unmet requirement per product and direction.
    pub reserve_shortfall: ReserveSeries<f64>,
    pub storage: Vec<StorageFlows>,
    /// Worst relative MIP gap over all days.
    pub max_gap: f64,
    /// Fingerprint of the base system (before any portfolio additions),
    /// used to refuse cross-dataset economic comparisons.
    pub dataset_digest: u64,
}

impl AnnualResult {
    /// Delivered renewable energy as a share of demand, percent.
    pub fn res_penetration_pct(&self) -> f64 {
        if self.demand_mwh == 0.0 {
            return 0.0;
        }
        self.res_delivered_mwh.iter().sum::<f64>() / self.demand_mwh * 100.0
    }

    /// Curtailed share of available energy for one renewable technology,
    /// percent.
    pub fn curtailment_pct(&self, tech: usize) -> f64 {
        let avail = self.res_available_mwh[tech];
        if avail == 0.0 {
            return 0.0;
        }
        self.res_curtailed_mwh[tech] / avail * 100.0
    }

    pub fn total_curtailed_mwh(&self) -> f64 {
        self.res_curtailed_mwh.iter().sum()
    }
}

/// Equivalent full-power transaction hours per day for one storage asset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StorageTransactionStats {
    pub id: String,
    /// Discharged energy / rated discharge power / days, h per day.
    pub discharge_hours_per_day: f64,
    /// Charged energy / rated charge power / days, h per day.
    pub charge_hours_per_day: f64,
}

/// Per-asset equivalent transaction hours of a run.
pub fn storage_transaction_stats(result: &AnnualResult) -> Vec<StorageTransactionStats> {
    let days = result.num_days.max(1) as f64;
    result
        .storage
        .iter()
        .map(|s| StorageTransactionStats {
            id: s.id.clone(),
            discharge_hours_per_day: if s.rated_discharge > 0.0 {
                s.discharged_mwh / s.rated_discharge / days
            } else {
                0.0
            },
            charge_hours_per_day: if s.rated_charge > 0.0 {
                s.charged_mwh / s.rated_charge / days
            } else {
                0.0
            },
        })
        .collect()
}
