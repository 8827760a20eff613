use serde::{Deserialize, Serialize};

/// Tunables of a single daily solve: tie-breaker costs, penalty overrides,
/// and solver termination settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Relative MIP gap at which the solver may stop.
    pub mip_rel_gap: f64,
    /// Wall-clock limit per daily solve, s.
    pub time_limit_secs: f64,
    /// Solver threads; 1 keeps runs deterministic.
    pub threads: u32,
    /// Virtual cost of reserve allocation on thermal and hydro units, EUR/MW.
    pub virtual_reserve_thermal: f64,
    /// Virtual cost of upward reserve allocation on storage, EUR/MW.
    /// Lower than the thermal value so storage is preferred upward.
    pub virtual_reserve_storage_up: f64,
    /// Virtual cost of downward reserve allocation on storage, EUR/MW.
    pub virtual_reserve_storage_down: f64,
    /// Override the dataset's energy-not-served penalty, EUR/MWh.
    pub ens_penalty: Option<f64>,
    /// Override the dataset's reserve-shortfall penalty, EUR/MW.
    pub reserve_shortfall_penalty: Option<f64>,
    /// Override every end-of-horizon stored-energy value, EUR/MWh.
    pub stored_energy_value: Option<f64>,
    /// Override the stored-energy backing per MW of reserves, h.
    pub reserve_energy_buffer: Option<f64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mip_rel_gap: 0.001,
            time_limit_secs: 300.0,
            threads: 1,
            virtual_reserve_thermal: 0.01,
            virtual_reserve_storage_up: 0.005,
            virtual_reserve_storage_down: 0.02,
            ens_penalty: None,
            reserve_shortfall_penalty: None,
            stored_energy_value: None,
            reserve_energy_buffer: None,
        }
    }
}

impl SolveOptions {
    /// Like the default but with gap 0, for runs that must be bit-reproducible.
    pub fn exact() -> Self {
        SolveOptions {
            mip_rel_gap: 0.0,
            ..SolveOptions::default()
        }
    }

    /// Check the option invariants against the cheapest marginal cost of the
    /// system the options will be used with.
    pub fn check(&self, cheapest_marginal: f64) -> Result<(), String> {
        let virtuals = [
            self.virtual_reserve_thermal,
            self.virtual_reserve_storage_up,
            self.virtual_reserve_storage_down,
        ];
        if virtuals.iter().any(|&v| v < 0.0) {
            return Err("virtual reserve costs must be non-negative".into());
        }
        if cheapest_marginal > 0.0 {
            let cap = cheapest_marginal / 1000.0;
            if virtuals.iter().any(|&v| v > cap) {
                return Err(format!(
                    "virtual reserve costs must stay below 1/1000 of the cheapest marginal cost ({cheapest_marginal})"
                ));
            }
        }
        if !(self.mip_rel_gap >= 0.0) {
            return Err("mip_rel_gap must be non-negative".into());
        }
        if !(self.time_limit_secs > 0.0) {
            return Err("time_limit_secs must be positive".into());
        }
        if self.threads == 0 {
            return Err("threads must be at least 1".into());
        }
        Ok(())
    }
}
