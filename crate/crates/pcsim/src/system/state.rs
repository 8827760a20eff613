//! Carryover operating state threaded between consecutive daily solves.

use serde::{Deserialize, Serialize};

use super::types::{StartupKind, SystemModel};

/// A startup sequence that crossed the day boundary: the unit committed to
/// a startup of the given class and has completed `hours_elapsed` hours of
/// its synchronization + soak trajectory (counted from the startup hour).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StartupProgress {
    pub kind: StartupKind,
    pub hours_elapsed: u32,
}

/// Per-thermal-unit operating state at a day boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalState {
    pub online: bool,
    /// Consecutive hours online (counting the last hour of the previous day).
    pub hours_online: u32,
    /// Consecutive hours offline.
    pub hours_offline: u32,
    /// Output during the last hour of the previous day, MW.
    pub power: f64,
    /// Set while a startup trajectory is still in its sync/soak phases.
    pub startup: Option<StartupProgress>,
    /// Hours at the start of the day during which the unit must remain
    /// online to honor a minimum-up window opened the previous day.
    pub min_up_hours_remaining: u32,
}

impl ThermalState {
    /// Offline long enough to qualify for the coldest startup class.
    pub fn cold(hours_offline: u32) -> Self {
        ThermalState {
            online: false,
            hours_online: 0,
            hours_offline,
            power: 0.0,
            startup: None,
            min_up_hours_remaining: 0,
        }
    }
}

/// Scenario-private mutable state; the model itself stays immutable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemState {
    pub thermal: Vec<ThermalState>,
    /// State of charge per storage unit, usable MWh.
    pub storage_soc: Vec<f64>,
    /// Reservoir energy per hydro unit (None for units without pumping).
    pub hydro_soc: Vec<Option<f64>>,
    /// Unused budgets at the end of the previous day (observability only;
    /// budgets do not roll over).
    pub hydro_budget_remaining: Vec<f64>,
}

impl SystemState {
    /// Default initial state: all thermal units offline long enough to be
    /// cold, all storage (and open-loop reservoirs) at 50% of usable range.
    pub fn cold_start(model: &SystemModel) -> Self {
        let thermal = model
            .thermal
            .iter()
            .map(|u| {
                let coldest = u
                    .startup_types
                    .iter()
                    .map(|s| s.offline_threshold)
                    .max()
                    .unwrap_or(0);
                ThermalState::cold(coldest.saturating_add(1000))
            })
            .collect();
        let storage_soc = model
            .storage
            .iter()
            .map(|s| 0.5 * (s.energy_min + s.energy_max))
            .collect();
        let hydro_soc = model
            .hydro
            .iter()
            .map(|h| {
                h.pump
                    .as_ref()
                    .map(|p| 0.5 * (p.energy_min + p.energy_max))
            })
            .collect();
        SystemState {
            thermal,
            storage_soc,
            hydro_soc,
            hydro_budget_remaining: vec![0.0; model.hydro.len()],
        }
    }

    /// Basic consistency checks used before building a day model.
    pub fn check_against(&self, model: &SystemModel) -> Result<(), String> {
        if self.thermal.len() != model.thermal.len()
            || self.storage_soc.len() != model.storage.len()
            || self.hydro_soc.len() != model.hydro.len()
        {
            return Err("state dimensions do not match the model".into());
        }
        for (st, unit) in self.thermal.iter().zip(&model.thermal) {
            if st.online && st.hours_offline > 0 || !st.online && st.hours_online > 0 {
                return Err(format!("unit {}: online flag and counters disagree", unit.id));
            }
            if st.startup.is_some() && !st.online {
                return Err(format!("unit {}: startup in progress while offline", unit.id));
            }
            if st.min_up_hours_remaining > 0 && !st.online {
                return Err(format!("unit {}: minimum-up window open while offline", unit.id));
            }
        }
        for ((soc, unit), idx) in self.storage_soc.iter().zip(&model.storage).zip(0..) {
            let _ = idx;
            let tol = 1e-6;
            if *soc < unit.energy_min - tol || *soc > unit.energy_max + tol {
                return Err(format!("storage {}: SOC {soc} outside bounds", unit.id));
            }
        }
        for (soc, unit) in self.hydro_soc.iter().zip(&model.hydro) {
            match (soc, &unit.pump) {
                (Some(e), Some(p)) => {
                    let tol = 1e-6;
                    if *e < p.energy_min - tol || *e > p.energy_max + tol {
                        return Err(format!("hydro {}: reservoir {e} outside bounds", unit.id));
                    }
                }
                (None, None) => {}
                _ => return Err(format!("hydro {}: pump/SOC mismatch", unit.id)),
            }
        }
        Ok(())
    }
}
