//! Domain model of the power system: asset types, dataset loading and
//! validation, operating state, and slicing of the annual problem into
//! 24-hour inputs.

mod load;
mod state;
pub mod testutil;
mod types;
mod validate;

pub use load::{
    build_storage_unit, default_economic_params, load_system, LoadError, BESS_SOC_WINDOW,
    PHS_CHARGE_MIN_FRACTION, PHS_DISCHARGE_MIN_FRACTION,
};
pub use state::{StartupProgress, SystemState, ThermalState};
pub use types::*;
pub use validate::{validate, ValidationReport, Violation};

use crate::{DAYS_PER_YEAR, HOURS_PER_DAY};

/// One 24-hour slice of the annual problem: the hourly series for the day,
/// the hydro budgets valid for the day, and the incoming operating state.
#[derive(Debug, Clone)]
pub struct DayInput<'a> {
    pub model: &'a SystemModel,
    /// Day index in 0..365.
    pub day: usize,
    /// Demand, MW, 24 values.
    pub demand: Vec<f64>,
    /// Per renewable technology (same order as `model.renewables`), 24 values.
    pub res_availability: Vec<Vec<f64>>,
    /// Per interconnector: (import NTC, export NTC), 24 values each.
    pub ntc: Vec<(Vec<f64>, Vec<f64>)>,
    /// Reserve requirements per product and direction, 24 values each.
    pub reserve_requirements: ReserveSeries<Vec<f64>>,
    /// Demand-response ceiling, MW, 24 values.
    pub dr_max: Vec<f64>,
    /// Per hydro unit: budgets for this day.
    pub hydro_budgets: Vec<HydroDailyBudget>,
    /// State at hour 0 of the day.
    pub state: SystemState,
}

/// Error from [`slice_day`].
#[derive(Debug, thiserror::Error)]
#[error("day index {0} out of range 0..{DAYS_PER_YEAR}")]
pub struct DayOutOfRange(pub usize);

/// Extract hours `24*day .. 24*day+23` of every series, paired with the
/// given carryover state. Pure: identical inputs give identical output.
pub fn slice_day<'a>(
    model: &'a SystemModel,
    day: usize,
    state: &SystemState,
) -> Result<DayInput<'a>, DayOutOfRange> {
    if day >= DAYS_PER_YEAR {
        return Err(DayOutOfRange(day));
    }
    let lo = day * HOURS_PER_DAY;
    let hi = lo + HOURS_PER_DAY;
    let cut = |s: &[f64]| s[lo..hi].to_vec();
    Ok(DayInput {
        model,
        day,
        demand: cut(&model.demand.demand),
        res_availability: model
            .renewables
            .iter()
            .map(|r| cut(&r.availability))
            .collect(),
        ntc: model
            .interconnectors
            .iter()
            .map(|ic| (cut(&ic.ntc_import), cut(&ic.ntc_export)))
            .collect(),
        reserve_requirements: model.reserve_requirements.map_ref(|s| cut(s)),
        dr_max: cut(&model.demand.dr_max),
        hydro_budgets: model
            .hydro
            .iter()
            .map(|h| h.daily_budgets[day].clone())
            .collect(),
        state: state.clone(),
    })
}
