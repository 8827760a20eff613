//! Asset and series types making up a [`SystemModel`].

use serde::{Deserialize, Serialize};

/// Reserve products co-optimized with energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReserveProduct {
    Fcr,
    Afrr,
    Mfrr,
}

impl ReserveProduct {
    pub const ALL: [ReserveProduct; 3] =
        [ReserveProduct::Fcr, ReserveProduct::Afrr, ReserveProduct::Mfrr];

    pub fn label(&self) -> &'static str {
        match self {
            ReserveProduct::Fcr => "fcr",
            ReserveProduct::Afrr => "afrr",
            ReserveProduct::Mfrr => "mfrr",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReserveDirection {
    Up,
    Down,
}

impl ReserveDirection {
    pub const ALL: [ReserveDirection; 2] = [ReserveDirection::Up, ReserveDirection::Down];

    pub fn label(&self) -> &'static str {
        match self {
            ReserveDirection::Up => "up",
            ReserveDirection::Down => "dn",
        }
    }
}

/// The six (product, direction) reserve slots.
pub const RESERVE_SLOTS: [(ReserveProduct, ReserveDirection); 6] = [
    (ReserveProduct::Fcr, ReserveDirection::Up),
    (ReserveProduct::Fcr, ReserveDirection::Down),
    (ReserveProduct::Afrr, ReserveDirection::Up),
    (ReserveProduct::Afrr, ReserveDirection::Down),
    (ReserveProduct::Mfrr, ReserveDirection::Up),
    (ReserveProduct::Mfrr, ReserveDirection::Down),
];

/// A value per reserve product and direction.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReserveSeries<T> {
    pub fcr_up: T,
    pub fcr_down: T,
    pub afrr_up: T,
    pub afrr_down: T,
    pub mfrr_up: T,
    pub mfrr_down: T,
}

impl<T> ReserveSeries<T> {
    pub fn get(&self, product: ReserveProduct, dir: ReserveDirection) -> &T {
        use ReserveDirection::*;
        use ReserveProduct::*;
        match (product, dir) {
            (Fcr, Up) => &self.fcr_up,
            (Fcr, Down) => &self.fcr_down,
            (Afrr, Up) => &self.afrr_up,
            (Afrr, Down) => &self.afrr_down,
            (Mfrr, Up) => &self.mfrr_up,
            (Mfrr, Down) => &self.mfrr_down,
        }
    }

    pub fn get_mut(&mut self, product: ReserveProduct, dir: ReserveDirection) -> &mut T {
        use ReserveDirection::*;
        use ReserveProduct::*;
        match (product, dir) {
            (Fcr, Up) => &mut self.fcr_up,
            (Fcr, Down) => &mut self.fcr_down,
            (Afrr, Up) => &mut self.afrr_up,
            (Afrr, Down) => &mut self.afrr_down,
            (Mfrr, Up) => &mut self.mfrr_up,
            (Mfrr, Down) => &mut self.mfrr_down,
        }
    }

    pub fn map_ref<U>(&self, mut f: impl FnMut(&T) -> U) -> ReserveSeries<U> {
        ReserveSeries {
            fcr_up: f(&self.fcr_up),
            fcr_down: f(&self.fcr_down),
            afrr_up: f(&self.afrr_up),
            afrr_down: f(&self.afrr_down),
            mfrr_up: f(&self.mfrr_up),
            mfrr_down: f(&self.mfrr_down),
        }
    }
}

/// Reserve provision capability, MW per product and direction.
pub type ReserveCapability = ReserveSeries<f64>;

/// Startup classes, ordered from shortest to longest standstill.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StartupKind {
    Hot,
    Warm,
    Cold,
}

impl StartupKind {
    pub fn label(&self) -> &'static str {
        match self {
            StartupKind::Hot => "hot",
            StartupKind::Warm => "warm",
            StartupKind::Cold => "cold",
        }
    }
}

/// One startup class of a thermal unit. A unit qualifies for the class if
/// its standstill time does not exceed `offline_threshold` (the coldest
/// class catches everything beyond the previous threshold).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartupType {
    pub kind: StartupKind,
    /// Hours offline up to which this class applies (inclusive).
    pub offline_threshold: u32,
    /// Synchronization phase length, h (output is zero).
    pub sync_duration: u32,
    /// Soak phase length, h (output ramps from sync load to minimum load).
    pub soak_duration: u32,
    /// Startup cost, EUR.
    pub startup_cost: f64,
}

/// One block of the piecewise-linear variable cost curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostBlock {
    /// Block width, MW.
    pub width: f64,
    /// Marginal cost of energy in the block, EUR/MWh.
    pub marginal_cost: f64,
}

/// A conventional dispatchable generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalUnit {
    pub id: String,
    /// Minimum stable generation, MW.
    pub p_min: f64,
    /// Maximum output, MW.
    pub p_max: f64,
    /// Ramp-up rate, MW/h.
    pub ramp_up: f64,
    /// Ramp-down rate, MW/h.
    pub ramp_down: f64,
    /// Minimum up time, h.
    pub min_up: u32,
    /// Minimum down time, h.
    pub min_down: u32,
    /// Output at synchronization, MW.
    pub sync_load: f64,
    /// Desynchronization trajectory length, h.
    pub desync_duration: u32,
    /// Ordered hot -> cold. At least one entry; the last is the fallback.
    pub startup_types: Vec<StartupType>,
    /// Widths sum to `p_max - p_min`; marginal costs non-decreasing.
    pub cost_blocks: Vec<CostBlock>,
    /// Cost of running at minimum load, EUR/h.
    pub min_load_cost: f64,
    /// Shutdown cost, EUR.
    pub shutdown_cost: f64,
    pub reserve_capability: ReserveCapability,
    /// tCO2 per MWh generated.
    pub emission_factor: f64,
}

impl ThermalUnit {
    /// Longest startup lead time (sync + soak) over all classes.
    pub fn max_startup_lead(&self) -> u32 {
        self.startup_types
            .iter()
            .map(|s| s.sync_duration + s.soak_duration)
            .max()
            .unwrap_or(0)
    }
}

/// A hydro energy offer: priced energy above the mandatory injections.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HydroOffer {
    /// Offer price, EUR/MWh.
    pub cost: f64,
}

/// Daily energy budgets of a hydro unit.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HydroDailyBudget {
    /// Mandatory (zero-cost) injection budget, MWh.
    pub mandatory: f64,
    /// Budget per energy offer, MWh; aligned with `HydroUnit::offers`.
    pub offers: Vec<f64>,
}

/// Pumping side of an open-loop pumped-hydro station.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpenLoopPump {
    /// Minimum pumping load, MW.
    pub pump_min: f64,
    /// Maximum pumping load, MW.
    pub pump_max: f64,
    /// Lower reservoir-energy bound, MWh.
    pub energy_min: f64,
    /// Upper reservoir-energy bound, MWh.
    pub energy_max: f64,
    /// Roundtrip efficiency of the pumping cycle, (0, 1].
    pub roundtrip: f64,
    /// End-of-horizon value of stored energy, EUR/MWh. `None` picks the
    /// day's average thermal marginal cost.
    pub stored_energy_value: Option<f64>,
}

/// A reservoir hydro plant, optionally with open-loop pumping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HydroUnit {
    pub id: String,
    pub p_min: f64,
    pub p_max: f64,
    pub reserve_capability: ReserveCapability,
    pub offers: Vec<HydroOffer>,
    /// One entry per day of the year.
    pub daily_budgets: Vec<HydroDailyBudget>,
    pub pump: Option<OpenLoopPump>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StorageTech {
    Bess,
    Phs,
}

impl StorageTech {
    pub fn label(&self) -> &'static str {
        match self {
            StorageTech::Bess => "bess",
            StorageTech::Phs => "phs",
        }
    }
}

/// A standalone storage station (battery or closed-loop pumped hydro).
///
/// Energy bounds are in usable MWh: any technology-specific state-of-charge
/// window is applied when the dataset is loaded, so `energy_min`/`energy_max`
/// are plain box bounds for the optimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StorageUnit {
    pub id: String,
    pub tech: StorageTech,
    /// Minimum discharging output when discharging, MW.
    pub discharge_min: f64,
    /// Rated discharging output, MW.
    pub discharge_max: f64,
    /// Minimum charging load when charging, MW.
    pub charge_min: f64,
    /// Rated charging load, MW.
    pub charge_max: f64,
    /// Usable energy bounds, MWh.
    pub energy_min: f64,
    pub energy_max: f64,
    /// Roundtrip efficiency, (0, 1].
    pub roundtrip: f64,
    pub reserve_capability: ReserveCapability,
    /// End-of-horizon value of stored energy, EUR/MWh. `None` picks the
    /// day's average thermal marginal cost.
    pub stored_energy_value: Option<f64>,
    /// Stored-energy backing required per MW of allocated reserves, h.
    pub reserve_energy_buffer: f64,
}

/// One priced block of cross-border exchange capacity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExchangeBlock {
    /// Block width, MW.
    pub width: f64,
    /// Import cost or export revenue, EUR/MWh.
    pub price: f64,
}

/// A cross-border interconnection modeled by its net transfer capacity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interconnector {
    pub id: String,
    /// Hourly import/export NTC, MW, 8760 values each.
    pub ntc_import: Vec<f64>,
    pub ntc_export: Vec<f64>,
    /// Import blocks, prices non-decreasing; widths sum to max import NTC.
    pub import_blocks: Vec<ExchangeBlock>,
    /// Export blocks, prices non-increasing; widths sum to max export NTC.
    pub export_blocks: Vec<ExchangeBlock>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenewableKind {
    Wind,
    Pv,
    Other,
}

impl RenewableKind {
    pub fn label(&self) -> &'static str {
        match self {
            RenewableKind::Wind => "wind",
            RenewableKind::Pv => "pv",
            RenewableKind::Other => "other",
        }
    }
}

/// One renewable technology aggregated at system level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenewableTech {
    pub kind: RenewableKind,
    /// Available production, MW, 8760 values.
    pub availability: Vec<f64>,
    /// Whether output may be curtailed below availability.
    pub curtailable: bool,
}

/// Demand, demand response, and the slack penalty levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandSide {
    /// Load, MW, 8760 values.
    pub demand: Vec<f64>,
    /// Hourly demand-response ceiling, MW, 8760 values.
    pub dr_max: Vec<f64>,
    /// Daily demand-response energy cap, MWh.
    pub dr_daily_energy_cap: f64,
    /// Demand-response activation cost, EUR/MWh.
    pub dr_cost: f64,
    /// Energy-not-served penalty, EUR/MWh.
    pub ens_penalty: f64,
    /// Reserve-shortfall penalty, EUR/MW.
    pub reserve_shortfall_penalty: f64,
}

/// Technology-specific economic evaluation parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TechEconomics {
    /// Project lifetime, years.
    pub lifetime: u32,
    /// Capex of the power component, EUR/kW.
    pub capex_power: f64,
    /// Capex of the energy component, EUR/kWh.
    pub capex_energy: f64,
    /// Mid-life energy-component replacement (cost EUR/kWh, year).
    pub replacement: Option<(f64, u32)>,
    /// Annual O&M, fraction of capex per year.
    pub opex_fraction: f64,
    /// Discount rate, fraction.
    pub discount_rate: f64,
}

/// Economic parameters for the storage technologies and the OCGT
/// counterfactual generation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EconomicParams {
    pub bess: TechEconomics,
    pub phs: TechEconomics,
    pub ocgt: TechEconomics,
}

impl EconomicParams {
    pub fn for_tech(&self, tech: StorageTech) -> &TechEconomics {
        match tech {
            StorageTech::Bess => &self.bess,
            StorageTech::Phs => &self.phs,
        }
    }
}

/// Immutable description of all assets plus the annual time series.
/// Safe to share across concurrently running scenarios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemModel {
    pub thermal: Vec<ThermalUnit>,
    pub hydro: Vec<HydroUnit>,
    pub storage: Vec<StorageUnit>,
    pub interconnectors: Vec<Interconnector>,
    pub renewables: Vec<RenewableTech>,
    pub demand: DemandSide,
    pub reserve_requirements: ReserveSeries<Vec<f64>>,
    pub economics: EconomicParams,
}

impl SystemModel {
    pub fn asset_count(&self) -> usize {
        self.thermal.len() + self.hydro.len() + self.storage.len() + self.renewables.len()
    }

    /// Indices of hydro units with pumping capability.
    pub fn open_loop_indices(&self) -> Vec<usize> {
        self.hydro
            .iter()
            .enumerate()
            .filter(|(_, h)| h.pump.is_some())
            .map(|(i, _)| i)
            .collect()
    }
}
