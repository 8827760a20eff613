//! Dataset loading: a TOML system config plus a series directory with
//! `series.csv` (8760 hourly rows) and `hydro.csv` (365 daily rows).

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::types::*;
use super::validate::validate;
use crate::{DAYS_PER_YEAR, HOURS_PER_YEAR};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{file}: expected {expected} data rows, found {found}")]
    BadLength {
        file: PathBuf,
        expected: usize,
        found: usize,
    },
    #[error("{file}: missing column '{column}'")]
    MissingColumn { file: PathBuf, column: String },
    #[error("{file}: row {row}, column '{column}': {message}")]
    BadValue {
        file: PathBuf,
        row: usize,
        column: String,
        message: String,
    },
    #[error("invalid system model:\n{0}")]
    Invalid(String),
}

/// A scalar constant or a reference to a series column.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ScalarOrColumn {
    Scalar(f64),
    Column { series: String },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReserveCapabilityCfg {
    #[serde(default)]
    fcr_up: f64,
    #[serde(default)]
    fcr_down: f64,
    #[serde(default)]
    afrr_up: f64,
    #[serde(default)]
    afrr_down: f64,
    #[serde(default)]
    mfrr_up: f64,
    #[serde(default)]
    mfrr_down: f64,
}

impl ReserveCapabilityCfg {
    fn build(&self) -> ReserveCapability {
        ReserveSeries {
            fcr_up: self.fcr_up,
            fcr_down: self.fcr_down,
            afrr_up: self.afrr_up,
            afrr_down: self.afrr_down,
            mfrr_up: self.mfrr_up,
            mfrr_down: self.mfrr_down,
        }
    }

    fn uniform(v: f64) -> ReserveCapability {
        ReserveSeries {
            fcr_up: v,
            fcr_down: v,
            afrr_up: v,
            afrr_down: v,
            mfrr_up: v,
            mfrr_down: v,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StartupTypeCfg {
    kind: StartupKind,
    offline_threshold: u32,
    sync_duration: u32,
    soak_duration: u32,
    startup_cost: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CostBlockCfg {
    width: f64,
    marginal_cost: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThermalCfg {
    id: String,
    p_min: f64,
    p_max: f64,
    ramp_up: f64,
    ramp_down: f64,
    min_up: u32,
    min_down: u32,
    #[serde(default)]
    sync_load: f64,
    #[serde(default = "one")]
    desync_duration: u32,
    startup: Vec<StartupTypeCfg>,
    cost_block: Vec<CostBlockCfg>,
    #[serde(default)]
    min_load_cost: f64,
    #[serde(default)]
    shutdown_cost: f64,
    #[serde(default)]
    reserve_capability: ReserveCapabilityCfg,
    #[serde(default)]
    emission_factor: f64,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PumpCfg {
    pump_min: Option<f64>,
    pump_max: f64,
    energy_min: f64,
    energy_max: f64,
    #[serde(default = "phs_roundtrip")]
    roundtrip: f64,
    stored_energy_value: Option<f64>,
}

fn phs_roundtrip() -> f64 {
    0.70
}

fn bess_roundtrip() -> f64 {
    0.80
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HydroCfg {
    id: String,
    p_min: f64,
    p_max: f64,
    /// Offer prices, EUR/MWh; daily budgets come from hydro.csv.
    offers: Vec<f64>,
    #[serde(default)]
    reserve_capability: ReserveCapabilityCfg,
    pump: Option<PumpCfg>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StorageCfg {
    id: String,
    tech: StorageTech,
    /// Rated discharge power, MW.
    power: f64,
    /// Rated charge power, MW; defaults to `power`.
    charge_power: Option<f64>,
    /// Nameplate energy capacity, MWh.
    energy: f64,
    roundtrip: Option<f64>,
    /// Reserve capability; defaults to rated power on every product the
    /// technology may serve (PHS is excluded from FCR).
    reserve_capability: Option<ReserveCapabilityCfg>,
    stored_energy_value: Option<f64>,
    #[serde(default = "default_buffer")]
    reserve_energy_buffer: f64,
}

fn default_buffer() -> f64 {
    0.25
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InterconnectorCfg {
    id: String,
    ntc_import: ScalarOrColumn,
    ntc_export: ScalarOrColumn,
    import_blocks: Vec<(f64, f64)>,
    export_blocks: Vec<(f64, f64)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RenewableCfg {
    kind: RenewableKind,
    series: String,
    #[serde(default = "yes")]
    curtailable: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DemandCfg {
    series: String,
    #[serde(default)]
    dr_max: Option<ScalarOrColumn>,
    #[serde(default)]
    dr_daily_energy_cap: f64,
    #[serde(default = "default_dr_cost")]
    dr_cost: f64,
    #[serde(default = "default_ens_penalty")]
    ens_penalty: f64,
    #[serde(default = "default_reserve_penalty")]
    reserve_shortfall_penalty: f64,
}

fn default_dr_cost() -> f64 {
    300.0
}

fn default_ens_penalty() -> f64 {
    10_000.0
}

fn default_reserve_penalty() -> f64 {
    5_000.0
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReservesCfg {
    fcr_up: Option<ScalarOrColumn>,
    fcr_down: Option<ScalarOrColumn>,
    afrr_up: Option<ScalarOrColumn>,
    afrr_down: Option<ScalarOrColumn>,
    mfrr_up: Option<ScalarOrColumn>,
    mfrr_down: Option<ScalarOrColumn>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TechEconomicsCfg {
    lifetime: u32,
    capex_power: f64,
    capex_energy: f64,
    replacement_cost: Option<f64>,
    replacement_year: Option<u32>,
    opex_fraction: f64,
    discount_rate: f64,
}

impl TechEconomicsCfg {
    fn build(&self) -> TechEconomics {
        TechEconomics {
            lifetime: self.lifetime,
            capex_power: self.capex_power,
            capex_energy: self.capex_energy,
            replacement: match (self.replacement_cost, self.replacement_year) {
                (Some(c), Some(y)) => Some((c, y)),
                _ => None,
            },
            opex_fraction: self.opex_fraction,
            discount_rate: self.discount_rate,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct EconomicsCfg {
    bess: Option<TechEconomicsCfg>,
    phs: Option<TechEconomicsCfg>,
    ocgt: Option<TechEconomicsCfg>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemCfg {
    demand: DemandCfg,
    #[serde(default)]
    reserves: ReservesCfg,
    #[serde(default)]
    thermal: Vec<ThermalCfg>,
    #[serde(default)]
    hydro: Vec<HydroCfg>,
    #[serde(default)]
    storage: Vec<StorageCfg>,
    #[serde(default)]
    interconnector: Vec<InterconnectorCfg>,
    #[serde(default)]
    renewable: Vec<RenewableCfg>,
    #[serde(default)]
    economics: EconomicsCfg,
}

/// Default economic parameters (storage and OCGT) applied when the config
/// omits them.
pub fn default_economic_params() -> EconomicParams {
    EconomicParams {
        bess: TechEconomics {
            lifetime: 25,
            capex_power: 250.0,
            capex_energy: 140.0,
            replacement: Some((100.0, 12)),
            opex_fraction: 0.025,
            discount_rate: 0.08,
        },
        phs: TechEconomics {
            lifetime: 40,
            capex_power: 580.0,
            capex_energy: 20.0,
            replacement: None,
            opex_fraction: 0.015,
            discount_rate: 0.08,
        },
        ocgt: TechEconomics {
            lifetime: 25,
            capex_power: 300.0,
            capex_energy: 0.0,
            replacement: None,
            opex_fraction: 0.02,
            discount_rate: 0.08,
        },
    }
}

/// BESS usable state-of-charge window, fractions of nameplate energy.
pub const BESS_SOC_WINDOW: (f64, f64) = (0.15, 0.95);
/// PHS minimum discharge loading, fraction of rated discharge power.
pub const PHS_DISCHARGE_MIN_FRACTION: f64 = 0.10;
/// PHS minimum pumping loading, fraction of rated charge power.
pub const PHS_CHARGE_MIN_FRACTION: f64 = 0.25;

/// Turn a storage config entry into a [`StorageUnit`], applying the
/// technology defaults (SOC window, minimum loadings, roundtrip).
pub fn build_storage_unit(
    id: &str,
    tech: StorageTech,
    power: f64,
    charge_power: f64,
    nameplate_energy: f64,
    roundtrip: Option<f64>,
    reserve_capability: Option<ReserveCapability>,
    stored_energy_value: Option<f64>,
    reserve_energy_buffer: f64,
) -> StorageUnit {
    let (discharge_min, charge_min, energy_min, energy_max, n) = match tech {
        StorageTech::Bess => (
            0.0,
            0.0,
            0.0,
            (BESS_SOC_WINDOW.1 - BESS_SOC_WINDOW.0) * nameplate_energy,
            roundtrip.unwrap_or_else(bess_roundtrip),
        ),
        StorageTech::Phs => (
            PHS_DISCHARGE_MIN_FRACTION * power,
            PHS_CHARGE_MIN_FRACTION * charge_power,
            0.0,
            nameplate_energy,
            roundtrip.unwrap_or_else(phs_roundtrip),
        ),
    };
    let reserve_capability = reserve_capability.unwrap_or_else(|| {
        let mut rc = ReserveCapabilityCfg::uniform(power.max(charge_power));
        if tech == StorageTech::Phs {
            rc.fcr_up = 0.0;
            rc.fcr_down = 0.0;
        }
        rc
    });
    StorageUnit {
        id: id.to_string(),
        tech,
        discharge_min,
        discharge_max: power,
        charge_min,
        charge_max: charge_power,
        energy_min,
        energy_max,
        roundtrip: n,
        reserve_capability,
        stored_energy_value,
        reserve_energy_buffer,
    }
}

struct SeriesTable {
    path: PathBuf,
    columns: HashMap<String, Vec<f64>>,
}

impl SeriesTable {
    fn read(path: &Path, expected_rows: usize) -> Result<Self, LoadError> {
        let mut rdr = csv::Reader::from_path(path).map_err(|e| LoadError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::other(e.to_string()),
        })?;
        let headers: Vec<String> = rdr
            .headers()
            .map_err(|e| LoadError::Parse {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?
            .iter()
            .map(|h| h.trim().to_string())
            .collect();
        let mut columns: Vec<Vec<f64>> = vec![Vec::new(); headers.len()];
        for (row_idx, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| LoadError::Parse {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
            for (col_idx, field) in record.iter().enumerate() {
                let v = field.trim().parse::<f64>().map_err(|_| LoadError::BadValue {
                    file: path.to_path_buf(),
                    row: row_idx + 2,
                    column: headers.get(col_idx).cloned().unwrap_or_default(),
                    message: format!("'{field}' is not a number"),
                })?;
                columns[col_idx].push(v);
            }
        }
        let found = columns.first().map_or(0, |c| c.len());
        if found != expected_rows {
            return Err(LoadError::BadLength {
                file: path.to_path_buf(),
                expected: expected_rows,
                found,
            });
        }
        Ok(SeriesTable {
            path: path.to_path_buf(),
            columns: headers.into_iter().zip(columns).collect(),
        })
    }

    fn column(&self, name: &str) -> Result<Vec<f64>, LoadError> {
        self.columns.get(name).cloned().ok_or_else(|| LoadError::MissingColumn {
            file: self.path.clone(),
            column: name.to_string(),
        })
    }

    fn resolve(&self, spec: &ScalarOrColumn, len: usize) -> Result<Vec<f64>, LoadError> {
        match spec {
            ScalarOrColumn::Scalar(v) => Ok(vec![*v; len]),
            ScalarOrColumn::Column { series } => self.column(series),
        }
    }
}

/// Load and validate a full system dataset.
pub fn load_system(config_path: &Path, series_dir: &Path) -> Result<SystemModel, LoadError> {
    let raw = std::fs::read_to_string(config_path).map_err(|e| LoadError::Io {
        path: config_path.to_path_buf(),
        source: e,
    })?;
    let cfg: SystemCfg = toml::from_str(&raw).map_err(|e| LoadError::Parse {
        path: config_path.to_path_buf(),
        message: e.to_string(),
    })?;

    let hourly = SeriesTable::read(&series_dir.join("series.csv"), HOURS_PER_YEAR)?;
    let daily = if cfg.hydro.is_empty() {
        None
    } else {
        Some(SeriesTable::read(&series_dir.join("hydro.csv"), DAYS_PER_YEAR)?)
    };

    let thermal = cfg
        .thermal
        .iter()
        .map(|t| ThermalUnit {
            id: t.id.clone(),
            p_min: t.p_min,
            p_max: t.p_max,
            ramp_up: t.ramp_up,
            ramp_down: t.ramp_down,
            min_up: t.min_up,
            min_down: t.min_down,
            sync_load: t.sync_load,
            desync_duration: t.desync_duration,
            startup_types: t
                .startup
                .iter()
                .map(|s| StartupType {
                    kind: s.kind,
                    offline_threshold: s.offline_threshold,
                    sync_duration: s.sync_duration,
                    soak_duration: s.soak_duration,
                    startup_cost: s.startup_cost,
                })
                .collect(),
            cost_blocks: t
                .cost_block
                .iter()
                .map(|b| CostBlock {
                    width: b.width,
                    marginal_cost: b.marginal_cost,
                })
                .collect(),
            min_load_cost: t.min_load_cost,
            shutdown_cost: t.shutdown_cost,
            reserve_capability: t.reserve_capability.build(),
            emission_factor: t.emission_factor,
        })
        .collect();

    let mut hydro = Vec::new();
    for h in &cfg.hydro {
        let daily = daily.as_ref().expect("hydro series table present");
        let mandatory = daily.column(&format!("{}.mandatory", h.id))?;
        let mut offer_budgets = Vec::new();
        for k in 0..h.offers.len() {
            offer_budgets.push(daily.column(&format!("{}.offer{}", h.id, k + 1))?);
        }
        let daily_budgets = (0..DAYS_PER_YEAR)
            .map(|d| HydroDailyBudget {
                mandatory: mandatory[d],
                offers: offer_budgets.iter().map(|o| o[d]).collect(),
            })
            .collect();
        hydro.push(HydroUnit {
            id: h.id.clone(),
            p_min: h.p_min,
            p_max: h.p_max,
            reserve_capability: h.reserve_capability.build(),
            offers: h.offers.iter().map(|&cost| HydroOffer { cost }).collect(),
            daily_budgets,
            pump: h.pump.as_ref().map(|p| OpenLoopPump {
                pump_min: p.pump_min.unwrap_or(PHS_CHARGE_MIN_FRACTION * p.pump_max),
                pump_max: p.pump_max,
                energy_min: p.energy_min,
                energy_max: p.energy_max,
                roundtrip: p.roundtrip,
                stored_energy_value: p.stored_energy_value,
            }),
        });
    }

    let storage = cfg
        .storage
        .iter()
        .map(|s| {
            build_storage_unit(
                &s.id,
                s.tech,
                s.power,
                s.charge_power.unwrap_or(s.power),
                s.energy,
                s.roundtrip,
                s.reserve_capability.as_ref().map(|rc| rc.build()),
                s.stored_energy_value,
                s.reserve_energy_buffer,
            )
        })
        .collect();

    let mut interconnectors = Vec::new();
    for ic in &cfg.interconnector {
        interconnectors.push(Interconnector {
            id: ic.id.clone(),
            ntc_import: hourly.resolve(&ic.ntc_import, HOURS_PER_YEAR)?,
            ntc_export: hourly.resolve(&ic.ntc_export, HOURS_PER_YEAR)?,
            import_blocks: ic
                .import_blocks
                .iter()
                .map(|&(width, price)| ExchangeBlock { width, price })
                .collect(),
            export_blocks: ic
                .export_blocks
                .iter()
                .map(|&(width, price)| ExchangeBlock { width, price })
                .collect(),
        });
    }

    let mut renewables = Vec::new();
    for r in &cfg.renewable {
        renewables.push(RenewableTech {
            kind: r.kind,
            availability: hourly.column(&r.series)?,
            curtailable: r.curtailable,
        });
    }

    let demand_series = hourly.column(&cfg.demand.series)?;
    let dr_max = match &cfg.demand.dr_max {
        Some(spec) => hourly.resolve(spec, HOURS_PER_YEAR)?,
        None => vec![0.0; HOURS_PER_YEAR],
    };
    let demand = DemandSide {
        demand: demand_series,
        dr_max,
        dr_daily_energy_cap: cfg.demand.dr_daily_energy_cap,
        dr_cost: cfg.demand.dr_cost,
        ens_penalty: cfg.demand.ens_penalty,
        reserve_shortfall_penalty: cfg.demand.reserve_shortfall_penalty,
    };

    let resolve_rr = |spec: &Option<ScalarOrColumn>| -> Result<Vec<f64>, LoadError> {
        match spec {
            Some(s) => hourly.resolve(s, HOURS_PER_YEAR),
            None => Ok(vec![0.0; HOURS_PER_YEAR]),
        }
    };
    let reserve_requirements = ReserveSeries {
        fcr_up: resolve_rr(&cfg.reserves.fcr_up)?,
        fcr_down: resolve_rr(&cfg.reserves.fcr_down)?,
        afrr_up: resolve_rr(&cfg.reserves.afrr_up)?,
        afrr_down: resolve_rr(&cfg.reserves.afrr_down)?,
        mfrr_up: resolve_rr(&cfg.reserves.mfrr_up)?,
        mfrr_down: resolve_rr(&cfg.reserves.mfrr_down)?,
    };

    let defaults = default_economic_params();
    let economics = EconomicParams {
        bess: cfg.economics.bess.as_ref().map_or(defaults.bess, |c| c.build()),
        phs: cfg.economics.phs.as_ref().map_or(defaults.phs, |c| c.build()),
        ocgt: cfg.economics.ocgt.as_ref().map_or(defaults.ocgt, |c| c.build()),
    };

    let model = SystemModel {
        thermal,
        hydro,
        storage,
        interconnectors,
        renewables,
        demand,
        reserve_requirements,
        economics,
    };

    let report = validate(&model);
    if !report.is_empty() {
        return Err(LoadError::Invalid(report.to_string()));
    }
    Ok(model)
}
