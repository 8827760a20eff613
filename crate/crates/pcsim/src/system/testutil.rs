//! Programmatic fixtures: a deterministic miniature system used across
//! tests and examples, plus small builders for hand-sized instances.
//!
//! The bundled dataset under `data/miniature/` is generated from
//! [`write_miniature_dataset`], so the in-memory fixture and the on-disk
//! fixture are the same system.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use super::types::*;
use crate::{DAYS_PER_YEAR, HOURS_PER_YEAR};

pub fn flat(v: f64) -> Vec<f64> {
    vec![v; HOURS_PER_YEAR]
}

fn rc(fcr: f64, afrr: f64, mfrr: f64) -> ReserveCapability {
    ReserveSeries {
        fcr_up: fcr,
        fcr_down: fcr,
        afrr_up: afrr,
        afrr_down: afrr,
        mfrr_up: mfrr,
        mfrr_down: mfrr,
    }
}

/// Deterministic synthetic demand: daily cycle plus a seasonal swing.
pub fn demand_series() -> Vec<f64> {
    (0..HOURS_PER_YEAR)
        .map(|h| {
            let hour = (h % 24) as f64;
            let day = (h / 24) as f64;
            let daily = 55.0 * (PI * (hour - 5.0) / 12.0).sin().max(-0.6);
            let seasonal = 25.0 * (2.0 * PI * (day - 15.0) / 365.0).cos();
            260.0 + daily + seasonal
        })
        .collect()
}

/// Synthetic wind availability with multi-day weather swings.
pub fn wind_series() -> Vec<f64> {
    (0..HOURS_PER_YEAR)
        .map(|h| {
            let t = h as f64;
            let weather = (2.0 * PI * t / 89.0).sin() + 0.6 * (2.0 * PI * t / 207.0).sin()
                + 0.4 * (2.0 * PI * t / 13.0).sin();
            (90.0 + 75.0 * weather).clamp(0.0, 200.0)
        })
        .collect()
}

/// Synthetic solar availability: daylight bell, stronger in summer.
pub fn pv_series() -> Vec<f64> {
    (0..HOURS_PER_YEAR)
        .map(|h| {
            let hour = (h % 24) as f64;
            let day = (h / 24) as f64;
            let season = 1.0 - 0.45 * (2.0 * PI * day / 365.0).cos();
            let bell = (PI * (hour - 6.0) / 12.0).sin().max(0.0);
            190.0 * season * bell * bell
        })
        .collect()
}

fn hydro_budgets() -> Vec<HydroDailyBudget> {
    (0..DAYS_PER_YEAR)
        .map(|d| {
            let season = 1.0 + 0.5 * (2.0 * PI * (d as f64 - 60.0) / 365.0).cos();
            HydroDailyBudget {
                mandatory: (110.0 * season).round(),
                offers: vec![(160.0 * season).round(), (110.0 * season).round()],
            }
        })
        .collect()
}

fn ccgt(id: &str, p_min: f64, p_max: f64, c1: f64, c2: f64) -> ThermalUnit {
    let half = (p_max - p_min) / 2.0;
    ThermalUnit {
        id: id.to_string(),
        p_min,
        p_max,
        ramp_up: 0.6 * p_max,
        ramp_down: 0.6 * p_max,
        min_up: 4,
        min_down: 3,
        sync_load: 0.0,
        desync_duration: 2,
        startup_types: vec![
            StartupType {
                kind: StartupKind::Hot,
                offline_threshold: 10,
                sync_duration: 1,
                soak_duration: 2,
                startup_cost: 30.0 * p_max,
            },
            StartupType {
                kind: StartupKind::Cold,
                offline_threshold: 10_000,
                sync_duration: 2,
                soak_duration: 3,
                startup_cost: 60.0 * p_max,
            },
        ],
        cost_blocks: vec![
            CostBlock { width: half, marginal_cost: c1 },
            CostBlock { width: half, marginal_cost: c2 },
        ],
        min_load_cost: 18.0 * p_min,
        shutdown_cost: 8.0 * p_max,
        reserve_capability: rc(0.05 * p_max, 0.15 * p_max, 0.25 * p_max),
        emission_factor: 0.37,
    }
}

/// The miniature system: 3 thermal units, 1 open-loop hydro, 1 BESS,
/// 1 PHS, wind + PV series, one interconnection, demand response.
pub fn miniature_model() -> SystemModel {
    let ocgt = ThermalUnit {
        id: "ocgt1".to_string(),
        p_min: 20.0,
        p_max: 80.0,
        ramp_up: 80.0,
        ramp_down: 80.0,
        min_up: 1,
        min_down: 1,
        sync_load: 0.0,
        desync_duration: 1,
        startup_types: vec![StartupType {
            kind: StartupKind::Hot,
            offline_threshold: 10_000,
            sync_duration: 0,
            soak_duration: 0,
            startup_cost: 1_500.0,
        }],
        cost_blocks: vec![CostBlock { width: 60.0, marginal_cost: 165.0 }],
        min_load_cost: 900.0,
        shutdown_cost: 300.0,
        reserve_capability: rc(8.0, 20.0, 40.0),
        emission_factor: 0.55,
    };

    let hydro = HydroUnit {
        id: "hydro1".to_string(),
        p_min: 20.0,
        p_max: 100.0,
        reserve_capability: ReserveSeries {
            fcr_up: 0.0,
            fcr_down: 0.0,
            afrr_up: 25.0,
            afrr_down: 25.0,
            mfrr_up: 40.0,
            mfrr_down: 40.0,
        },
        offers: vec![HydroOffer { cost: 58.0 }, HydroOffer { cost: 82.0 }],
        daily_budgets: hydro_budgets(),
        pump: Some(OpenLoopPump {
            pump_min: 15.0,
            pump_max: 60.0,
            energy_min: 0.0,
            energy_max: 400.0,
            roundtrip: 0.70,
            stored_energy_value: None,
        }),
    };

    let bess = crate::system::load::build_storage_unit(
        "bess1",
        StorageTech::Bess,
        40.0,
        40.0,
        80.0,
        Some(0.80),
        None,
        None,
        0.25,
    );
    let phs = crate::system::load::build_storage_unit(
        "phs1",
        StorageTech::Phs,
        50.0,
        50.0,
        300.0,
        Some(0.70),
        None,
        None,
        0.25,
    );

    let interconnector = Interconnector {
        id: "icx".to_string(),
        ntc_import: flat(60.0),
        ntc_export: flat(40.0),
        import_blocks: vec![
            ExchangeBlock { width: 30.0, price: 95.0 },
            ExchangeBlock { width: 30.0, price: 115.0 },
        ],
        export_blocks: vec![ExchangeBlock { width: 40.0, price: 40.0 }],
    };

    SystemModel {
        thermal: vec![
            ccgt("ccgt1", 80.0, 220.0, 65.0, 74.0),
            ccgt("ccgt2", 60.0, 160.0, 79.0, 90.0),
            ocgt,
        ],
        hydro: vec![hydro],
        storage: vec![bess, phs],
        interconnectors: vec![interconnector],
        renewables: vec![
            RenewableTech {
                kind: RenewableKind::Wind,
                availability: wind_series(),
                curtailable: true,
            },
            RenewableTech {
                kind: RenewableKind::Pv,
                availability: pv_series(),
                curtailable: true,
            },
        ],
        demand: DemandSide {
            demand: demand_series(),
            dr_max: flat(20.0),
            dr_daily_energy_cap: 40.0,
            dr_cost: 300.0,
            ens_penalty: 10_000.0,
            reserve_shortfall_penalty: 5_000.0,
        },
        reserve_requirements: ReserveSeries {
            fcr_up: flat(5.0),
            fcr_down: flat(5.0),
            afrr_up: flat(15.0),
            afrr_down: flat(10.0),
            mfrr_up: flat(25.0),
            mfrr_down: flat(15.0),
        },
        economics: crate::system::load::default_economic_params(),
    }
}

/// A minimal always-startable thermal unit with one flat cost block and
/// trivial commitment dynamics, for hand-sized solver tests.
pub fn simple_thermal(id: &str, p_min: f64, p_max: f64, marginal_cost: f64) -> ThermalUnit {
    ThermalUnit {
        id: id.to_string(),
        p_min,
        p_max,
        ramp_up: p_max,
        ramp_down: p_max,
        min_up: 1,
        min_down: 1,
        sync_load: 0.0,
        desync_duration: 1,
        startup_types: vec![StartupType {
            kind: StartupKind::Hot,
            offline_threshold: 10_000,
            sync_duration: 0,
            soak_duration: 0,
            startup_cost: 0.0,
        }],
        cost_blocks: vec![CostBlock { width: p_max - p_min, marginal_cost }],
        min_load_cost: 0.0,
        shutdown_cost: 0.0,
        reserve_capability: rc(0.0, 0.0, 0.0),
        emission_factor: 0.0,
    }
}

/// A bare system with only the given thermal units and a flat demand.
pub fn bare_system(thermal: Vec<ThermalUnit>, demand: Vec<f64>) -> SystemModel {
    let max_marginal = thermal
        .iter()
        .flat_map(|u| u.cost_blocks.iter().map(|b| b.marginal_cost))
        .fold(0.0, f64::max);
    SystemModel {
        thermal,
        hydro: Vec::new(),
        storage: Vec::new(),
        interconnectors: Vec::new(),
        renewables: Vec::new(),
        demand: DemandSide {
            demand,
            dr_max: flat(0.0),
            dr_daily_energy_cap: 0.0,
            dr_cost: max_marginal + 200.0,
            ens_penalty: 10_000.0_f64.max(max_marginal * 3.0),
            reserve_shortfall_penalty: 5_000.0,
        },
        reserve_requirements: ReserveSeries {
            fcr_up: flat(0.0),
            fcr_down: flat(0.0),
            afrr_up: flat(0.0),
            afrr_down: flat(0.0),
            mfrr_up: flat(0.0),
            mfrr_down: flat(0.0),
        },
        economics: crate::system::load::default_economic_params(),
    }
}

/// Write the miniature dataset (config + series files) into `dir`.
pub fn write_miniature_dataset(dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let config = r#"# Miniature demonstration system: three thermal units, one open-loop
# hydro station, one battery, one pumped-hydro station, wind and PV,
# one cross-border interconnection.

[demand]
series = "demand"
dr_max = 20.0
dr_daily_energy_cap = 40.0
dr_cost = 300.0
ens_penalty = 10000.0
reserve_shortfall_penalty = 5000.0

[reserves]
fcr_up = 5.0
fcr_down = 5.0
afrr_up = 15.0
afrr_down = 10.0
mfrr_up = 25.0
mfrr_down = 15.0

[[thermal]]
id = "ccgt1"
p_min = 80.0
p_max = 220.0
ramp_up = 132.0
ramp_down = 132.0
min_up = 4
min_down = 3
sync_load = 0.0
desync_duration = 2
min_load_cost = 1440.0
shutdown_cost = 1760.0
emission_factor = 0.37

[[thermal.startup]]
kind = "hot"
offline_threshold = 10
sync_duration = 1
soak_duration = 2
startup_cost = 6600.0

[[thermal.startup]]
kind = "cold"
offline_threshold = 10000
sync_duration = 2
soak_duration = 3
startup_cost = 13200.0

[[thermal.cost_block]]
width = 70.0
marginal_cost = 65.0

[[thermal.cost_block]]
width = 70.0
marginal_cost = 74.0

[thermal.reserve_capability]
fcr_up = 11.0
fcr_down = 11.0
afrr_up = 33.0
afrr_down = 33.0
mfrr_up = 55.0
mfrr_down = 55.0

[[thermal]]
id = "ccgt2"
p_min = 60.0
p_max = 160.0
ramp_up = 96.0
ramp_down = 96.0
min_up = 4
min_down = 3
sync_load = 0.0
desync_duration = 2
min_load_cost = 1080.0
shutdown_cost = 1280.0
emission_factor = 0.37

[[thermal.startup]]
kind = "hot"
offline_threshold = 10
sync_duration = 1
soak_duration = 2
startup_cost = 4800.0

[[thermal.startup]]
kind = "cold"
offline_threshold = 10000
sync_duration = 2
soak_duration = 3
startup_cost = 9600.0

[[thermal.cost_block]]
width = 50.0
marginal_cost = 79.0

[[thermal.cost_block]]
width = 50.0
marginal_cost = 90.0

[thermal.reserve_capability]
fcr_up = 8.0
fcr_down = 8.0
afrr_up = 24.0
afrr_down = 24.0
mfrr_up = 40.0
mfrr_down = 40.0

[[thermal]]
id = "ocgt1"
p_min = 20.0
p_max = 80.0
ramp_up = 80.0
ramp_down = 80.0
min_up = 1
min_down = 1
sync_load = 0.0
desync_duration = 1
min_load_cost = 900.0
shutdown_cost = 300.0
emission_factor = 0.55

[[thermal.startup]]
kind = "hot"
offline_threshold = 10000
sync_duration = 0
soak_duration = 0
startup_cost = 1500.0

[[thermal.cost_block]]
width = 60.0
marginal_cost = 165.0

[thermal.reserve_capability]
fcr_up = 8.0
fcr_down = 8.0
afrr_up = 20.0
afrr_down = 20.0
mfrr_up = 40.0
mfrr_down = 40.0

[[hydro]]
id = "hydro1"
p_min = 20.0
p_max = 100.0
offers = [58.0, 82.0]

[hydro.reserve_capability]
afrr_up = 25.0
afrr_down = 25.0
mfrr_up = 40.0
mfrr_down = 40.0

[hydro.pump]
pump_min = 15.0
pump_max = 60.0
energy_min = 0.0
energy_max = 400.0
roundtrip = 0.70

[[storage]]
id = "bess1"
tech = "bess"
power = 40.0
energy = 80.0
roundtrip = 0.80

[[storage]]
id = "phs1"
tech = "phs"
power = 50.0
energy = 300.0
roundtrip = 0.70

[[interconnector]]
id = "icx"
ntc_import = 60.0
ntc_export = 40.0
import_blocks = [[30.0, 95.0], [30.0, 115.0]]
export_blocks = [[40.0, 40.0]]

[[renewable]]
kind = "wind"
series = "wind"
curtailable = true

[[renewable]]
kind = "pv"
series = "pv"
curtailable = true
"#;
    std::fs::write(dir.join("system.toml"), config)?;

    let demand = demand_series();
    let wind = wind_series();
    let pv = pv_series();
    let mut f = std::io::BufWriter::new(std::fs::File::create(dir.join("series.csv"))?);
    writeln!(f, "demand,wind,pv")?;
    for h in 0..HOURS_PER_YEAR {
        writeln!(f, "{:.4},{:.4},{:.4}", demand[h], wind[h], pv[h])?;
    }
    f.flush()?;

    let budgets = hydro_budgets();
    let mut f = std::io::BufWriter::new(std::fs::File::create(dir.join("hydro.csv"))?);
    writeln!(f, "hydro1.mandatory,hydro1.offer1,hydro1.offer2")?;
    for b in &budgets {
        writeln!(f, "{:.4},{:.4},{:.4}", b.mandatory, b.offers[0], b.offers[1])?;
    }
    f.flush()?;
    Ok(())
}
