//! Candidate storage portfolios for capacity sweeps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::system::{build_storage_unit, StorageTech, StorageUnit, BESS_SOC_WINDOW};

/// Stored-energy hours a storage asset must keep behind each MW of
/// allocated reserves, used for every asset a sweep constructs.
pub const DEFAULT_RESERVE_ENERGY_BUFFER: f64 = 0.25;

/// One storage asset of a candidate portfolio, described by its rated power
/// and discharge duration at that power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PortfolioEntry {
    pub tech: StorageTech,
    /// Rated power, MW. Charging power is assumed symmetric.
    pub power: f64,
    /// Nameplate discharge duration, h.
    pub duration: f64,
}

impl PortfolioEntry {
    /// Nameplate energy, MWh.
    pub fn nameplate_energy(&self) -> f64 {
        self.power * self.duration
    }

    /// Usable energy, MWh: batteries only cycle within their state-of-charge
    /// window, pumped hydro reservoirs are usable end to end.
    pub fn usable_energy(&self) -> f64 {
        let window = match self.tech {
            StorageTech::Bess => BESS_SOC_WINDOW.1 - BESS_SOC_WINDOW.0,
            StorageTech::Phs => 1.0,
        };
        self.nameplate_energy() * window
    }

    pub fn default_roundtrip(&self) -> f64 {
        match self.tech {
            StorageTech::Bess => 0.80,
            StorageTech::Phs => 0.70,
        }
    }

    /// Concrete asset with the sweep's asset id convention.
    pub fn build_unit(&self, index: usize) -> StorageUnit {
        let label = match self.tech {
            StorageTech::Bess => "bess",
            StorageTech::Phs => "phs",
        };
        build_storage_unit(
            &format!("sw-{label}{index}"),
            self.tech,
            self.power,
            self.power,
            self.nameplate_energy(),
            None,
            None,
            None,
            DEFAULT_RESERVE_ENERGY_BUFFER,
        )
    }
}

impl fmt::Display for PortfolioEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.tech {
            StorageTech::Bess => "bess",
            StorageTech::Phs => "phs",
        };
        write!(f, "{label} {:.0}MW/{:.0}h", self.power, self.duration)
    }
}

/// A candidate set of new storage assets evaluated together.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoragePortfolio {
    pub entries: Vec<PortfolioEntry>,
}

impl StoragePortfolio {
    /// The baseline: no new storage.
    pub fn empty() -> Self {
        StoragePortfolio { entries: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_power(&self) -> f64 {
        self.entries.iter().map(|e| e.power).sum()
    }

    pub fn total_usable_energy(&self) -> f64 {
        self.entries.iter().map(|e| e.usable_energy()).sum()
    }

    /// Concrete assets, ids numbered in entry order.
    pub fn build_units(&self) -> Vec<StorageUnit> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| e.build_unit(i + 1))
            .collect()
    }

    /// Stable one-line label, also used as the sort key in reports.
    pub fn label(&self) -> String {
        if self.entries.is_empty() {
            return "none".into();
        }
        self.entries
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for StoragePortfolio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
