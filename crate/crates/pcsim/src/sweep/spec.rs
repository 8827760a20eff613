//! Sweep specification and portfolio enumeration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::milp::SolveOptions;
use crate::sweep::{PortfolioEntry, StoragePortfolio};
use crate::system::StorageTech;
use crate::DAYS_PER_YEAR;

#[derive(Debug, Error, PartialEq)]
pub enum SpecError {
    #[error("power step must be positive, got {0}")]
    Step(f64),
    #[error("power range [{0}, {1}] is empty or negative")]
    Range(f64, f64),
    #[error("at least one duration is required")]
    NoDurations,
    #[error("duration {0} must be positive")]
    Duration(f64),
    #[error("days must be in 1..={DAYS_PER_YEAR}")]
    Days,
}

/// A grid of single-asset candidate portfolios: every power level of
/// `power_min..=power_max` in steps of `power_step`, crossed with every
/// duration. A zero power level contributes the empty baseline portfolio
/// once, regardless of how many durations there are.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    pub tech: StorageTech,
    pub power_min: f64,
    pub power_max: f64,
    pub power_step: f64,
    /// Discharge durations, h.
    pub durations: Vec<f64>,
    /// Simulated days per scenario (365 for a full year).
    pub days: usize,
    /// Worker threads; 0 picks the rayon default.
    pub workers: usize,
    pub options: SolveOptions,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        if !(self.power_step > 0.0) {
            return Err(SpecError::Step(self.power_step));
        }
        if self.power_min < 0.0 || self.power_max < self.power_min {
            return Err(SpecError::Range(self.power_min, self.power_max));
        }
        if self.durations.is_empty() {
            return Err(SpecError::NoDurations);
        }
        if let Some(&d) = self.durations.iter().find(|d| !(**d > 0.0)) {
            return Err(SpecError::Duration(d));
        }
        if self.days == 0 || self.days > DAYS_PER_YEAR {
            return Err(SpecError::Days);
        }
        Ok(())
    }
}

/// Materialize the grid, baseline (if present) first, then by rising power
/// and duration.
pub fn enumerate_portfolios(spec: &SweepSpec) -> Result<Vec<StoragePortfolio>, SpecError> {
    spec.validate()?;
    let mut out = Vec::new();
    let steps = ((spec.power_max - spec.power_min) / spec.power_step).round() as usize;
    for i in 0..=steps {
        let power = spec.power_min + i as f64 * spec.power_step;
        if power > spec.power_max + 1e-9 {
            break;
        }
        if power == 0.0 {
            out.push(StoragePortfolio::empty());
            continue;
        }
        for &duration in &spec.durations {
            out.push(StoragePortfolio {
                entries: vec![PortfolioEntry { tech: spec.tech, power, duration }],
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> SweepSpec {
        SweepSpec {
            tech: StorageTech::Bess,
            power_min: 0.0,
            power_max: 1000.0,
            power_step: 250.0,
            durations: vec![4.0],
            days: 365,
            workers: 0,
            options: SolveOptions::default(),
        }
    }

    #[test]
    fn zero_based_single_duration_grid() {
        let pf = enumerate_portfolios(&spec()).unwrap();
        assert_eq!(pf.len(), 5);
        assert!(pf[0].is_empty());
        assert_eq!(pf[4].total_power(), 1000.0);
    }

    #[test]
    fn dense_grid_counts() {
        let mut s = spec();
        s.power_min = 1000.0;
        s.power_max = 2000.0;
        s.durations = vec![1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0];
        let pf = enumerate_portfolios(&s).unwrap();
        assert_eq!(pf.len(), 5 * 7);
        assert!(pf.iter().all(|p| !p.is_empty()));
    }

    #[test]
    fn zero_step_is_rejected() {
        let mut s = spec();
        s.power_step = 0.0;
        assert_eq!(enumerate_portfolios(&s).unwrap_err(), SpecError::Step(0.0));
    }

    #[test]
    fn bad_ranges_and_durations_rejected() {
        let mut s = spec();
        s.power_max = -1.0;
        assert!(matches!(enumerate_portfolios(&s), Err(SpecError::Range(..))));
        let mut s = spec();
        s.durations = vec![];
        assert_eq!(enumerate_portfolios(&s).unwrap_err(), SpecError::NoDurations);
        let mut s = spec();
        s.durations = vec![4.0, 0.0];
        assert_eq!(enumerate_portfolios(&s).unwrap_err(), SpecError::Duration(0.0));
        let mut s = spec();
        s.days = 0;
        assert_eq!(enumerate_portfolios(&s).unwrap_err(), SpecError::Days);
    }
}
