//! Annualized overnight investment costs.

use thiserror::Error;

use crate::system::{EconomicParams, StorageTech, StorageUnit, BESS_SOC_WINDOW};

#[derive(Debug, Error, PartialEq)]
pub enum AnnuityError {
    #[error("discount rate {0} outside (0, 1)")]
    Rate(f64),
    #[error("lifetime must be at least 1 year")]
    Lifetime,
    #[error("negative cost input {0}")]
    NegativeCost(f64),
}

/// Annuity factor r / (1 - (1+r)^-n).
fn annuity_factor(rate: f64, years: u32) -> f64 {
    rate / (1.0 - (1.0 + rate).powi(-(years as i32)))
}

/// Annualized cost of an overnight investment of `capex` EUR/kW with an
/// annual O&M share `opex_frac` of capex, over `years` at discount `rate`.
/// Returns EUR/kW/y.
pub fn annualized_cost(capex: f64, opex_frac: f64, rate: f64, years: u32) -> Result<f64, AnnuityError> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(AnnuityError::Rate(rate));
    }
    if years < 1 {
        return Err(AnnuityError::Lifetime);
    }
    if capex < 0.0 {
        return Err(AnnuityError::NegativeCost(capex));
    }
    if opex_frac < 0.0 {
        return Err(AnnuityError::NegativeCost(opex_frac));
    }
    Ok(capex * (annuity_factor(rate, years) + opex_frac))
}

/// Nameplate power (kW) and energy (kWh) behind a storage unit. The stored
/// energy bounds are usable MWh, so the BESS state-of-charge window is
/// divided back out to recover the nameplate energy the capex applies to.
fn nameplate(asset: &StorageUnit) -> (f64, f64) {
    let power_kw = asset.discharge_max * 1000.0;
    let usable_mwh = asset.energy_max - asset.energy_min;
    let window = match asset.tech {
        StorageTech::Bess => BESS_SOC_WINDOW.1 - BESS_SOC_WINDOW.0,
        StorageTech::Phs => 1.0,
    };
    (power_kw, usable_mwh / window * 1000.0)
}

/// Annual fixed cost of a storage asset, EUR/y.
///
/// The power and energy capex components are annualized over the project
/// lifetime. A mid-life energy-component replacement (batteries) is
/// discounted to present value and added to the overnight capex before
/// annualization; the O&M percentage applies to the initial capex only.
pub fn storage_fixed_cost(asset: &StorageUnit, params: &EconomicParams) -> Result<f64, AnnuityError> {
    let te = params.for_tech(asset.tech);
    if !(te.discount_rate > 0.0 && te.discount_rate < 1.0) {
        return Err(AnnuityError::Rate(te.discount_rate));
    }
    if te.lifetime < 1 {
        return Err(AnnuityError::Lifetime);
    }
    let (power_kw, energy_kwh) = nameplate(asset);
    if power_kw == 0.0 && energy_kwh == 0.0 {
        return Ok(0.0);
    }
    let capex0 = te.capex_power * power_kw + te.capex_energy * energy_kwh;
    let replacement_pv = te
        .replacement
        .map(|(cost, year)| cost * energy_kwh * (1.0 + te.discount_rate).powi(-(year as i32)))
        .unwrap_or(0.0);
    let af = annuity_factor(te.discount_rate, te.lifetime);
    Ok((capex0 + replacement_pv) * af + capex0 * te.opex_fraction)
}
