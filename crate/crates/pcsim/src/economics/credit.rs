//! Capacity credit of a storage portfolio by load leveling: the largest
//! uniform peak reduction the portfolio can sustain across the whole year.

use crate::sweep::StoragePortfolio;
use crate::system::SystemModel;

/// Can the pooled portfolio keep net demand at or below `cap` in every hour
/// of every day? Days are checked independently; the store may begin each
/// day full, charges greedily whenever headroom under the cap allows, and
/// discharges exactly the excess above the cap. The greedy maximum-energy
/// trajectory is exchange-optimal, so this check is exact.
pub fn portfolio_peak_feasible(
    demand: &[f64],
    cap: f64,
    power: f64,
    charge_power: f64,
    energy: f64,
    roundtrip: f64,
) -> bool {
    let sqrt_n = roundtrip.sqrt();
    for day in demand.chunks(24) {
        let mut soc = energy;
        for &d in day {
            let excess = d - cap;
            if excess > 1e-9 {
                if excess > power + 1e-9 {
                    return false;
                }
                soc -= excess / sqrt_n;
                if soc < -1e-9 {
                    return false;
                }
            } else {
                let headroom = (cap - d).min(charge_power).max(0.0);
                soc = (soc + headroom * sqrt_n).min(energy);
            }
        }
    }
    true
}

/// Largest uniform peak reduction achievable on the demand series by a
/// pooled (power, charge power, usable energy, roundtrip) store, found by
/// bisection. Returns MW; always at least 0.
pub fn capacity_credit_pooled(
    demand: &[f64],
    power: f64,
    charge_power: f64,
    energy: f64,
    roundtrip: f64,
) -> f64 {
    if power <= 0.0 || energy <= 0.0 || demand.is_empty() {
        return 0.0;
    }
    let peak = demand.iter().cloned().fold(0.0, f64::max);
    let mut lo = 0.0; // always feasible
    let mut hi = power.min(peak);
    if portfolio_peak_feasible(demand, peak - hi, power, charge_power, energy, roundtrip) {
        return hi;
    }
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if portfolio_peak_feasible(demand, peak - mid, power, charge_power, energy, roundtrip) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Capacity credit of a portfolio against the model's demand series. The
/// assets are pooled (joint peak shaving is what the credit measures);
/// the pooled roundtrip efficiency is the usable-energy weighted average.
pub fn capacity_credit(model: &SystemModel, portfolio: &StoragePortfolio) -> f64 {
    let power = portfolio.total_power();
    let energy = portfolio.total_usable_energy();
    if power <= 0.0 || energy <= 0.0 {
        return 0.0;
    }
    let roundtrip = portfolio
        .entries
        .iter()
        .map(|e| e.usable_energy() * e.default_roundtrip())
        .sum::<f64>()
        / energy;
    capacity_credit_pooled(&model.demand.demand, power, power, energy, roundtrip)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn peaky_profile() -> Vec<f64> {
        // flat 100 MW with a single 2-hour 120 MW peak
        let mut d = vec![100.0; 24];
        d[18] = 120.0;
        d[19] = 120.0;
        d
    }

    #[test]
    fn constructed_profile_credit_is_the_peak_excess() {
        let d = peaky_profile();
        let credit = capacity_credit_pooled(&d, 20.0, 20.0, 200.0, 1.0);
        assert!((credit - 20.0).abs() < 0.1, "got {credit}");
    }

    #[test]
    fn zero_energy_gives_zero_credit() {
        let d = peaky_profile();
        assert_eq!(capacity_credit_pooled(&d, 20.0, 20.0, 0.0, 1.0), 0.0);
    }

    #[test]
    fn credit_never_exceeds_power() {
        let d = peaky_profile();
        for &(p, e) in &[(5.0, 1000.0), (20.0, 1000.0), (50.0, 10.0)] {
            let c = capacity_credit_pooled(&d, p, p, e, 0.8);
            assert!(c <= p + 1e-9);
        }
    }

    #[test]
    fn energy_limit_binds_on_long_peaks() {
        // 4-hour 40 MW excess, storage 60 MW but only 80 MWh at n = 1:
        // it can shave 80 MWh / 4 h = 20 MW of the excess.
        let mut d = vec![100.0; 24];
        for t in 10..14 {
            d[t] = 140.0;
        }
        let c = capacity_credit_pooled(&d, 60.0, 60.0, 80.0, 1.0);
        assert!((c - 20.0).abs() < 0.1, "got {c}");
    }

    #[test]
    fn credit_monotone_in_power_and_energy() {
        let d: Vec<f64> = (0..8760)
            .map(|h| 100.0 + 30.0 * ((h % 24) as f64 / 23.0) + if h % 24 == 19 { 25.0 } else { 0.0 })
            .collect();
        let powers = [5.0, 10.0, 20.0, 40.0];
        let energies = [10.0, 40.0, 120.0, 400.0];
        let mut grid = vec![vec![0.0; 4]; 4];
        for (i, &p) in powers.iter().enumerate() {
            for (j, &e) in energies.iter().enumerate() {
                grid[i][j] = capacity_credit_pooled(&d, p, p, e, 0.75);
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                if i > 0 {
                    assert!(grid[i][j] + 1e-6 >= grid[i - 1][j]);
                }
                if j > 0 {
                    assert!(grid[i][j] + 1e-6 >= grid[i][j - 1]);
                }
                assert!(grid[i][j] / powers[i] <= 1.0 + 1e-9);
            }
        }
    }
}
