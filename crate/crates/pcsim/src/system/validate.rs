//! Invariant checks over a fully built [`SystemModel`].

use std::fmt;

use super::types::*;
use crate::{DAYS_PER_YEAR, HOURS_PER_YEAR};

const TOL: f64 = 1e-6;

/// One violated invariant, naming the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// The list of all violations found; empty means the model is acceptable.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, field: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            field: field.into(),
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Check every type invariant; returns a report rather than failing fast.
pub fn validate(model: &SystemModel) -> ValidationReport {
    let mut r = ValidationReport::default();

    for u in &model.thermal {
        let f = |name: &str| format!("thermal[{}].{}", u.id, name);
        if !(0.0 <= u.p_min && u.p_min <= u.p_max) {
            r.push(f("p_min"), format!("need 0 <= p_min <= p_max, got {} / {}", u.p_min, u.p_max));
        }
        let width_sum: f64 = u.cost_blocks.iter().map(|b| b.width).sum();
        if (width_sum - (u.p_max - u.p_min)).abs() > TOL {
            r.push(
                f("cost_blocks"),
                format!("block widths sum to {width_sum}, expected p_max - p_min = {}", u.p_max - u.p_min),
            );
        }
        for w in u.cost_blocks.windows(2) {
            if w[1].marginal_cost < w[0].marginal_cost - TOL {
                r.push(f("cost_blocks"), "marginal costs must be non-decreasing".to_string());
            }
        }
        if u.min_up < 1 {
            r.push(f("min_up"), "minimum up time must be at least 1 h");
        }
        if u.min_down < 1 {
            r.push(f("min_down"), "minimum down time must be at least 1 h");
        }
        if u.desync_duration < 1 {
            r.push(f("desync_duration"), "desynchronization must last at least 1 h");
        }
        if u.startup_types.is_empty() {
            r.push(f("startup_types"), "at least one startup type is required");
        }
        for w in u.startup_types.windows(2) {
            if w[1].offline_threshold <= w[0].offline_threshold {
                r.push(f("startup_types"), "offline thresholds must be strictly increasing hot -> cold");
            }
            if w[1].startup_cost < w[0].startup_cost - TOL {
                r.push(f("startup_types"), "startup costs must be non-decreasing hot -> cold");
            }
        }
    }

    for h in &model.hydro {
        let f = |name: &str| format!("hydro[{}].{}", h.id, name);
        if h.daily_budgets.len() != DAYS_PER_YEAR {
            r.push(f("daily_budgets"), format!("expected {DAYS_PER_YEAR} entries, got {}", h.daily_budgets.len()));
            continue;
        }
        for (d, b) in h.daily_budgets.iter().enumerate() {
            if b.mandatory < 0.0 || b.offers.iter().any(|&x| x < 0.0) {
                r.push(f("daily_budgets"), format!("negative budget on day {d}"));
            }
            if b.offers.len() != h.offers.len() {
                r.push(f("daily_budgets"), format!("day {d}: offer budget count mismatch"));
            }
        }
        if let Some(p) = &h.pump {
            if !(0.0 <= p.energy_min && p.energy_min <= p.energy_max) {
                r.push(f("pump.energy"), "need 0 <= energy_min <= energy_max");
            }
            if !(p.roundtrip > 0.0 && p.roundtrip <= 1.0) {
                r.push(f("pump.roundtrip"), format!("must lie in (0, 1], got {}", p.roundtrip));
            }
        }
    }

    for s in &model.storage {
        let f = |name: &str| format!("storage[{}].{}", s.id, name);
        match s.tech {
            StorageTech::Bess => {
                if s.discharge_min.abs() > TOL || s.charge_min.abs() > TOL {
                    r.push(
                        f("discharge_min"),
                        "BESS must have zero minimum loading in both directions",
                    );
                }
            }
            StorageTech::Phs => {
                let want_d = crate::system::load::PHS_DISCHARGE_MIN_FRACTION * s.discharge_max;
                let want_c = crate::system::load::PHS_CHARGE_MIN_FRACTION * s.charge_max;
                if (s.discharge_min - want_d).abs() > TOL {
                    r.push(f("discharge_min"), format!("PHS minimum generation loading must be {want_d} MW (10% of rated)"));
                }
                if (s.charge_min - want_c).abs() > TOL {
                    r.push(f("charge_min"), format!("PHS minimum pumping loading must be {want_c} MW (25% of rated)"));
                }
            }
        }
        if !(0.0 <= s.energy_min && s.energy_min <= s.energy_max) {
            r.push(f("energy"), "need 0 <= energy_min <= energy_max");
        }
        if !(s.roundtrip > 0.0 && s.roundtrip <= 1.0) {
            r.push(f("roundtrip"), format!("must lie in (0, 1], got {}", s.roundtrip));
        }
        if s.reserve_energy_buffer < 0.0 {
            r.push(f("reserve_energy_buffer"), "must be non-negative");
        }
    }

    for ic in &model.interconnectors {
        let f = |name: &str| format!("interconnector[{}].{}", ic.id, name);
        for (series, name) in [(&ic.ntc_import, "ntc_import"), (&ic.ntc_export, "ntc_export")] {
            if series.len() != HOURS_PER_YEAR {
                r.push(f(name), format!("expected {HOURS_PER_YEAR} values, got {}", series.len()));
            }
        }
        let max_imp = ic.ntc_import.iter().cloned().fold(0.0, f64::max);
        let max_exp = ic.ntc_export.iter().cloned().fold(0.0, f64::max);
        let imp_sum: f64 = ic.import_blocks.iter().map(|b| b.width).sum();
        let exp_sum: f64 = ic.export_blocks.iter().map(|b| b.width).sum();
        if (imp_sum - max_imp).abs() > TOL {
            r.push(f("import_blocks"), format!("widths sum to {imp_sum}, expected NTC {max_imp}"));
        }
        if (exp_sum - max_exp).abs() > TOL {
            r.push(f("export_blocks"), format!("widths sum to {exp_sum}, expected NTC {max_exp}"));
        }
        for w in ic.import_blocks.windows(2) {
            if w[1].price < w[0].price - TOL {
                r.push(f("import_blocks"), "import prices must be non-decreasing");
            }
        }
        for w in ic.export_blocks.windows(2) {
            if w[1].price > w[0].price + TOL {
                r.push(f("export_blocks"), "export prices must be non-increasing");
            }
        }
    }

    for (i, res) in model.renewables.iter().enumerate() {
        let f = |name: &str| format!("renewable[{}:{}].{}", i, res.kind.label(), name);
        if res.availability.len() != HOURS_PER_YEAR {
            r.push(f("availability"), format!("expected {HOURS_PER_YEAR} values, got {}", res.availability.len()));
        }
        if res.availability.iter().any(|&v| v < 0.0) {
            r.push(f("availability"), "negative availability");
        }
    }

    if model.demand.demand.len() != HOURS_PER_YEAR {
        r.push("demand.series", format!("expected {HOURS_PER_YEAR} values, got {}", model.demand.demand.len()));
    }
    if model.demand.dr_max.len() != HOURS_PER_YEAR {
        r.push("demand.dr_max", format!("expected {HOURS_PER_YEAR} values, got {}", model.demand.dr_max.len()));
    }

    // Penalty ordering: ens > dr cost > every other marginal cost.
    let mut max_marginal: f64 = 0.0;
    for u in &model.thermal {
        for b in &u.cost_blocks {
            max_marginal = max_marginal.max(b.marginal_cost);
        }
    }
    for ic in &model.interconnectors {
        for b in &ic.import_blocks {
            max_marginal = max_marginal.max(b.price);
        }
    }
    for h in &model.hydro {
        for o in &h.offers {
            max_marginal = max_marginal.max(o.cost);
        }
    }
    if model.demand.dr_cost <= max_marginal {
        r.push("demand.dr_cost", format!("must exceed every thermal/hydro/import marginal cost (max {max_marginal})"));
    }
    if model.demand.ens_penalty <= model.demand.dr_cost {
        r.push("demand.ens_penalty", "must exceed the demand-response cost");
    }

    for (product, dir) in RESERVE_SLOTS {
        let series = model.reserve_requirements.get(product, dir);
        let name = format!("reserves.{}_{}", product.label(), dir.label());
        if series.len() != HOURS_PER_YEAR {
            r.push(name.clone(), format!("expected {HOURS_PER_YEAR} values, got {}", series.len()));
            continue;
        }
        if series.iter().any(|&v| v < 0.0) {
            r.push(name.clone(), "negative requirement");
        }
    }
    let fcr_symmetric = model
        .reserve_requirements
        .fcr_up
        .iter()
        .zip(&model.reserve_requirements.fcr_down)
        .all(|(a, b)| (a - b).abs() <= TOL);
    if !fcr_symmetric {
        r.push("reserves.fcr", "FCR requirements must be symmetric in both directions");
    }

    r
}
