//! Translation of one [`DayInput`] into the daily unit-commitment and
//! economic-dispatch MILP.
//!
//! Every constraint row carries a provenance tag (see [`MilpRow`]); the
//! independent verifier groups residuals by these tags. Two row families are
//! deliberate extensions beyond the core formulation:
//! "ext.rb-up"/"ext.rb-dn" enforce the stored-energy backing behind reserve
//! allocations on standalone storage.

use thiserror::Error;

use super::model::{names, MilpModel, Sense, VarKind};
use super::SolveOptions;
use crate::system::{
    DayInput, HydroUnit, ReserveDirection, StartupType, StorageTech, SystemModel, ThermalUnit,
    RESERVE_SLOTS,
};
use crate::HOURS_PER_DAY;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("invalid solve options: {0}")]
    Options(String),
    #[error("inconsistent carryover state: {0}")]
    State(String),
    #[error("infeasible bounds in {what} ({provenance}): {detail}")]
    Bounds {
        what: String,
        provenance: &'static str,
        detail: String,
    },
}

/// Startup class matching a standstill duration: the first class whose
/// threshold is not exceeded, falling back to the coldest. Thresholds are
/// closed on the hotter side.
pub fn classify_startup(offline_hours: u32, unit: &ThermalUnit) -> &StartupType {
    unit.startup_types
        .iter()
        .find(|s| offline_hours <= s.offline_threshold)
        .unwrap_or_else(|| unit.startup_types.last().expect("at least one startup type"))
}

/// Output during soak step `k` (1-based): linear interpolation from the
/// synchronization load to minimum stable generation, reaching the latter
/// at `k = soak_duration`.
pub fn soak_trajectory(unit: &ThermalUnit, stype: &StartupType, k: u32) -> f64 {
    assert!(
        k >= 1 && k <= stype.soak_duration,
        "soak step {k} outside 1..={}",
        stype.soak_duration
    );
    let frac = k as f64 / stype.soak_duration as f64;
    unit.sync_load + frac * (unit.p_min - unit.sync_load)
}

/// Split a total curtailment over technologies proportionally to their
/// availability; technologies with zero availability take no share.
pub fn curtailment_shares(avail: &[f64], total_curtail: f64) -> Result<Vec<f64>, String> {
    if avail.iter().any(|&a| a < 0.0) {
        return Err("negative availability".into());
    }
    let total_avail: f64 = avail.iter().sum();
    if total_curtail < -1e-9 || total_curtail > total_avail + 1e-9 {
        return Err(format!(
            "total curtailment {total_curtail} outside [0, {total_avail}]"
        ));
    }
    if total_avail == 0.0 {
        return Ok(vec![0.0; avail.len()]);
    }
    Ok(avail.iter().map(|a| a / total_avail * total_curtail).collect())
}

/// Capacity-weighted average marginal cost over all thermal cost blocks;
/// the default end-of-horizon value of stored energy.
pub fn average_thermal_marginal(model: &SystemModel) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for u in &model.thermal {
        for b in &u.cost_blocks {
            num += b.width * b.marginal_cost;
            den += b.width;
        }
    }
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

fn cheapest_thermal_marginal(model: &SystemModel) -> f64 {
    model
        .thermal
        .iter()
        .flat_map(|u| u.cost_blocks.iter())
        .map(|b| b.marginal_cost)
        .fold(f64::INFINITY, f64::min)
}

/// Minimum online span opened by a startup of class `stype`: sync + soak +
/// minimum up time + the desynchronization trajectory.
pub fn min_online_span(unit: &ThermalUnit, stype: &StartupType) -> u32 {
    stype.sync_duration + stype.soak_duration + unit.min_up + unit.desync_duration
}

fn stored_value(explicit: Option<f64>, opts: &SolveOptions, fallback: f64) -> f64 {
    opts.stored_energy_value.or(explicit).unwrap_or(fallback)
}

/// Build the complete daily MILP for one [`DayInput`].
pub fn build_day_model(day: &DayInput, opts: &SolveOptions) -> Result<MilpModel, BuildError> {
    let sys = day.model;
    let cheapest = cheapest_thermal_marginal(sys);
    opts.check(if cheapest.is_finite() { cheapest } else { 0.0 })
        .map_err(BuildError::Options)?;
    for s in &sys.storage {
        if s.energy_min > s.energy_max {
            return Err(BuildError::Bounds {
                what: format!("storage {}", s.id),
                provenance: "C.34",
                detail: format!("energy_min {} > energy_max {}", s.energy_min, s.energy_max),
            });
        }
    }
    for h in &sys.hydro {
        if let Some(p) = &h.pump {
            if p.energy_min > p.energy_max {
                return Err(BuildError::Bounds {
                    what: format!("hydro {}", h.id),
                    provenance: "C.49",
                    detail: format!("energy_min {} > energy_max {}", p.energy_min, p.energy_max),
                });
            }
        }
    }
    day.state.check_against(sys).map_err(BuildError::State)?;

    let phi_ens = opts.ens_penalty.unwrap_or(sys.demand.ens_penalty);
    let phi_res = opts
        .reserve_shortfall_penalty
        .unwrap_or(sys.demand.reserve_shortfall_penalty);
    let avg_marginal = average_thermal_marginal(sys);

    let mut m = MilpModel::new();
    let t_all = 0..HOURS_PER_DAY;

    // --- variables ---
    for u in &sys.thermal {
        for t in t_all.clone() {
            m.add_var(names::online(&u.id, t), VarKind::Binary, 0.0, 1.0, 0.0);
            m.add_var(names::phase_sync(&u.id, t), VarKind::Binary, 0.0, 1.0, 0.0);
            m.add_var(names::phase_soak(&u.id, t), VarKind::Binary, 0.0, 1.0, 0.0);
            m.add_var(names::phase_dsp(&u.id, t), VarKind::Binary, 0.0, 1.0, u.min_load_cost);
            m.add_var(names::phase_desync(&u.id, t), VarKind::Binary, 0.0, 1.0, 0.0);
            m.add_var(names::startup(&u.id, t), VarKind::Binary, 0.0, 1.0, 0.0);
            m.add_var(names::shutdown(&u.id, t), VarKind::Binary, 0.0, 1.0, u.shutdown_cost);
            for st in &u.startup_types {
                m.add_var(
                    names::startup_class(&u.id, st.kind, t),
                    VarKind::Binary,
                    0.0,
                    1.0,
                    st.startup_cost,
                );
            }
            m.add_var(names::power(&u.id, t), VarKind::Continuous, 0.0, u.p_max, 0.0);
            m.add_var(names::power_sync(&u.id, t), VarKind::Continuous, 0.0, 0.0, 0.0);
            m.add_var(names::power_soak(&u.id, t), VarKind::Continuous, 0.0, u.p_max, 0.0);
            m.add_var(names::power_desync(&u.id, t), VarKind::Continuous, 0.0, u.p_max, 0.0);
            for (mi, b) in u.cost_blocks.iter().enumerate() {
                m.add_var(
                    names::block(&u.id, mi, t),
                    VarKind::Continuous,
                    0.0,
                    b.width,
                    b.marginal_cost,
                );
            }
            for (e, d) in RESERVE_SLOTS {
                m.add_var(
                    names::unit_reserve(&u.id, e, d, t),
                    VarKind::Continuous,
                    0.0,
                    *u.reserve_capability.get(e, d),
                    opts.virtual_reserve_thermal,
                );
            }
        }
    }
    for h in &sys.hydro {
        for t in t_all.clone() {
            m.add_var(names::online(&h.id, t), VarKind::Binary, 0.0, 1.0, 0.0);
            m.add_var(names::power(&h.id, t), VarKind::Continuous, 0.0, h.p_max, 0.0);
            m.add_var(names::hydro_mandatory(&h.id, t), VarKind::Continuous, 0.0, f64::INFINITY, 0.0);
            for (hi, offer) in h.offers.iter().enumerate() {
                m.add_var(
                    names::hydro_offer(&h.id, hi, t),
                    VarKind::Continuous,
                    0.0,
                    f64::INFINITY,
                    offer.cost,
                );
            }
            for (e, d) in RESERVE_SLOTS {
                m.add_var(
                    names::unit_reserve(&h.id, e, d, t),
                    VarKind::Continuous,
                    0.0,
                    *h.reserve_capability.get(e, d),
                    opts.virtual_reserve_thermal,
                );
            }
            if let Some(p) = &h.pump {
                let c_stored = stored_value(p.stored_energy_value, opts, avg_marginal);
                m.add_var(names::ohps_charge_on(&h.id, t), VarKind::Binary, 0.0, 1.0, 0.0);
                m.add_var(names::ohps_discharge_on(&h.id, t), VarKind::Binary, 0.0, 1.0, 0.0);
                m.add_var(names::ohps_charge(&h.id, t), VarKind::Continuous, 0.0, p.pump_max, 0.0);
                m.add_var(names::ohps_discharge(&h.id, t), VarKind::Continuous, 0.0, h.p_max, 0.0);
                let obj = if t == HOURS_PER_DAY - 1 { -c_stored } else { 0.0 };
                m.add_var(names::ohps_soc(&h.id, t), VarKind::Continuous, p.energy_min, p.energy_max, obj);
                if t == HOURS_PER_DAY - 1 {
                    m.objective_offset += c_stored * p.energy_min;
                }
            }
        }
    }
    for s in &sys.storage {
        let c_stored = stored_value(s.stored_energy_value, opts, avg_marginal);
        m.objective_offset += c_stored * s.energy_min;
        for t in t_all.clone() {
            m.add_var(names::storage_charge_on(&s.id, t), VarKind::Binary, 0.0, 1.0, 0.0);
            m.add_var(names::storage_discharge_on(&s.id, t), VarKind::Binary, 0.0, 1.0, 0.0);
            m.add_var(names::storage_charge(&s.id, t), VarKind::Continuous, 0.0, s.charge_max, 0.0);
            m.add_var(names::storage_discharge(&s.id, t), VarKind::Continuous, 0.0, s.discharge_max, 0.0);
            let obj = if t == HOURS_PER_DAY - 1 { -c_stored } else { 0.0 };
            m.add_var(names::storage_soc(&s.id, t), VarKind::Continuous, s.energy_min, s.energy_max, obj);
            for (e, d) in RESERVE_SLOTS {
                let vc = match d {
                    ReserveDirection::Up => opts.virtual_reserve_storage_up,
                    ReserveDirection::Down => opts.virtual_reserve_storage_down,
                };
                m.add_var(
                    names::unit_reserve(&s.id, e, d, t),
                    VarKind::Continuous,
                    0.0,
                    *s.reserve_capability.get(e, d),
                    vc,
                );
            }
        }
    }
    for ic in &sys.interconnectors {
        for t in t_all.clone() {
            m.add_var(names::import_total(&ic.id, t), VarKind::Continuous, 0.0, f64::INFINITY, 0.0);
            m.add_var(names::export_total(&ic.id, t), VarKind::Continuous, 0.0, f64::INFINITY, 0.0);
            for (g, b) in ic.import_blocks.iter().enumerate() {
                m.add_var(names::import_block(&ic.id, g, t), VarKind::Continuous, 0.0, b.width, b.price);
            }
            for (g, b) in ic.export_blocks.iter().enumerate() {
                m.add_var(names::export_block(&ic.id, g, t), VarKind::Continuous, 0.0, b.width, -b.price);
            }
        }
    }
    for (ri, res) in sys.renewables.iter().enumerate() {
        let label = res.kind.label();
        for t in t_all.clone() {
            let avail = day.res_availability[ri][t];
            m.add_var(names::res_power(label, ri, t), VarKind::Continuous, 0.0, f64::INFINITY, 0.0);
            let x_ub = if res.curtailable { avail } else { 0.0 };
            m.add_var(names::curtailment(label, ri, t), VarKind::Continuous, 0.0, x_ub, 0.0);
        }
    }
    for t in t_all.clone() {
        m.add_var(names::demand_response(t), VarKind::Continuous, 0.0, f64::INFINITY, sys.demand.dr_cost);
        m.add_var(names::ens(t), VarKind::Continuous, 0.0, f64::INFINITY, phi_ens);
        m.add_var(names::surplus(t), VarKind::Continuous, 0.0, f64::INFINITY, phi_ens);
        for (e, d) in RESERVE_SLOTS {
            m.add_var(names::reserve_slack(e, d, t), VarKind::Continuous, 0.0, f64::INFINITY, phi_res);
        }
    }

    // --- rows ---
    build_balance_rows(&mut m, day, sys);
    for u in &sys.thermal {
        build_thermal_rows(&mut m, day, u);
    }
    for (hi, h) in sys.hydro.iter().enumerate() {
        build_hydro_rows(&mut m, day, h, hi);
    }
    for (si, s) in sys.storage.iter().enumerate() {
        build_storage_rows(&mut m, day, s, si, opts);
    }
    for ic in &sys.interconnectors {
        build_interconnector_rows(&mut m, day, ic);
    }
    build_res_rows(&mut m, day);
    build_demand_rows(&mut m, day);

    Ok(m)
}

fn v(m: &MilpModel, name: String) -> usize {
    m.var_id(&name)
        .unwrap_or_else(|| panic!("missing variable {name}"))
}

fn build_balance_rows(m: &mut MilpModel, day: &DayInput, sys: &SystemModel) {
    for t in 0..HOURS_PER_DAY {
        // C.9: generation + imports + discharge + DR + ENS
        //      = demand + pumping/charging + exports + surplus slack.
        let mut terms = Vec::new();
        for u in &sys.thermal {
            terms.push((v(m, names::power(&u.id, t)), 1.0));
        }
        for h in &sys.hydro {
            terms.push((v(m, names::power(&h.id, t)), 1.0));
            if h.pump.is_some() {
                terms.push((v(m, names::ohps_discharge(&h.id, t)), 1.0));
                terms.push((v(m, names::ohps_charge(&h.id, t)), -1.0));
            }
        }
        for s in &sys.storage {
            terms.push((v(m, names::storage_discharge(&s.id, t)), 1.0));
            terms.push((v(m, names::storage_charge(&s.id, t)), -1.0));
        }
        for ic in &sys.interconnectors {
            terms.push((v(m, names::import_total(&ic.id, t)), 1.0));
            terms.push((v(m, names::export_total(&ic.id, t)), -1.0));
        }
        for (ri, res) in sys.renewables.iter().enumerate() {
            terms.push((v(m, names::res_power(res.kind.label(), ri, t)), 1.0));
        }
        terms.push((v(m, names::demand_response(t)), 1.0));
        terms.push((v(m, names::ens(t)), 1.0));
        terms.push((v(m, names::surplus(t)), -1.0));
        m.add_row(format!("C.9:{t}"), "C.9", terms, Sense::Eq, day.demand[t]);

        // C.10: six reserve balances with shortfall slacks.
        for (e, d) in RESERVE_SLOTS {
            let mut terms = Vec::new();
            for u in &sys.thermal {
                terms.push((v(m, names::unit_reserve(&u.id, e, d, t)), 1.0));
            }
            for h in &sys.hydro {
                terms.push((v(m, names::unit_reserve(&h.id, e, d, t)), 1.0));
            }
            for s in &sys.storage {
                terms.push((v(m, names::unit_reserve(&s.id, e, d, t)), 1.0));
            }
            terms.push((v(m, names::reserve_slack(e, d, t)), 1.0));
            m.add_row(
                format!("C.10:{}{}:{t}", e.label(), d.label()),
                "C.10",
                terms,
                Sense::Eq,
                day.reserve_requirements.get(e, d)[t],
            );
        }
    }
}

fn build_thermal_rows(m: &mut MilpModel, day: &DayInput, u: &ThermalUnit) {
    let id = &u.id;
    let st = &day.state.thermal[day
        .model
        .thermal
        .iter()
        .position(|x| std::ptr::eq(x, u))
        .expect("unit belongs to model")];
    let s_prev = if st.online { 1.0 } else { 0.0 };
    let must_stay_off = if st.online {
        0
    } else {
        u.min_down.saturating_sub(st.hours_offline)
    } as usize;
    let must_stay_on = st.min_up_hours_remaining as usize;

    // Startup trajectory carried over from the previous day: position of
    // day hour t on the sync+soak trajectory, and its contributions.
    let carry = st.startup.map(|p| {
        let stype = u
            .startup_types
            .iter()
            .find(|s| s.kind == p.kind)
            .expect("carried startup class exists");
        (stype, p.hours_elapsed)
    });
    let hist_syn = |t: usize| -> f64 {
        match carry {
            Some((stype, e)) if (t as u32 + e) < stype.sync_duration => 1.0,
            _ => 0.0,
        }
    };
    let hist_soak_step = |t: usize| -> Option<(&StartupType, u32)> {
        let (stype, e) = carry?;
        let pos = t as u32 + e;
        if pos >= stype.sync_duration && pos < stype.sync_duration + stype.soak_duration {
            Some((stype, pos - stype.sync_duration + 1))
        } else {
            None
        }
    };

    for t in 0..HOURS_PER_DAY {
        let s_t = v(m, names::online(id, t));
        let y_t = v(m, names::startup(id, t));
        let z_t = v(m, names::shutdown(id, t));
        let syn_t = v(m, names::phase_sync(id, t));
        let soak_t = v(m, names::phase_soak(id, t));
        let dsp_t = v(m, names::phase_dsp(id, t));
        let des_t = v(m, names::phase_desync(id, t));
        let p_t = v(m, names::power(id, t));
        let psyn_t = v(m, names::power_sync(id, t));
        let psoak_t = v(m, names::power_soak(id, t));
        let pdes_t = v(m, names::power_desync(id, t));

        // C.11: a unit cannot start and stop in the same hour.
        m.add_row(format!("C.11:{id}:{t}"), "C.11", vec![(y_t, 1.0), (z_t, 1.0)], Sense::Le, 1.0);

        // C.12: commitment transition (written as an equality so shutdowns
        // force z and its cost).
        let mut terms = vec![(y_t, 1.0), (z_t, -1.0), (s_t, -1.0)];
        let rhs = if t == 0 {
            -s_prev
        } else {
            terms.push((v(m, names::online(id, t - 1)), 1.0));
            0.0
        };
        m.add_row(format!("C.12:{id}:{t}"), "C.12", terms, Sense::Eq, rhs);

        // C.13: phase decomposition of the online status.
        m.add_row(
            format!("C.13:{id}:{t}"),
            "C.13",
            vec![(s_t, 1.0), (syn_t, -1.0), (soak_t, -1.0), (dsp_t, -1.0), (des_t, -1.0)],
            Sense::Eq,
            0.0,
        );

        // C.14: a startup class is available only if the most recent
        // shutdown falls inside its standstill window. The coldest class is
        // the unconstrained fallback.
        for (gi, stype) in u.startup_types.iter().enumerate() {
            if gi + 1 == u.startup_types.len() {
                continue;
            }
            let lower = if gi == 0 { 0 } else { u.startup_types[gi - 1].offline_threshold };
            let upper = stype.offline_threshold;
            let mut terms = vec![(v(m, names::startup_class(id, stype.kind, t)), 1.0)];
            let mut rhs = 0.0;
            // in-horizon shutdowns with standstill in (lower, upper]
            for k in 0..t {
                let dur = (t - k) as u32;
                if dur > lower && dur <= upper {
                    terms.push((v(m, names::shutdown(id, k)), -1.0));
                }
            }
            if !st.online {
                let dur = t as u32 + st.hours_offline;
                if dur > lower && dur <= upper {
                    rhs += 1.0;
                }
            }
            m.add_row(
                format!("C.14:{id}:{}:{t}", stype.kind.label()),
                "C.14",
                terms,
                Sense::Le,
                rhs,
            );
        }

        // C.15: exactly one class per startup.
        let mut terms = vec![(y_t, -1.0)];
        for stype in &u.startup_types {
            terms.push((v(m, names::startup_class(id, stype.kind, t)), 1.0));
        }
        m.add_row(format!("C.15:{id}:{t}"), "C.15", terms, Sense::Eq, 0.0);

        // C.16: synchronization status follows startups over the sync window.
        let mut terms = vec![(syn_t, 1.0)];
        for stype in &u.startup_types {
            for j in 0..stype.sync_duration as usize {
                if j <= t {
                    terms.push((v(m, names::startup_class(id, stype.kind, t - j)), -1.0));
                }
            }
        }
        m.add_row(format!("C.16:{id}:{t}"), "C.16", terms, Sense::Eq, hist_syn(t));

        // C.17: soak status over the soak window.
        let mut terms = vec![(soak_t, 1.0)];
        for stype in &u.startup_types {
            let lo = stype.sync_duration as usize;
            let hi = (stype.sync_duration + stype.soak_duration) as usize;
            for j in lo..hi {
                if j <= t {
                    terms.push((v(m, names::startup_class(id, stype.kind, t - j)), -1.0));
                }
            }
        }
        let rhs = if hist_soak_step(t).is_some() { 1.0 } else { 0.0 };
        m.add_row(format!("C.17:{id}:{t}"), "C.17", terms, Sense::Eq, rhs);

        // C.18: desynchronization status precedes an in-horizon shutdown by
        // up to the trajectory length.
        let mut terms = vec![(des_t, 1.0)];
        for k in t + 1..=(t + u.desync_duration as usize).min(HOURS_PER_DAY - 1) {
            terms.push((v(m, names::shutdown(id, k)), -1.0));
        }
        m.add_row(format!("C.18:{id}:{t}"), "C.18", terms, Sense::Eq, 0.0);

        // C.19: minimum down time.
        let mut terms = vec![(s_t, 1.0)];
        for k in (t + 1).saturating_sub(u.min_down as usize)..=t {
            terms.push((v(m, names::shutdown(id, k)), 1.0));
        }
        let rhs = if t < must_stay_off { 0.0 } else { 1.0 };
        m.add_row(format!("C.19:{id}:{t}"), "C.19", terms, Sense::Le, rhs);

        // C.20: minimum up time, spanning the whole sync..desync sequence.
        let mut terms = vec![(s_t, -1.0)];
        for stype in &u.startup_types {
            let span = min_online_span(u, stype) as usize;
            for k in (t + 1).saturating_sub(span)..=t {
                terms.push((v(m, names::startup_class(id, stype.kind, k)), 1.0));
            }
        }
        let rhs = if t < must_stay_on { -1.0 } else { 0.0 };
        m.add_row(format!("C.20:{id}:{t}"), "C.20", terms, Sense::Le, rhs);

        // C.21: ramping, relaxed during startup/shutdown trajectories.
        let mut up = vec![
            (p_t, 1.0),
            (dsp_t, -u.ramp_up),
            (syn_t, -u.p_max),
            (soak_t, -u.p_max),
        ];
        let mut dn = vec![
            (p_t, -1.0),
            (dsp_t, -u.ramp_down),
            (z_t, -u.p_max),
            (des_t, -u.p_max),
        ];
        let (up_rhs, dn_rhs) = if t == 0 {
            (st.power, -st.power)
        } else {
            let p_prev = v(m, names::power(id, t - 1));
            up.push((p_prev, -1.0));
            dn.push((p_prev, 1.0));
            (0.0, 0.0)
        };
        m.add_row(format!("C.21up:{id}:{t}"), "C.21", up, Sense::Le, up_rhs);
        m.add_row(format!("C.21dn:{id}:{t}"), "C.21", dn, Sense::Le, dn_rhs);

        // C.22 / C.23: headroom and floor including allocated reserves.
        let mut up = vec![(p_t, 1.0), (psoak_t, -1.0), (pdes_t, -1.0), (dsp_t, -u.p_max)];
        let mut dn = vec![(p_t, 1.0), (psoak_t, -1.0), (pdes_t, -1.0), (dsp_t, -u.p_min)];
        for (e, d) in RESERVE_SLOTS {
            let r = v(m, names::unit_reserve(id, e, d, t));
            match d {
                ReserveDirection::Up => up.push((r, 1.0)),
                ReserveDirection::Down => dn.push((r, -1.0)),
            }
        }
        m.add_row(format!("C.22:{id}:{t}"), "C.22", up, Sense::Le, 0.0);
        m.add_row(format!("C.23:{id}:{t}"), "C.23", dn, Sense::Ge, 0.0);

        // C.24: total output composed from the phase outputs and the
        // dispatched blocks above minimum load.
        let mut terms = vec![
            (p_t, 1.0),
            (dsp_t, -u.p_min),
            (psyn_t, -1.0),
            (psoak_t, -1.0),
            (pdes_t, -1.0),
        ];
        for mi in 0..u.cost_blocks.len() {
            terms.push((v(m, names::block(id, mi, t)), -1.0));
        }
        m.add_row(format!("C.24:{id}:{t}"), "C.24", terms, Sense::Eq, 0.0);

        // C.25: blocks available only in the dispatchable phase.
        for (mi, b) in u.cost_blocks.iter().enumerate() {
            m.add_row(
                format!("C.25:{id}:{mi}:{t}"),
                "C.25",
                vec![(v(m, names::block(id, mi, t)), 1.0), (dsp_t, -b.width)],
                Sense::Le,
                0.0,
            );
        }

        // C.26: no output while synchronizing.
        m.add_row(format!("C.26:{id}:{t}"), "C.26", vec![(psyn_t, 1.0)], Sense::Eq, 0.0);

        // C.27: soak output follows the interpolated trajectory.
        let mut terms = vec![(psoak_t, 1.0)];
        for stype in &u.startup_types {
            let lo = stype.sync_duration as usize;
            let hi = (stype.sync_duration + stype.soak_duration) as usize;
            for j in lo..hi {
                if j <= t {
                    let step = (j - lo + 1) as u32;
                    terms.push((
                        v(m, names::startup_class(id, stype.kind, t - j)),
                        -soak_trajectory(u, stype, step),
                    ));
                }
            }
        }
        let rhs = hist_soak_step(t)
            .map(|(stype, step)| soak_trajectory(u, stype, step))
            .unwrap_or(0.0);
        m.add_row(format!("C.27:{id}:{t}"), "C.27", terms, Sense::Eq, rhs);

        // C.28: desync output declines linearly toward the shutdown hour.
        let mut terms = vec![(pdes_t, 1.0)];
        for k in t + 1..=(t + u.desync_duration as usize).min(HOURS_PER_DAY - 1) {
            let coeff = u.p_min * (k - t) as f64 / u.desync_duration as f64;
            terms.push((v(m, names::shutdown(id, k)), -coeff));
        }
        m.add_row(format!("C.28:{id}:{t}"), "C.28", terms, Sense::Eq, 0.0);

        // C.60: reserves only while committed.
        for (e, d) in RESERVE_SLOTS {
            let r = v(m, names::unit_reserve(id, e, d, t));
            let rc = *u.reserve_capability.get(e, d);
            m.add_row(
                format!("C.60:{id}:{}{}:{t}", e.label(), d.label()),
                "C.60",
                vec![(r, 1.0), (s_t, -rc)],
                Sense::Le,
                0.0,
            );
        }
    }
}

fn build_hydro_rows(m: &mut MilpModel, day: &DayInput, h: &HydroUnit, hi: usize) {
    let id = &h.id;
    let budget = &day.hydro_budgets[hi];
    for t in 0..HOURS_PER_DAY {
        let s_t = v(m, names::online(id, t));
        let p_t = v(m, names::power(id, t));

        // C.40: turbine output splits into mandatory and offered energy.
        let mut terms = vec![(p_t, 1.0), (v(m, names::hydro_mandatory(id, t)), -1.0)];
        for oi in 0..h.offers.len() {
            terms.push((v(m, names::hydro_offer(id, oi, t)), -1.0));
        }
        m.add_row(format!("C.40:{id}:{t}"), "C.40", terms, Sense::Eq, 0.0);

        let mut up = vec![(p_t, 1.0), (s_t, -h.p_max)];
        let mut dn = vec![(p_t, 1.0), (s_t, -h.p_min)];
        for (e, d) in RESERVE_SLOTS {
            let r = v(m, names::unit_reserve(id, e, d, t));
            match d {
                ReserveDirection::Up => up.push((r, 1.0)),
                ReserveDirection::Down => dn.push((r, -1.0)),
            }
        }
        if let Some(p) = &h.pump {
            // C.43-C.51 for the open-loop pumped-storage side; C.50/C.51
            // take over the headroom/floor role of C.22/C.23, sharing the
            // turbine limits with natural-inflow production.
            let sohc = v(m, names::ohps_charge_on(id, t));
            let sohd = v(m, names::ohps_discharge_on(id, t));
            let ohc = v(m, names::ohps_charge(id, t));
            let ohd = v(m, names::ohps_discharge(id, t));
            let eoh = v(m, names::ohps_soc(id, t));

            up.push((ohd, 1.0));
            dn.push((ohd, 1.0));
            m.add_row(format!("C.50:{id}:{t}"), "C.50", up, Sense::Le, 0.0);
            m.add_row(format!("C.51:{id}:{t}"), "C.51", dn, Sense::Ge, 0.0);

            m.add_row(format!("C.43hi:{id}:{t}"), "C.43", vec![(ohd, 1.0), (sohd, -h.p_max)], Sense::Le, 0.0);
            m.add_row(format!("C.43lo:{id}:{t}"), "C.43", vec![(ohd, 1.0), (sohd, -h.p_min)], Sense::Ge, 0.0);
            m.add_row(format!("C.44hi:{id}:{t}"), "C.44", vec![(ohc, 1.0), (sohc, -p.pump_max)], Sense::Le, 0.0);
            m.add_row(format!("C.44lo:{id}:{t}"), "C.44", vec![(ohc, 1.0), (sohc, -p.pump_min)], Sense::Ge, 0.0);
            m.add_row(format!("C.45:{id}:{t}"), "C.45", vec![(sohc, 1.0), (sohd, 1.0)], Sense::Le, 1.0);
            m.add_row(format!("C.46:{id}:{t}"), "C.46", vec![(sohc, 1.0), (s_t, 1.0)], Sense::Le, 1.0);
            m.add_row(format!("C.47:{id}:{t}"), "C.47", vec![(sohd, 1.0), (s_t, -1.0)], Sense::Le, 0.0);

            let sqrt_n = p.roundtrip.sqrt();
            let mut terms = vec![(eoh, 1.0), (ohc, -sqrt_n), (ohd, 1.0 / sqrt_n)];
            let rhs = if t == 0 {
                day.state.hydro_soc[hi].expect("reservoir state present")
            } else {
                terms.push((v(m, names::ohps_soc(id, t - 1)), -1.0));
                0.0
            };
            m.add_row(format!("C.48:{id}:{t}"), "C.48", terms, Sense::Eq, rhs);
            m.add_row(format!("C.49hi:{id}:{t}"), "C.49", vec![(eoh, 1.0)], Sense::Le, p.energy_max);
            m.add_row(format!("C.49lo:{id}:{t}"), "C.49", vec![(eoh, 1.0)], Sense::Ge, p.energy_min);
        } else {
            m.add_row(format!("C.22:{id}:{t}"), "C.22", up, Sense::Le, 0.0);
            m.add_row(format!("C.23:{id}:{t}"), "C.23", dn, Sense::Ge, 0.0);
        }

        // C.60: reserves only while committed.
        for (e, d) in RESERVE_SLOTS {
            let r = v(m, names::unit_reserve(id, e, d, t));
            let rc = *h.reserve_capability.get(e, d);
            m.add_row(
                format!("C.60:{id}:{}{}:{t}", e.label(), d.label()),
                "C.60",
                vec![(r, 1.0), (s_t, -rc)],
                Sense::Le,
                0.0,
            );
        }
    }

    // C.41 / C.42: daily energy budgets.
    let terms = (0..HOURS_PER_DAY)
        .map(|t| (v(m, names::hydro_mandatory(id, t)), 1.0))
        .collect();
    m.add_row(format!("C.41:{id}"), "C.41", terms, Sense::Le, budget.mandatory);
    for oi in 0..h.offers.len() {
        let terms = (0..HOURS_PER_DAY)
            .map(|t| (v(m, names::hydro_offer(id, oi, t)), 1.0))
            .collect();
        m.add_row(format!("C.42:{id}:{oi}"), "C.42", terms, Sense::Le, budget.offers[oi]);
    }
}

fn build_storage_rows(
    m: &mut MilpModel,
    day: &DayInput,
    s: &crate::system::StorageUnit,
    si: usize,
    opts: &SolveOptions,
) {
    let id = &s.id;
    let sqrt_n = s.roundtrip.sqrt();
    let buffer = opts.reserve_energy_buffer.unwrap_or(s.reserve_energy_buffer);
    for t in 0..HOURS_PER_DAY {
        let sc = v(m, names::storage_charge_on(id, t));
        let sd = v(m, names::storage_discharge_on(id, t));
        let c = v(m, names::storage_charge(id, t));
        let d_ = v(m, names::storage_discharge(id, t));
        let e_ = v(m, names::storage_soc(id, t));

        m.add_row(format!("C.31hi:{id}:{t}"), "C.31", vec![(d_, 1.0), (sd, -s.discharge_max)], Sense::Le, 0.0);
        m.add_row(format!("C.31lo:{id}:{t}"), "C.31", vec![(d_, 1.0), (sd, -s.discharge_min)], Sense::Ge, 0.0);
        m.add_row(format!("C.32hi:{id}:{t}"), "C.32", vec![(c, 1.0), (sc, -s.charge_max)], Sense::Le, 0.0);
        m.add_row(format!("C.32lo:{id}:{t}"), "C.32", vec![(c, 1.0), (sc, -s.charge_min)], Sense::Ge, 0.0);
        m.add_row(format!("C.33:{id}:{t}"), "C.33", vec![(sc, 1.0), (sd, 1.0)], Sense::Le, 1.0);
        m.add_row(format!("C.34hi:{id}:{t}"), "C.34", vec![(e_, 1.0)], Sense::Le, s.energy_max);
        m.add_row(format!("C.34lo:{id}:{t}"), "C.34", vec![(e_, 1.0)], Sense::Ge, s.energy_min);

        // C.35: split-efficiency state of charge recursion.
        let mut terms = vec![(e_, 1.0), (c, -sqrt_n), (d_, 1.0 / sqrt_n)];
        let rhs = if t == 0 {
            day.state.storage_soc[si]
        } else {
            terms.push((v(m, names::storage_soc(id, t - 1)), -1.0));
            0.0
        };
        m.add_row(format!("C.35:{id}:{t}"), "C.35", terms, Sense::Eq, rhs);

        let mut r_up = Vec::new();
        let mut r_dn = Vec::new();
        for (e, d) in RESERVE_SLOTS {
            let r = v(m, names::unit_reserve(id, e, d, t));
            match d {
                ReserveDirection::Up => r_up.push(r),
                ReserveDirection::Down => r_dn.push(r),
            }
        }
        match s.tech {
            StorageTech::Bess => {
                // C.36 / C.37: seamless-transition headroom in both
                // directions (reserves can span charging and discharging).
                let mut terms = vec![(d_, 1.0), (c, -1.0)];
                terms.extend(r_up.iter().map(|&r| (r, 1.0)));
                m.add_row(format!("C.36:{id}:{t}"), "C.36", terms, Sense::Le, s.discharge_max);
                let mut terms = vec![(c, 1.0), (d_, -1.0)];
                terms.extend(r_dn.iter().map(|&r| (r, 1.0)));
                m.add_row(format!("C.37:{id}:{t}"), "C.37", terms, Sense::Le, s.charge_max);
            }
            StorageTech::Phs => {
                // C.38 / C.39: reserves ride on the generating state only.
                let mut terms = vec![(d_, 1.0), (sd, -s.discharge_max)];
                terms.extend(r_up.iter().map(|&r| (r, 1.0)));
                m.add_row(format!("C.38:{id}:{t}"), "C.38", terms, Sense::Le, 0.0);
                let mut terms = vec![(d_, 1.0), (sd, -s.discharge_min)];
                terms.extend(r_dn.iter().map(|&r| (r, -1.0)));
                m.add_row(format!("C.39:{id}:{t}"), "C.39", terms, Sense::Ge, 0.0);
                for (e, d) in RESERVE_SLOTS {
                    let r = v(m, names::unit_reserve(id, e, d, t));
                    let rc = *s.reserve_capability.get(e, d);
                    m.add_row(
                        format!("C.61:{id}:{}{}:{t}", e.label(), d.label()),
                        "C.61",
                        vec![(r, 1.0), (sd, -rc)],
                        Sense::Le,
                        0.0,
                    );
                }
            }
        }

        // Extension: allocated reserves must be deliverable for `buffer`
        // hours from the current state of charge.
        let mut terms = vec![(e_, 1.0)];
        terms.extend(r_up.iter().map(|&r| (r, -buffer / sqrt_n)));
        m.add_row(format!("ext.rb-up:{id}:{t}"), "ext.rb-up", terms, Sense::Ge, s.energy_min);
        let mut terms = vec![(e_, 1.0)];
        terms.extend(r_dn.iter().map(|&r| (r, buffer * sqrt_n)));
        m.add_row(format!("ext.rb-dn:{id}:{t}"), "ext.rb-dn", terms, Sense::Le, s.energy_max);
    }
}

fn build_interconnector_rows(m: &mut MilpModel, day: &DayInput, ic: &crate::system::Interconnector) {
    let id = &ic.id;
    let ic_idx = day
        .model
        .interconnectors
        .iter()
        .position(|x| std::ptr::eq(x, ic))
        .expect("interconnector belongs to model");
    for t in 0..HOURS_PER_DAY {
        let imp = v(m, names::import_total(id, t));
        let exp = v(m, names::export_total(id, t));
        let (ntc_imp, ntc_exp) = (&day.ntc[ic_idx].0, &day.ntc[ic_idx].1);

        m.add_row(format!("C.54:{id}:{t}"), "C.54", vec![(imp, 1.0), (exp, -1.0)], Sense::Le, ntc_imp[t]);
        m.add_row(format!("C.55:{id}:{t}"), "C.55", vec![(exp, 1.0), (imp, -1.0)], Sense::Le, ntc_exp[t]);

        let mut terms = vec![(imp, 1.0)];
        for g in 0..ic.import_blocks.len() {
            terms.push((v(m, names::import_block(id, g, t)), -1.0));
        }
        m.add_row(format!("C.56:{id}:{t}"), "C.56", terms, Sense::Eq, 0.0);
        let mut terms = vec![(exp, 1.0)];
        for g in 0..ic.export_blocks.len() {
            terms.push((v(m, names::export_block(id, g, t)), -1.0));
        }
        m.add_row(format!("C.57:{id}:{t}"), "C.57", terms, Sense::Eq, 0.0);

        for (g, b) in ic.import_blocks.iter().enumerate() {
            m.add_row(
                format!("C.58:{id}:{g}:{t}"),
                "C.58",
                vec![(v(m, names::import_block(id, g, t)), 1.0)],
                Sense::Le,
                b.width,
            );
        }
        for (g, b) in ic.export_blocks.iter().enumerate() {
            m.add_row(
                format!("C.59:{id}:{g}:{t}"),
                "C.59",
                vec![(v(m, names::export_block(id, g, t)), 1.0)],
                Sense::Le,
                b.width,
            );
        }
    }
}

fn build_res_rows(m: &mut MilpModel, day: &DayInput) {
    let sys = day.model;
    for (ri, res) in sys.renewables.iter().enumerate() {
        let label = res.kind.label();
        for t in 0..HOURS_PER_DAY {
            m.add_row(
                format!("C.29:{label}{ri}:{t}"),
                "C.29",
                vec![
                    (v(m, names::res_power(label, ri, t)), 1.0),
                    (v(m, names::curtailment(label, ri, t)), 1.0),
                ],
                Sense::Eq,
                day.res_availability[ri][t],
            );
        }
    }
    // C.30: curtailment proportional to availability across curtailable
    // technologies, as a chain of pairwise cross-multiplied equalities.
    for t in 0..HOURS_PER_DAY {
        let active: Vec<usize> = sys
            .renewables
            .iter()
            .enumerate()
            .filter(|(ri, r)| r.curtailable && day.res_availability[*ri][t] > 0.0)
            .map(|(ri, _)| ri)
            .collect();
        for pair in active.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let (la, lb) = (sys.renewables[a].kind.label(), sys.renewables[b].kind.label());
            m.add_row(
                format!("C.30:{la}{a}-{lb}{b}:{t}"),
                "C.30",
                vec![
                    (v(m, names::curtailment(la, a, t)), day.res_availability[b][t]),
                    (v(m, names::curtailment(lb, b, t)), -day.res_availability[a][t]),
                ],
                Sense::Eq,
                0.0,
            );
        }
    }
}

fn build_demand_rows(m: &mut MilpModel, day: &DayInput) {
    for t in 0..HOURS_PER_DAY {
        m.add_row(
            format!("C.52:{t}"),
            "C.52",
            vec![(v(m, names::demand_response(t)), 1.0)],
            Sense::Le,
            day.dr_max[t],
        );
    }
    let terms = (0..HOURS_PER_DAY)
        .map(|t| (v(m, names::demand_response(t)), 1.0))
        .collect();
    m.add_row("C.53".into(), "C.53", terms, Sense::Le, day.model.demand.dr_daily_energy_cap);
}
