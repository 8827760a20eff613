//! State carryover across the day boundary.

use crate::milp::{classify_startup, min_online_span, names, MilpModel};
use crate::solver::MilpSolution;
use crate::system::{DayInput, StartupProgress, SystemState, ThermalState};
use crate::HOURS_PER_DAY;

fn clamp(x: f64, lo: f64, hi: f64) -> f64 {
    x.max(lo).min(hi)
}

/// Derive the state at hour 0 of the next day from a (verified) solution of
/// this day. Storage and reservoir levels carry over exactly; thermal
/// counters, in-flight startup trajectories, and open minimum-up windows
/// are reconstructed from the commitment pattern.
pub fn carry_state(
    milp: &MilpModel,
    sol: &MilpSolution,
    day: &DayInput,
) -> Result<SystemState, String> {
    let model = day.model;
    let t_last = HOURS_PER_DAY - 1;
    let on = |id: &str, t: usize| sol.value(milp, &names::online(id, t)) > 0.5;

    let mut thermal = Vec::with_capacity(model.thermal.len());
    for (u, prev) in model.thermal.iter().zip(&day.state.thermal) {
        let id = &u.id;
        let online = on(id, t_last);
        // last committed startup hour in the day, if any
        let last_start = (0..HOURS_PER_DAY)
            .rev()
            .find(|&t| sol.value(milp, &names::startup(id, t)) > 0.5);
        let st = if online {
            let mut run = 0;
            while run < HOURS_PER_DAY && on(id, t_last - run) {
                run += 1;
            }
            let hours_online = if run == HOURS_PER_DAY {
                prev.hours_online.saturating_add(HOURS_PER_DAY as u32)
            } else {
                run as u32
            };
            let (startup, min_up_hours_remaining) = match last_start {
                Some(tau) => {
                    let stype = u
                        .startup_types
                        .iter()
                        .find(|s| sol.value(milp, &names::startup_class(id, s.kind, tau)) > 0.5)
                        .ok_or_else(|| format!("unit {id}: startup at hour {tau} has no class"))?;
                    let elapsed = (HOURS_PER_DAY - tau) as u32;
                    let lead = stype.sync_duration + stype.soak_duration;
                    let startup = (elapsed < lead)
                        .then_some(StartupProgress { kind: stype.kind, hours_elapsed: elapsed });
                    let span = min_online_span(u, stype);
                    (startup, span.saturating_sub(elapsed))
                }
                None => {
                    // online since before the day; advance any in-flight
                    // trajectory and shrink the inherited minimum-up window
                    let startup = prev.startup.and_then(|p| {
                        let stype = u
                            .startup_types
                            .iter()
                            .find(|s| s.kind == p.kind)
                            .unwrap_or_else(|| classify_startup(prev.hours_offline, u));
                        let elapsed = p.hours_elapsed + HOURS_PER_DAY as u32;
                        (elapsed < stype.sync_duration + stype.soak_duration)
                            .then_some(StartupProgress { kind: p.kind, hours_elapsed: elapsed })
                    });
                    (startup, prev.min_up_hours_remaining.saturating_sub(HOURS_PER_DAY as u32))
                }
            };
            ThermalState {
                online: true,
                hours_online,
                hours_offline: 0,
                power: sol.value(milp, &names::power(id, t_last)),
                startup,
                min_up_hours_remaining,
            }
        } else {
            let mut run = 0;
            while run < HOURS_PER_DAY && !on(id, t_last - run) {
                run += 1;
            }
            let hours_offline = if run == HOURS_PER_DAY {
                prev.hours_offline.saturating_add(HOURS_PER_DAY as u32)
            } else {
                run as u32
            };
            ThermalState::cold(hours_offline)
        };
        thermal.push(st);
    }

    let storage_soc = model
        .storage
        .iter()
        .map(|s| {
            clamp(
                sol.value(milp, &names::storage_soc(&s.id, t_last)),
                s.energy_min,
                s.energy_max,
            )
        })
        .collect();

    let mut hydro_soc = Vec::with_capacity(model.hydro.len());
    let mut hydro_budget_remaining = Vec::with_capacity(model.hydro.len());
    for (h, budget) in model.hydro.iter().zip(&day.hydro_budgets) {
        hydro_soc.push(h.pump.as_ref().map(|p| {
            clamp(
                sol.value(milp, &names::ohps_soc(&h.id, t_last)),
                p.energy_min,
                p.energy_max,
            )
        }));
        let mut used = 0.0;
        for t in 0..HOURS_PER_DAY {
            used += sol.value(milp, &names::hydro_mandatory(&h.id, t));
            for o in 0..h.offers.len() {
                used += sol.value(milp, &names::hydro_offer(&h.id, o, t));
            }
        }
        let total = budget.mandatory + budget.offers.iter().sum::<f64>();
        hydro_budget_remaining.push((total - used).max(0.0));
    }

    let next = SystemState { thermal, storage_soc, hydro_soc, hydro_budget_remaining };
    next.check_against(model)?;
    Ok(next)
}
