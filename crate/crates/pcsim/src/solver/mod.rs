//! Solving, exporting, and independently verifying daily MILPs.

mod backend;
mod export;
mod verify;

pub use backend::{solve, HighsBackend, MilpSolution, MipBackend, SolveError, SolveStatus};
pub use export::{export_problem, read_mps, write_lp, write_mps, ExportFormat};
pub use verify::{verify_solution, ResidualReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::{build_day_model, names, SolveOptions};
    use crate::system::testutil::{bare_system, flat, miniature_model, simple_thermal};
    use crate::system::{slice_day, SystemState};

    fn exact() -> SolveOptions {
        SolveOptions::exact()
    }

    #[test]
    fn single_unit_dispatch_hand_enumerated() {
        // One online unit, p_min 10, p_max 50, flat 20 EUR/MWh, min-load
        // cost 5 EUR/h, demand 30 MW: each hour costs 20*(30-10) + 5.
        let mut u = simple_thermal("u1", 10.0, 50.0, 20.0);
        u.min_load_cost = 5.0;
        let model = bare_system(vec![u], flat(30.0));
        let mut state = SystemState::cold_start(&model);
        state.thermal[0].online = true;
        state.thermal[0].hours_online = 100;
        state.thermal[0].hours_offline = 0;
        state.thermal[0].power = 30.0;
        let day = slice_day(&model, 0, &state).unwrap();
        let m = build_day_model(&day, &exact()).unwrap();
        let sol = solve(&m, &exact()).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert!((sol.objective - 24.0 * (20.0 * 20.0 + 5.0)).abs() < 1e-6, "obj {}", sol.objective);
        for t in 0..24 {
            assert!((sol.value(&m, &names::power("u1", t)) - 30.0).abs() < 1e-6);
        }
        assert!(verify_solution(&m, &sol, 1e-6).pass);
    }

    #[test]
    fn shortfall_becomes_ens_not_infeasible() {
        let model = bare_system(vec![simple_thermal("u1", 10.0, 50.0, 20.0)], flat(100.0));
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let m = build_day_model(&day, &exact()).unwrap();
        let sol = solve(&m, &exact()).unwrap();
        for t in 0..24 {
            assert!((sol.value(&m, &names::ens(t)) - 50.0).abs() < 1e-6);
        }
        assert!(verify_solution(&m, &sol, 1e-6).pass);
    }

    #[test]
    fn zero_demand_all_off_zero_objective() {
        let model = bare_system(vec![simple_thermal("u1", 10.0, 50.0, 20.0)], flat(0.0));
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let m = build_day_model(&day, &exact()).unwrap();
        let sol = solve(&m, &exact()).unwrap();
        assert!(sol.objective.abs() < 1e-9, "obj {}", sol.objective);
        for t in 0..24 {
            assert_eq!(sol.value(&m, &names::online("u1", t)), 0.0);
        }
    }

    #[test]
    fn zero_reserve_requirements_leave_slacks_at_zero() {
        let model = bare_system(vec![simple_thermal("u1", 10.0, 50.0, 20.0)], flat(30.0));
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let m = build_day_model(&day, &exact()).unwrap();
        for row in m.rows.iter().filter(|r| r.provenance == "C.10") {
            assert_eq!(row.rhs, 0.0);
        }
        let sol = solve(&m, &exact()).unwrap();
        for (e, d) in crate::system::RESERVE_SLOTS {
            for t in 0..24 {
                assert_eq!(sol.value(&m, &names::reserve_slack(e, d, t)), 0.0);
            }
        }
    }

    #[test]
    fn miniature_day_solves_and_verifies() {
        let model = miniature_model();
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 10, &state).unwrap();
        let m = build_day_model(&day, &SolveOptions::default()).unwrap();
        let sol = solve(&m, &SolveOptions::default()).unwrap();
        let report = verify_solution(&m, &sol, 1e-6);
        assert!(report.pass, "{report}");
    }

    #[test]
    fn perturbed_soc_flags_the_recursion_row() {
        let model = miniature_model();
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 10, &state).unwrap();
        let m = build_day_model(&day, &SolveOptions::default()).unwrap();
        let mut sol = solve(&m, &SolveOptions::default()).unwrap();
        let j = m.var_id(&names::storage_soc("bess1", 7)).unwrap();
        sol.values[j] += 1.0;
        let report = verify_solution(&m, &sol, 1e-6);
        assert!(!report.pass);
        assert!(report.max_by_tag["C.35"] >= 1.0 - 1e-9);
        let (worst, _) = report.worst_row.clone().unwrap();
        assert!(worst.contains("C.35:bess1:7") || worst.contains("C.35:bess1:8"), "{worst}");
    }

    #[test]
    fn objective_mismatch_reported() {
        let model = bare_system(vec![simple_thermal("u1", 10.0, 50.0, 20.0)], flat(30.0));
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let m = build_day_model(&day, &exact()).unwrap();
        let mut sol = solve(&m, &exact()).unwrap();
        sol.objective += 123.0;
        let report = verify_solution(&m, &sol, 1e-6);
        assert!(!report.pass);
        assert!((report.objective_reported - report.objective_recomputed - 123.0).abs() < 1e-6);
    }

    #[test]
    fn mps_round_trip_preserves_the_matrix() {
        let model = miniature_model();
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let m = build_day_model(&day, &SolveOptions::default()).unwrap();
        let text = write_mps(&m);
        for section in ["ROWS", "COLUMNS", "RHS", "BOUNDS"] {
            assert!(text.contains(section));
        }
        assert!(text.contains("'INTORG'"));
        let back = read_mps(&text).unwrap();
        assert_eq!(back.vars.len(), m.vars.len());
        assert_eq!(back.rows.len(), m.rows.len());
        assert!((back.objective_offset - m.objective_offset).abs() < 1e-12);
        for (a, b) in m.vars.iter().zip(&back.vars) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.kind, b.kind);
            assert_eq!(a.lb, b.lb);
            assert_eq!(a.ub, b.ub);
            assert_eq!(a.obj, b.obj);
        }
        for (ra, rb) in m.rows.iter().zip(&back.rows) {
            assert_eq!(ra.name, rb.name);
            assert_eq!(ra.sense, rb.sense);
            assert_eq!(ra.rhs, rb.rhs);
            let map_a: std::collections::BTreeMap<usize, f64> = ra.terms.iter().cloned().collect();
            let map_b: std::collections::BTreeMap<usize, f64> = rb
                .terms
                .iter()
                .map(|&(j, a)| (m.var_id(&back.vars[j].name).unwrap(), a))
                .collect();
            assert_eq!(map_a, map_b, "row {}", ra.name);
        }
    }

    #[test]
    fn lp_export_has_the_expected_sections() {
        let model = bare_system(vec![simple_thermal("u1", 10.0, 50.0, 20.0)], flat(30.0));
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let m = build_day_model(&day, &exact()).unwrap();
        let text = write_lp(&m);
        for section in ["Minimize", "Subject To", "Bounds", "Binaries", "End"] {
            assert!(text.contains(section));
        }
    }

    #[test]
    fn unknown_backend_is_reported_unavailable() {
        let model = bare_system(vec![simple_thermal("u1", 10.0, 50.0, 20.0)], flat(0.0));
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let m = build_day_model(&day, &exact()).unwrap();
        std::env::set_var("PCSIM_SOLVER", "cplex");
        let res = solve(&m, &exact());
        std::env::remove_var("PCSIM_SOLVER");
        assert!(matches!(res, Err(SolveError::Unavailable(_))));
    }
}
