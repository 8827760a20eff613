//! Daily unit-commitment and economic-dispatch MILP: matrix representation,
//! the row-by-row builder, and the model census.

mod build;
mod census;
mod model;
mod options;

pub use build::{
    average_thermal_marginal, build_day_model, classify_startup, curtailment_shares,
    min_online_span, soak_trajectory, BuildError,
};
pub use census::{census, ModelCensus};
pub use model::{names, MilpModel, MilpRow, MilpVar, Sense, VarKind};
pub use options::SolveOptions;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::testutil::{miniature_model, simple_thermal};
    use crate::system::{slice_day, StorageTech, SystemState};

    #[test]
    fn classify_startup_thresholds() {
        let model = miniature_model();
        let u = &model.thermal[0];
        let hot = u.startup_types[0].offline_threshold;
        assert_eq!(classify_startup(4, u).kind.label(), "hot");
        // boundary is closed on the hotter side
        assert_eq!(classify_startup(hot, u).kind.label(), "hot");
        assert_eq!(classify_startup(hot + 1, u).kind.label(), "cold");
        assert_eq!(classify_startup(1_000_000, u).kind.label(), "cold");
    }

    #[test]
    fn soak_trajectory_interpolates() {
        let mut u = simple_thermal("u1", 100.0, 300.0, 20.0);
        u.sync_load = 0.0;
        let mut st = u.startup_types[0].clone();
        st.soak_duration = 2;
        assert_eq!(soak_trajectory(&u, &st, 1), 50.0);
        assert_eq!(soak_trajectory(&u, &st, 2), 100.0);
        u.sync_load = 100.0;
        assert_eq!(soak_trajectory(&u, &st, 1), 100.0);
    }

    #[test]
    #[should_panic]
    fn soak_trajectory_rejects_step_zero() {
        let u = simple_thermal("u1", 100.0, 300.0, 20.0);
        soak_trajectory(&u, &u.startup_types[0].clone(), 0);
    }

    #[test]
    fn curtailment_shares_proportional() {
        assert_eq!(curtailment_shares(&[100.0, 300.0], 40.0).unwrap(), vec![10.0, 30.0]);
        assert_eq!(curtailment_shares(&[0.0, 200.0], 50.0).unwrap(), vec![0.0, 50.0]);
        assert_eq!(
            curtailment_shares(&[100.0, 100.0, 100.0], 0.0).unwrap(),
            vec![0.0, 0.0, 0.0]
        );
        assert!(curtailment_shares(&[10.0], 20.0).is_err());
    }

    #[test]
    fn builder_matches_census_on_miniature_day() {
        let model = miniature_model();
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let m = build_day_model(&day, &SolveOptions::default()).unwrap();
        let c = census(&day);
        assert_eq!(m.vars.len(), c.variables);
        assert_eq!(m.num_binaries(), c.binaries);
        assert_eq!(m.rows.len(), c.rows);
    }

    #[test]
    fn census_hand_count_single_unit() {
        // One thermal unit (1 startup class, 1 cost block), nothing else.
        // Hand count per hour: unit rows C.11-C.13 (3) + C.15-C.20 (6)
        // + C.21 (2) + C.22-C.24 (3) + C.25 (1) + C.26-C.28 (3) + C.60 (6)
        // = 24; system rows C.9 (1) + C.10 (6) + C.52 (1) = 8; plus C.53.
        let model = crate::system::testutil::bare_system(
            vec![simple_thermal("u1", 100.0, 300.0, 20.0)],
            crate::system::testutil::flat(200.0),
        );
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let c = census(&day);
        assert_eq!(c.rows, 24 * (24 + 8) + 1);
        // Variables: 8 binaries + p, p_syn, p_soak, p_des, q, 6 r = 19 per
        // unit-hour; dr, ens, surplus, 6 slacks = 9 system-wide per hour.
        assert_eq!(c.variables, 24 * (19 + 9));
        assert_eq!(c.binaries, 24 * 8);
        let m = build_day_model(&day, &SolveOptions::default()).unwrap();
        assert_eq!(m.rows.len(), c.rows);
        assert_eq!(m.vars.len(), c.variables);
    }

    #[test]
    fn every_row_is_tagged() {
        let model = miniature_model();
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 3, &state).unwrap();
        let m = build_day_model(&day, &SolveOptions::default()).unwrap();
        for row in &m.rows {
            assert!(
                row.provenance.starts_with("C.") || row.provenance.starts_with("ext."),
                "untagged row {}",
                row.name
            );
        }
        // all core tags C.9..C.61 are materialized on the miniature system
        for n in 9..=61 {
            let tag = format!("C.{n}");
            assert!(
                m.rows.iter().any(|r| r.provenance == tag),
                "no row tagged {tag}"
            );
        }
    }

    #[test]
    fn bad_bounds_reported_with_provenance() {
        let mut model = miniature_model();
        let s = &mut model.storage[0];
        std::mem::swap(&mut s.energy_min, &mut s.energy_max);
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        match build_day_model(&day, &SolveOptions::default()) {
            Err(BuildError::Bounds { provenance, .. }) => assert_eq!(provenance, "C.34"),
            other => panic!("expected bounds error, got {other:?}"),
        }
    }

    #[test]
    fn oversized_virtual_costs_rejected() {
        let model = miniature_model();
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let opts = SolveOptions {
            virtual_reserve_thermal: 10.0,
            ..SolveOptions::default()
        };
        assert!(matches!(
            build_day_model(&day, &opts),
            Err(BuildError::Options(_))
        ));
    }

    #[test]
    fn stored_energy_default_is_average_marginal() {
        let model = miniature_model();
        let avg = average_thermal_marginal(&model);
        assert!(avg > 0.0);
        let state = SystemState::cold_start(&model);
        let day = slice_day(&model, 0, &state).unwrap();
        let m = build_day_model(&day, &SolveOptions::default()).unwrap();
        let bess = model.storage.iter().find(|s| s.tech == StorageTech::Bess).unwrap();
        let id = m.var_id(&names::storage_soc(&bess.id, 23)).unwrap();
        assert!((m.vars[id].obj + avg).abs() < 1e-12);
    }
}
