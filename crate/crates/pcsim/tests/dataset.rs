//! Dataset loading round trips: the bundled miniature system written to
//! disk and read back, plus serde round trips of the model types.

use pcsim::system::testutil::{miniature_model, write_miniature_dataset};
use pcsim::system::{load_system, validate, SystemModel};
use proptest::prelude::*;

fn load_written() -> SystemModel {
    let dir = tempfile::tempdir().unwrap();
    write_miniature_dataset(dir.path()).unwrap();
    load_system(&dir.path().join("system.toml"), dir.path()).unwrap()
}

#[test]
fn written_dataset_loads_back_to_the_fixture() {
    let loaded = load_written();
    let fixture = miniature_model();
    assert_eq!(loaded, fixture);
    assert_eq!(loaded.asset_count(), 8);
    assert!(validate(&loaded).is_empty());
}

#[test]
fn roundtrip_efficiencies_are_stored_as_given() {
    let loaded = load_written();
    let bess = loaded.storage.iter().find(|s| s.id == "bess1").unwrap();
    assert_eq!(bess.roundtrip, 0.80);
    let phs = loaded.storage.iter().find(|s| s.id == "phs1").unwrap();
    assert_eq!(phs.roundtrip, 0.70);
    let pump = loaded.hydro.iter().find_map(|h| h.pump.as_ref()).unwrap();
    assert_eq!(pump.roundtrip, 0.70);
}

#[test]
fn truncated_series_error_names_the_file() {
    let dir = tempfile::tempdir().unwrap();
    write_miniature_dataset(dir.path()).unwrap();
    let series = dir.path().join("series.csv");
    let text = std::fs::read_to_string(&series).unwrap();
    let truncated: String = text.lines().take(8760).map(|l| format!("{l}\n")).collect();
    std::fs::write(&series, truncated).unwrap(); // header + 8759 rows
    let err = load_system(&dir.path().join("system.toml"), dir.path()).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("series.csv"), "{msg}");
    assert!(msg.contains("8759") || msg.contains("8760"), "{msg}");
}

#[test]
fn model_survives_a_json_round_trip() {
    let model = miniature_model();
    let text = serde_json::to_string(&model).unwrap();
    let back: SystemModel = serde_json::from_str(&text).unwrap();
    assert_eq!(model, back);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perturbed_models_round_trip_through_json(
        demand_scale in 0.1f64..10.0,
        soc in 0.0f64..1.0,
        cost in 0.0f64..500.0,
    ) {
        let mut model = miniature_model();
        for d in model.demand.demand.iter_mut() {
            *d *= demand_scale;
        }
        model.storage[0].energy_max *= soc.max(0.01);
        model.thermal[0].min_load_cost = cost;
        let text = serde_json::to_string(&model).unwrap();
        let back: SystemModel = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(model, back);
    }
}
