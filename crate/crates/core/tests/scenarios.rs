use std::path::PathBuf;

use floorflow::engine::run_simulation;
use floorflow::io::{
    check_scenario, load_scenario, parse_scenario, scenario_to_document, ScenarioError,
};

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

fn minimal() -> String {
    std::fs::read_to_string(scenario_path("minimal.toml")).unwrap()
}

#[test]
fn bundled_scenarios_load_and_round_trip() {
    for name in [
        "minimal.toml",
        "two_room.toml",
        "cellular.toml",
        "open_plan.toml",
    ] {
        let loaded = load_scenario(&scenario_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(loaded.warnings.is_empty(), "{name}: {:?}", loaded.warnings);
        let doc = scenario_to_document(&loaded.config).unwrap();
        assert_eq!(parse_scenario(&doc).unwrap(), loaded.config, "{name}");
    }
}

#[test]
fn unknown_field_names_its_path() {
    let text = minimal().replace("[grid]\n", "[grid]\nspacing = 2.0\n");
    match parse_scenario(&text) {
        Err(ScenarioError::ParseError { location, message }) => {
            assert!(location.contains("grid"), "{location}");
            assert!(message.contains("spacing"), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn malformed_toml_reports_a_line() {
    let text = minimal().replace("dt = 1.0", "dt = = 1.0");
    match parse_scenario(&text) {
        Err(ScenarioError::ParseError { location, .. }) => assert_eq!(location, "line 8"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn schema_version_is_required_and_checked() {
    let wrong = minimal().replace("schema_version = 1", "schema_version = 2");
    assert!(matches!(
        parse_scenario(&wrong),
        Err(ScenarioError::SchemaVersionMismatch { found: Some(2) })
    ));
    let missing = minimal().replace("schema_version = 1", "");
    assert!(matches!(
        parse_scenario(&missing),
        Err(ScenarioError::SchemaVersionMismatch { found: None })
    ));
}

#[test]
fn unknown_activity_is_a_validation_error() {
    let text = minimal().replace("activity = \"talking\"", "activity = \"shouting\"");
    match parse_scenario(&text) {
        Err(ScenarioError::ValidationError(msg)) => assert!(msg.contains("shouting"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn out_of_order_emission_rates_warn() {
    let text = minimal().replace(
        "ach = 0.12\n",
        "ach = 0.12\n\n[physics.emission]\nresting = 0.003\ntalking = 0.015\ntalking_loudly = 0.05\n\
         walking = 0.01\nmoderate_exercise = 0.08\nvigorous_exercise = 0.15\n",
    );
    let loaded = check_scenario(&text).unwrap();
    assert!(
        loaded.warnings.iter().any(|w| w.contains("walking")),
        "{:?}",
        loaded.warnings
    );
}

#[test]
fn nav_point_outside_the_face_is_rejected() {
    let text = minimal().replace("position = [2.5, 3.5]", "position = [2.5, 4.5]");
    assert!(parse_scenario(&text).is_ok());
    assert!(matches!(
        check_scenario(&text),
        Err(ScenarioError::ValidationError(_))
    ));
}

#[test]
fn no_infectious_agents_means_no_risk() {
    let text = minimal().replace("status = \"infectious\"", "status = \"susceptible\"");
    let cfg = parse_scenario(&text).unwrap();
    let result = run_simulation(cfg).unwrap();
    assert!(result.frames.iter().all(|f| f.average_risk == 0.0));
    assert!(result
        .frames
        .iter()
        .all(|f| f.field.iter().all(|&c| c <= 0.0)));
    assert!(result.agents.iter().all(|a| a.risk == 0.0));
}

#[test]
fn missing_file_is_a_read_error() {
    assert!(matches!(
        load_scenario(&scenario_path("does_not_exist.toml")),
        Err(ScenarioError::Read { .. })
    ));
}
