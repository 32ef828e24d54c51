//! Scenario documents and run outputs.

mod output;
mod scenario;

pub use output::{
    frame_csv, frame_name, frame_pgm, graph_csv, per_agent_csv, risk_csv, write_graph,
    write_outputs, OutputOptions,
};
pub use scenario::{
    check_scenario, load_scenario, parse_scenario, scenario_to_document, LoadedScenario,
    ScenarioError, SCHEMA_VERSION,
};
