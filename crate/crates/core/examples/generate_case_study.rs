//! Writes the bundled case-study scenario documents.
//!
//!     cargo run --example generate_case_study [out_dir] [seed]

use std::path::PathBuf;

use floorflow::case_study::{case_study, Layout, DEFAULT_SEED};
use floorflow::io::{parse_scenario, scenario_to_document};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios"));
    let seed = args
        .next()
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(DEFAULT_SEED);
    std::fs::create_dir_all(&out)?;

    for (layout, name, blurb) in [
        (
            Layout::Cellular,
            "cellular.toml",
            "every office and lunch area walled off",
        ),
        (
            Layout::OpenPlan,
            "open_plan.toml",
            "only the conference rooms walled off",
        ),
    ] {
        let cfg = case_study(layout, seed);
        let body = scenario_to_document(&cfg)?;
        // Guard against writing a document that would not load back.
        assert_eq!(parse_scenario(&body)?, cfg);
        let text = format!(
            "# Office case study, {blurb}.\n# Generated by `cargo run --example generate_case_study`.\n\n{body}"
        );
        let path = out.join(name);
        std::fs::write(&path, text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
