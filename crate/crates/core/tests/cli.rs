use std::path::PathBuf;
use std::process::{Command, Output};

fn floorflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floorflow"))
        .args(args)
        .env_remove("FLOORFLOW_THREADS")
        .output()
        .unwrap()
}

fn scenario(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn version_prints_the_package_version() {
    let out = floorflow(&["version"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        format!("floorflow {}", env!("CARGO_PKG_VERSION"))
    );
}

#[test]
fn validate_accepts_bundled_scenarios() {
    for name in ["minimal.toml", "two_room.toml"] {
        let out = floorflow(&["validate", &scenario(name)]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok:"));
    }
}

#[test]
fn usage_errors_exit_2_and_runtime_errors_exit_1() {
    assert_eq!(floorflow(&["bogus"]).status.code(), Some(2));
    assert_eq!(floorflow(&[]).status.code(), Some(2));
    assert_eq!(
        floorflow(&["simulate", &scenario("minimal.toml")])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o").to_string_lossy().into_owned();
    let bad_threads = floorflow(&[
        "simulate",
        &scenario("minimal.toml"),
        "--out",
        &out,
        "--threads",
        "0",
    ]);
    assert_eq!(bad_threads.status.code(), Some(2));
    assert_eq!(
        floorflow(&["validate", "no/such/file.toml"]).status.code(),
        Some(1)
    );
    assert_eq!(floorflow(&["--help"]).status.code(), Some(0));
}

#[test]
fn navgraph_writes_an_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let out = floorflow(&[
        "navgraph",
        &scenario("two_room.toml"),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.path().join("graph.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("id_a,id_b,weight"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    for row in rows {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f.len(), 3, "{row}");
        let (a, b): (usize, usize) = (f[0].parse().unwrap(), f[1].parse().unwrap());
        assert!(a < b);
        assert!(f[2].parse::<f64>().unwrap() > 0.0);
    }
}

#[test]
fn simulate_writes_risk_per_agent_and_frames() {
    let dir = tempfile::tempdir().unwrap();
    let out = floorflow(&[
        "simulate",
        &scenario("minimal.toml"),
        "--out",
        dir.path().to_str().unwrap(),
        "--frame-every",
        "600",
        "--pgm",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let risk = std::fs::read_to_string(dir.path().join("risk.csv")).unwrap();
    assert!(risk.starts_with("t_seconds,avg_risk,infected_count\n"));
    // Frames at 0, 600, ..., 3600.
    assert_eq!(risk.lines().count(), 1 + 7);
    let agents = std::fs::read_to_string(dir.path().join("per_agent.csv")).unwrap();
    assert!(agents.starts_with("t_seconds,agent_id,x,y,status,P\n"));
    assert!(dir.path().join("frame_000000.csv").exists());
    assert!(dir.path().join("frame_000006.pgm").exists());
    assert!(!dir.path().join("frame_000007.csv").exists());
}
