//! Plain-text run outputs. Numbers use Rust's shortest round-trip float
//! formatting, so files are locale-independent and byte-stable.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::aerosol::CellKind;
use crate::engine::{FrameRecord, GridInfo, SimulationResult};
use crate::navgraph::NavGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OutputOptions {
    /// Also write an 8-bit grayscale image per frame.
    pub pgm: bool,
}

pub fn graph_csv(graph: &NavGraph) -> String {
    let mut s = String::from("id_a,id_b,weight\n");
    for &(a, b, w) in graph.edges() {
        let _ = writeln!(s, "{a},{b},{w:?}");
    }
    s
}

pub fn risk_csv(frames: &[FrameRecord]) -> String {
    let mut s = String::from("t_seconds,avg_risk,infected_count\n");
    for f in frames {
        let _ = writeln!(s, "{:?},{:?},{}", f.t, f.average_risk, f.infected_count);
    }
    s
}

pub fn per_agent_csv(frames: &[FrameRecord]) -> String {
    let mut s = String::from("t_seconds,agent_id,x,y,status,P\n");
    for f in frames {
        for a in &f.agents {
            let _ = writeln!(
                s,
                "{:?},{},{:?},{:?},{},{:?}",
                f.t,
                a.id,
                a.position.x,
                a.position.y,
                a.status.as_str(),
                a.risk
            );
        }
    }
    s
}

/// `ny` lines of `nx` values, first line at minimum y; blocked cells are -1.
pub fn frame_csv(grid: &GridInfo, field: &[f64]) -> String {
    let mut s = String::with_capacity(grid.nx * grid.ny * 12);
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            if i > 0 {
                s.push(',');
            }
            let k = j * grid.nx + i;
            if grid.mask[k] == CellKind::Blocked {
                s.push_str("-1");
            } else {
                let _ = write!(s, "{:?}", field[k]);
            }
        }
        s.push('\n');
    }
    s
}

/// Binary PGM, top row at maximum y, scaled linearly from 0 to `max`.
pub fn frame_pgm(grid: &GridInfo, field: &[f64], max: f64) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", grid.nx, grid.ny).into_bytes();
    for j in (0..grid.ny).rev() {
        for i in 0..grid.nx {
            let c = field[j * grid.nx + i];
            let v = if max > 0.0 {
                (c / max * 255.0).round().clamp(0.0, 255.0)
            } else {
                0.0
            };
            out.push(v as u8);
        }
    }
    out
}

pub fn frame_name(index: usize, ext: &str) -> String {
    format!("frame_{index:06}.{ext}")
}

pub fn write_graph(graph: &NavGraph, out_dir: &Path) -> io::Result<PathBuf> {
    fs::create_dir_all(out_dir)?;
    let p = out_dir.join("graph.csv");
    fs::write(&p, graph_csv(graph))?;
    Ok(p)
}

/// Writes every output file for a finished run; returns the paths written.
/// Frame files are numbered by their row in `risk.csv`.
pub fn write_outputs(
    result: &SimulationResult,
    out_dir: &Path,
    options: OutputOptions,
) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let mut put = |name: String, bytes: &[u8]| -> io::Result<()> {
        let p = out_dir.join(name);
        fs::write(&p, bytes)?;
        written.push(p);
        Ok(())
    };
    put("risk.csv".into(), risk_csv(&result.frames).as_bytes())?;
    put(
        "per_agent.csv".into(),
        per_agent_csv(&result.frames).as_bytes(),
    )?;
    put("graph.csv".into(), graph_csv(&result.graph).as_bytes())?;
    let global_max = result
        .frames
        .iter()
        .flat_map(|f| f.field.iter().copied())
        .fold(0.0, f64::max);
    for (k, f) in result.frames.iter().enumerate() {
        put(
            frame_name(k, "csv"),
            frame_csv(&result.grid, &f.field).as_bytes(),
        )?;
        if options.pgm {
            put(
                frame_name(k, "pgm"),
                &frame_pgm(&result.grid, &f.field, global_max),
            )?;
        }
    }
    Ok(written)
}
