//! Runs the office case study in both layouts and prints the average-risk
//! curve at each hour, plus where the concentration peaks during shared
//! sessions.
//!
//!     cargo run --release --example case_study [seed]

use std::time::Instant;

use floorflow::case_study::{case_study, zones_at, Layout, DEFAULT_SEED, SHARED_SPACE_WINDOWS};
use floorflow::engine::{FrameRecord, Simulation};

fn clock(t: f64) -> String {
    let s = t as u64;
    format!("{:02}:{:02}", s / 3600, s % 3600 / 60)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(DEFAULT_SEED);

    let mut curves = Vec::new();
    for layout in [Layout::Cellular, Layout::OpenPlan] {
        let cfg = case_study(layout, seed);
        let zones = cfg.zones.clone();
        let started = Instant::now();
        let sim = Simulation::new(cfg)?;
        let (nx, h, origin) = (sim.field().nx(), sim.field().h(), sim.field().origin());
        let mut peaks = Vec::new();
        let result = sim.run_with(|f: &FrameRecord| {
            for (name, _, end) in SHARED_SPACE_WINDOWS {
                if f.t == end - 60.0 {
                    let k = (0..f.field.len())
                        .fold(0, |b, k| if f.field[k] > f.field[b] { k } else { b });
                    let p = floorflow::geom::Point2::new(
                        origin.x + ((k % nx) as f64 + 0.5) * h,
                        origin.y + ((k / nx) as f64 + 0.5) * h,
                    );
                    let here: Vec<String> =
                        zones_at(&zones, p).iter().map(|z| z.name.clone()).collect();
                    peaks.push(format!(
                        "{name}: peak {:.4} q/m3 at ({}, {}) in {:?}",
                        f.field[k], p.x, p.y, here
                    ));
                }
            }
        })?;
        println!(
            "{layout:?}: {} steps in {:.1?}",
            result.frames.len(),
            started.elapsed()
        );
        for p in peaks {
            println!("  {p}");
        }
        println!(
            "  infected {} of 54, final average risk {:.4}",
            result.final_infected(),
            result.frames.last().unwrap().average_risk
        );
        curves.push(result.frames);
    }

    println!("time   cellular  open-plan");
    for (c, o) in curves[0].iter().zip(&curves[1]) {
        if (c.t as u64).is_multiple_of(1800) {
            println!(
                "{}  {:.5}   {:.5}",
                clock(c.t),
                c.average_risk,
                o.average_risk
            );
        }
    }
    Ok(())
}
