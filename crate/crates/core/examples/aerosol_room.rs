//! A talking source in one of two rooms separated by a wall with a doorway:
//! the concentration builds up at the source, leaks through the door and
//! stays in balance with emission and removal.
//!
//!     cargo run --release --example aerosol_room

use floorflow::aerosol::{deposit_source, sample_field, step_field, GridField, PhysicsParams};
use floorflow::geom::{FaceWithHoles, Point2, Polygon, Segment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let face = FaceWithHoles::without_holes(Polygon::rect(0.0, 0.0, 10.0, 5.0)?);
    let mut field = GridField::covering(&face, 0.5, 3.0)?;
    field.apply_barriers(&[
        Segment::new(Point2::new(5.0, 0.0), Point2::new(5.0, 2.0))?,
        Segment::new(Point2::new(5.0, 3.0), Point2::new(5.0, 5.0))?,
    ]);

    let params = PhysicsParams {
        ach: 1.0,
        ..PhysicsParams::default()
    };
    let source = Point2::new(2.0, 2.5);
    let rate = params.emission.talking;
    let probes = [
        ("at source", source),
        ("near door", Point2::new(6.0, 2.5)),
        ("far corner", Point2::new(9.5, 4.5)),
    ];

    let dt = 1.0;
    let mut emitted = 0.0;
    println!(
        "{:>6}  {:>12}  {:>12}  {:>12}  {:>10}",
        "min", probes[0].0, probes[1].0, probes[2].0, "airborne"
    );
    for step in 1..=7_200 {
        deposit_source(&mut field, source, rate, dt)?;
        emitted += rate * dt;
        step_field(&mut field, &params, dt)?;
        if step % 900 == 0 {
            let c: Vec<f64> = probes
                .iter()
                .map(|&(_, p)| sample_field(&field, p))
                .collect::<Result<_, _>>()?;
            println!(
                "{:>6}  {:>12.3e}  {:>12.3e}  {:>12.3e}  {:>9.1}%",
                step / 60,
                c[0],
                c[1],
                c[2],
                100.0 * field.mass() / emitted
            );
        }
    }
    Ok(())
}
