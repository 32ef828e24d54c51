//! One agent's day: snap the schedule to the graph, then step the clock and
//! watch the agent leave early enough to arrive on time.
//!
//!     cargo run --example schedule_walk

use floorflow::geom::{FaceWithHoles, Point2, Polygon};
use floorflow::navgraph::{build_visibility_graph, NavVertex, VertexTag};
use floorflow::schedule::{
    advance_agent, validate_schedule, Activity, Agent, Event, InfectionStatus, MaskType,
    MovementState, Router, Schedule,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let face = FaceWithHoles::without_holes(Polygon::rect(0.0, 0.0, 30.0, 10.0)?);
    let desk = Point2::new(2.0, 2.0);
    let meeting = Point2::new(28.0, 8.0);
    let points = vec![
        NavVertex::new(0, desk, VertexTag::Desk),
        NavVertex::new(1, Point2::new(15.0, 5.0), VertexTag::Corridor),
        NavVertex::new(2, meeting, VertexTag::RoomCenter),
    ];
    let graph = build_visibility_graph(&face, &points, 1e-6)?;

    let schedule = Schedule::new(
        vec![
            Event::new(desk, 32_400.0, Activity::Resting),
            Event::new(meeting, 32_460.0, Activity::Talking),
            Event::new(desk, 32_520.0, Activity::Resting),
        ],
        32_600.0,
    );
    let ids = validate_schedule(&schedule, &graph, 0.25)?;
    let mut agent = Agent::new(
        7,
        1.2,
        InfectionStatus::Susceptible,
        false,
        MaskType::NoMask,
        schedule,
    )?;
    let mut router = Router::new(graph);

    // The clock ticks every 10 s, so departures happen on the first tick at
    // or after the time to leave and arrivals may slip by up to one tick.
    let mut t = 32_400.0;
    while t <= 32_620.0 {
        let step = advance_agent(&agent, t, &mut router, &ids)?;
        let state = match &step.movement {
            MovementState::AtEvent(i) => format!("at event {i}"),
            MovementState::Walking { target, .. } => format!("walking to event {target}"),
            MovementState::Departed => "departed".to_string(),
        };
        println!(
            "t={t:>7} ({:>6.2}, {:>5.2}) {:<16} {}",
            step.position.x,
            step.position.y,
            state,
            step.activity.as_str()
        );
        agent.movement = step.movement;
        t += 10.0;
    }
    Ok(())
}
