//! Events, gap-free schedules, agents and the movement state machine.
//!
//! An agent stays at its current event until the clock reaches the
//! time-to-leave for the next one, `arrival - length / speed`, then walks
//! the shortest path, its position given by the distance covered since
//! departure.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Point2;
use crate::navgraph::{nearest_vertex, point_at_distance, shortest_path, NavError, NavGraph, Path};

pub const SECONDS_PER_DAY: f64 = 86_400.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleError {
    #[error("schedule has no events")]
    Empty,
    #[error("event {0} does not start strictly after the previous one")]
    NonMonotoneSchedule(usize),
    #[error("event {0} starts outside [0, 86400) s")]
    StartOutOfRange(usize),
    #[error("day end {day_end} s does not close the last event (starts {last_start} s)")]
    DayEndTooEarly { day_end: f64, last_start: f64 },
    #[error("event {index} is {distance:.3} m from the nearest graph vertex")]
    NoVertexInRange { index: usize, distance: f64 },
    #[error("walking speed must be positive, got {0}")]
    BadSpeed(f64),
    #[error("agent {0} is a superspreader but not infectious")]
    SuperspreaderNotInfectious(u32),
    #[error(transparent)]
    Nav(#[from] NavError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activity {
    Resting,
    Talking,
    TalkingLoudly,
    Walking,
    ModerateExercise,
    VigorousExercise,
}

impl Activity {
    pub const ALL: [Activity; 6] = [
        Activity::Resting,
        Activity::Talking,
        Activity::TalkingLoudly,
        Activity::Walking,
        Activity::ModerateExercise,
        Activity::VigorousExercise,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Activity::Resting => "resting",
            Activity::Talking => "talking",
            Activity::TalkingLoudly => "talking_loudly",
            Activity::Walking => "walking",
            Activity::ModerateExercise => "moderate_exercise",
            Activity::VigorousExercise => "vigorous_exercise",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskType {
    NoMask,
    Cotton,
    Surgical,
    N95,
}

impl MaskType {
    pub const ALL: [MaskType; 4] = [
        MaskType::NoMask,
        MaskType::Cotton,
        MaskType::Surgical,
        MaskType::N95,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfectionStatus {
    Susceptible,
    /// Carrying the virus but not yet emitting.
    Infected,
    Infectious,
}

impl InfectionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            InfectionStatus::Susceptible => "susceptible",
            InfectionStatus::Infected => "infected",
            InfectionStatus::Infectious => "infectious",
        }
    }

    /// Marker color: green when susceptible, orange once infected, red when
    /// infectious.
    pub fn display_color(self) -> [u8; 3] {
        match self {
            InfectionStatus::Susceptible => [46, 160, 67],
            InfectionStatus::Infected => [245, 140, 30],
            InfectionStatus::Infectious => [214, 39, 40],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeKind {
    Cylinder,
    Cone,
}

/// How an agent is drawn. Purely cosmetic: agents are points for movement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Display {
    pub shape: ShapeKind,
    pub radius: f64,
    pub height: f64,
}

impl Default for Display {
    fn default() -> Self {
        Display {
            shape: ShapeKind::Cylinder,
            radius: 0.25,
            height: 1.7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Event {
    pub location: Point2,
    /// Seconds since midnight.
    pub start: f64,
    pub activity: Activity,
}

impl Event {
    pub fn new(location: Point2, start: f64, activity: Activity) -> Self {
        Event {
            location,
            start,
            activity,
        }
    }
}

/// Events back to back; each lasts until the next starts, the last until
/// `day_end`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub events: Vec<Event>,
    pub day_end: f64,
}

impl Schedule {
    pub fn new(events: Vec<Event>, day_end: f64) -> Self {
        Schedule { events, day_end }
    }

    pub fn duration(&self, index: usize) -> f64 {
        let end = self.events.get(index + 1).map_or(self.day_end, |e| e.start);
        end - self.events[index].start
    }
}

/// Checks timing and snaps every event location to a graph vertex.
pub fn validate_schedule(
    schedule: &Schedule,
    graph: &NavGraph,
    snap_radius: f64,
) -> Result<Vec<usize>, ScheduleError> {
    let events = &schedule.events;
    if events.is_empty() {
        return Err(ScheduleError::Empty);
    }
    for (i, e) in events.iter().enumerate() {
        if !(0.0..SECONDS_PER_DAY).contains(&e.start) {
            return Err(ScheduleError::StartOutOfRange(i));
        }
        if i > 0 && e.start <= events[i - 1].start {
            return Err(ScheduleError::NonMonotoneSchedule(i));
        }
    }
    let last_start = events.last().unwrap().start;
    if schedule.day_end <= last_start {
        return Err(ScheduleError::DayEndTooEarly {
            day_end: schedule.day_end,
            last_start,
        });
    }
    events
        .iter()
        .enumerate()
        .map(|(index, e)| {
            nearest_vertex(graph, e.location, snap_radius).map_err(|err| match err {
                NavError::NoVertexInRange { distance } => {
                    ScheduleError::NoVertexInRange { index, distance }
                }
                other => other.into(),
            })
        })
        .collect()
}

/// Latest departure that still arrives on time.
pub fn time_to_leave(arrival: f64, path_length: f64, speed: f64) -> f64 {
    arrival - path_length / speed
}

pub fn position_at(path: &Path, depart_time: f64, speed: f64, now: f64) -> Point2 {
    point_at_distance(path, (now - depart_time) * speed)
}

#[derive(Debug, Clone, PartialEq)]
pub enum MovementState {
    AtEvent(usize),
    Walking {
        path: Path,
        depart_time: f64,
        target: usize,
    },
    Departed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Agent {
    pub id: u32,
    /// Meters per second.
    pub walking_speed: f64,
    pub status: InfectionStatus,
    pub superspreader: bool,
    pub mask: MaskType,
    pub schedule: Schedule,
    pub movement: MovementState,
    pub display: Display,
}

impl Agent {
    pub fn new(
        id: u32,
        walking_speed: f64,
        status: InfectionStatus,
        superspreader: bool,
        mask: MaskType,
        schedule: Schedule,
    ) -> Result<Self, ScheduleError> {
        if !(walking_speed > 0.0 && walking_speed.is_finite()) {
            return Err(ScheduleError::BadSpeed(walking_speed));
        }
        if superspreader && status != InfectionStatus::Infectious {
            return Err(ScheduleError::SuperspreaderNotInfectious(id));
        }
        Ok(Agent {
            id,
            walking_speed,
            status,
            superspreader,
            mask,
            schedule,
            movement: MovementState::AtEvent(0),
            display: Display::default(),
        })
    }
}

/// Memoized shortest paths over one graph.
#[derive(Debug)]
pub struct Router {
    graph: NavGraph,
    cache: HashMap<(usize, usize), Path>,
}

impl Router {
    pub fn new(graph: NavGraph) -> Self {
        Router {
            graph,
            cache: HashMap::new(),
        }
    }

    pub fn graph(&self) -> &NavGraph {
        &self.graph
    }

    pub fn path(&mut self, src: usize, dst: usize) -> Result<&Path, NavError> {
        if !self.cache.contains_key(&(src, dst)) {
            let p = shortest_path(&self.graph, src, dst)?;
            self.cache.insert((src, dst), p);
        }
        Ok(&self.cache[&(src, dst)])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Advance {
    pub movement: MovementState,
    pub position: Point2,
    pub activity: Activity,
}

/// Moves `agent` forward to time `now`. Several transitions may happen in
/// one call, e.g. arriving at an event whose successor is already due.
pub fn advance_agent(
    agent: &Agent,
    now: f64,
    router: &mut Router,
    resolved_ids: &[usize],
) -> Result<Advance, NavError> {
    let events = &agent.schedule.events;
    let speed = agent.walking_speed;
    let last = events.len() - 1;
    let mut state = agent.movement.clone();
    loop {
        match state {
            MovementState::Departed => {
                return Ok(Advance {
                    movement: MovementState::Departed,
                    position: router.graph().position(resolved_ids[last]),
                    activity: events[last].activity,
                });
            }
            MovementState::AtEvent(i) => {
                let here = Advance {
                    movement: MovementState::AtEvent(i),
                    position: router.graph().position(resolved_ids[i]),
                    activity: events[i].activity,
                };
                if i == last {
                    if now >= agent.schedule.day_end {
                        state = MovementState::Departed;
                        continue;
                    }
                    return Ok(here);
                }
                let path = router.path(resolved_ids[i], resolved_ids[i + 1])?;
                let leave = time_to_leave(events[i + 1].start, path.length(), speed);
                if now < leave {
                    return Ok(here);
                }
                state = MovementState::Walking {
                    path: path.clone(),
                    depart_time: now.max(leave),
                    target: i + 1,
                };
            }
            MovementState::Walking {
                ref path,
                depart_time,
                target,
            } => {
                if (now - depart_time) * speed >= path.length() {
                    state = MovementState::AtEvent(target);
                    continue;
                }
                let position = position_at(path, depart_time, speed, now);
                return Ok(Advance {
                    movement: state.clone(),
                    position,
                    activity: Activity::Walking,
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::navgraph::{NavVertex, VertexTag};

    fn line_graph(len: f64) -> NavGraph {
        NavGraph::from_pairs(
            vec![
                NavVertex::new(0, Point2::new(0.0, 0.0), VertexTag::Desk),
                NavVertex::new(1, Point2::new(len, 0.0), VertexTag::Desk),
            ],
            [(0, 1)],
        )
        .unwrap()
    }

    fn agent(events: Vec<Event>, day_end: f64) -> Agent {
        Agent::new(
            1,
            1.5,
            InfectionStatus::Susceptible,
            false,
            MaskType::NoMask,
            Schedule::new(events, day_end),
        )
        .unwrap()
    }

    #[test]
    fn time_to_leave_examples() {
        assert_eq!(time_to_leave(34200.0, 45.0, 1.5), 34170.0);
        assert_eq!(time_to_leave(34200.0, 0.0, 1.5), 34200.0);
        assert_eq!(time_to_leave(34200.0, 90000.0, 1.5), -25800.0);
    }

    #[test]
    fn position_examples() {
        let p = Path::new(vec![Point2::new(0.0, 0.0), Point2::new(30.0, 0.0)]);
        assert_eq!(position_at(&p, 100.0, 1.5, 110.0), Point2::new(15.0, 0.0));
        assert_eq!(position_at(&p, 100.0, 1.5, 100.0), Point2::new(0.0, 0.0));
        assert_eq!(position_at(&p, 100.0, 1.5, 130.0), Point2::new(30.0, 0.0));
    }

    #[test]
    fn schedule_validation() {
        let g = line_graph(45.0);
        let at = |x: f64, t: f64| Event::new(Point2::new(x, 0.0), t, Activity::Resting);
        let ok = Schedule::new(
            vec![at(0.0, 32400.0), at(45.0, 34200.0), at(0.0, 39600.0)],
            40000.0,
        );
        assert_eq!(validate_schedule(&ok, &g, 0.5), Ok(vec![0, 1, 0]));
        let dup = Schedule::new(vec![at(0.0, 32400.0), at(45.0, 32400.0)], 40000.0);
        assert_eq!(
            validate_schedule(&dup, &g, 0.5),
            Err(ScheduleError::NonMonotoneSchedule(1))
        );
        let far = Schedule::new(vec![at(0.0, 32400.0), at(20.0, 34200.0)], 40000.0);
        assert!(matches!(
            validate_schedule(&far, &g, 0.5),
            Err(ScheduleError::NoVertexInRange { index: 1, .. })
        ));
        let late = Schedule::new(vec![at(0.0, 32400.0)], 32400.0);
        assert!(matches!(
            validate_schedule(&late, &g, 0.5),
            Err(ScheduleError::DayEndTooEarly { .. })
        ));
    }

    #[test]
    fn durations_close_the_day() {
        let at = |t: f64| Event::new(Point2::new(0.0, 0.0), t, Activity::Resting);
        let s = Schedule::new(vec![at(100.0), at(250.0)], 1000.0);
        assert_eq!(s.duration(0), 150.0);
        assert_eq!(s.duration(1), 750.0);
    }

    #[test]
    fn departs_exactly_at_time_to_leave_and_arrives() {
        let g = line_graph(45.0);
        let mut router = Router::new(g.clone());
        let events = vec![
            Event::new(Point2::new(0.0, 0.0), 32400.0, Activity::Resting),
            Event::new(Point2::new(45.0, 0.0), 34200.0, Activity::Talking),
        ];
        let mut a = agent(events, 40000.0);
        let ids = [0, 1];

        let r = advance_agent(&a, 34169.0, &mut router, &ids).unwrap();
        assert_eq!(r.movement, MovementState::AtEvent(0));
        assert_eq!(r.activity, Activity::Resting);

        let r = advance_agent(&a, 34170.0, &mut router, &ids).unwrap();
        assert!(
            matches!(r.movement, MovementState::Walking { depart_time, target: 1, .. } if depart_time == 34170.0)
        );
        assert_eq!(r.activity, Activity::Walking);
        a.movement = r.movement;

        let r = advance_agent(&a, 34185.0, &mut router, &ids).unwrap();
        assert_eq!(r.position, Point2::new(22.5, 0.0));

        let r = advance_agent(&a, 34200.0, &mut router, &ids).unwrap();
        assert_eq!(r.movement, MovementState::AtEvent(1));
        assert_eq!(r.position, Point2::new(45.0, 0.0));
        assert_eq!(r.activity, Activity::Talking);
        a.movement = r.movement;

        let r = advance_agent(&a, 40000.0, &mut router, &ids).unwrap();
        assert_eq!(r.movement, MovementState::Departed);
    }

    #[test]
    fn late_agent_departs_immediately() {
        let g = line_graph(45.0);
        let mut router = Router::new(g.clone());
        let events = vec![
            Event::new(Point2::new(0.0, 0.0), 34190.0, Activity::Resting),
            Event::new(Point2::new(45.0, 0.0), 34200.0, Activity::Talking),
        ];
        let a = agent(events, 40000.0);
        // Time-to-leave was 34170, before the first event even began.
        let r = advance_agent(&a, 34190.0, &mut router, &[0, 1]).unwrap();
        let MovementState::Walking { depart_time, .. } = r.movement else {
            panic!("expected walking")
        };
        assert_eq!(depart_time, 34190.0);
        assert!(depart_time + 45.0 / 1.5 > 34200.0);
    }

    #[test]
    fn agent_attribute_invariants() {
        let s = Schedule::new(vec![], 1.0);
        assert_eq!(
            Agent::new(
                3,
                1.5,
                InfectionStatus::Susceptible,
                true,
                MaskType::NoMask,
                s.clone()
            ),
            Err(ScheduleError::SuperspreaderNotInfectious(3))
        );
        assert_eq!(
            Agent::new(
                3,
                0.0,
                InfectionStatus::Infectious,
                false,
                MaskType::NoMask,
                s
            ),
            Err(ScheduleError::BadSpeed(0.0))
        );
    }
}
