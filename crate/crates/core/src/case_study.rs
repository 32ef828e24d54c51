//! The bundled office case study: a 40 m × 20 m floor plate with two lift
//! cores, eleven offices, two conference rooms and three lunch areas along a
//! central corridor, occupied by 60 agents over one working day.
//!
//! Both layouts share geometry, points and schedules. The cellular layout
//! walls off every room; the open plan keeps only the conference-room walls.

use crate::aerosol::PhysicsParams;
use crate::engine::{
    AgentSpec, GraphMode, GridSpec, OutputSpec, RandomVisitSpec, ScenarioConfig, Zone, ZoneKind,
};
use crate::geom::{FaceWithHoles, Point2, Polygon, Segment, MIN_SEGMENT_LEN};
use crate::navgraph::{NavVertex, VertexTag};
use crate::schedule::{Activity, Display, Event, InfectionStatus, MaskType, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Cellular,
    OpenPlan,
}

pub const WIDTH: f64 = 40.0;
pub const DEPTH: f64 = 20.0;
pub const AGENTS: u32 = 60;
pub const INFECTIOUS_IDS: [u32; 6] = [0, 11, 21, 30, 41, 51];
pub const WALKING_SPEED: f64 = 1.5;
pub const ACH: f64 = 0.12;
pub const DEFAULT_SEED: u64 = 20_210_915;

const CORRIDOR_LO: f64 = 9.0;
const CORRIDOR_HI: f64 = 11.0;
const DOOR: f64 = 1.0;

pub const ARRIVE: f64 = 32_340.0; // 08:59
pub const DESK: f64 = 32_400.0; // 09:00
pub const MORNING_VISITS: (f64, f64) = (34_200.0, 39_600.0); // 09:30-11:00
pub const MORNING_MEETING: (f64, f64) = (39_600.0, 41_400.0); // 11:00-11:30
pub const LUNCH_EVEN: (f64, f64) = (46_800.0, 48_600.0); // 13:00-13:30
pub const LUNCH_ODD: (f64, f64) = (48_600.0, 50_400.0); // 13:30-14:00
pub const AFTERNOON_MEETING: (f64, f64) = (54_000.0, 55_800.0); // 15:00-15:30
pub const AFTERNOON_VISITS: (f64, f64) = (55_800.0, 61_200.0); // 15:30-17:00
pub const LEAVE: f64 = 61_200.0; // 17:00
pub const DAY_END: f64 = 61_500.0;

/// Periods when conference rooms or lunch areas are in use.
pub const SHARED_SPACE_WINDOWS: [(&str, f64, f64); 4] = [
    ("morning meeting", MORNING_MEETING.0, MORNING_MEETING.1),
    ("first lunch", LUNCH_EVEN.0, LUNCH_EVEN.1),
    ("second lunch", LUNCH_ODD.0, LUNCH_ODD.1),
    (
        "afternoon meeting",
        AFTERNOON_MEETING.0,
        AFTERNOON_MEETING.1,
    ),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Bottom,
    Top,
}

#[derive(Debug, Clone)]
struct Room {
    name: String,
    kind: ZoneKind,
    x0: f64,
    x1: f64,
    side: Side,
}

impl Room {
    fn new(name: &str, kind: ZoneKind, x0: f64, x1: f64, side: Side) -> Self {
        Room {
            name: name.to_string(),
            kind,
            x0,
            x1,
            side,
        }
    }

    fn y_range(&self) -> (f64, f64) {
        match self.side {
            Side::Bottom => (0.0, CORRIDOR_LO),
            Side::Top => (CORRIDOR_HI, DEPTH),
        }
    }

    fn door_x(&self) -> f64 {
        0.5 * (self.x0 + self.x1)
    }

    fn wall_y(&self) -> f64 {
        match self.side {
            Side::Bottom => CORRIDOR_LO,
            Side::Top => CORRIDOR_HI,
        }
    }

    /// `d` metres into the room from its corridor wall.
    fn depth(&self, d: f64) -> f64 {
        match self.side {
            Side::Bottom => CORRIDOR_LO - d,
            Side::Top => CORRIDOR_HI + d,
        }
    }

    fn polygon(&self) -> Polygon {
        let (y0, y1) = self.y_range();
        Polygon::rect(self.x0, y0, self.x1, y1).expect("room rectangles are valid")
    }
}

struct Plan {
    offices: Vec<(Room, usize)>,
    conference: [Room; 2],
    lunch: [Room; 3],
    /// Core blocks notched out of the plate, with their corridor access point.
    cores: [(f64, f64, Side, Point2); 2],
}

fn plan() -> Plan {
    let mut offices = Vec::new();
    let desks = [6, 6, 6, 6, 6, 5];
    for (k, &n) in desks.iter().enumerate() {
        let x0 = 6.0 + 4.0 * k as f64;
        offices.push((
            Room::new(
                &format!("office {}", k + 1),
                ZoneKind::Office,
                x0,
                x0 + 4.0,
                Side::Bottom,
            ),
            n,
        ));
    }
    for k in 0..5 {
        let x0 = 10.0 + 4.0 * k as f64;
        offices.push((
            Room::new(
                &format!("office {}", k + 7),
                ZoneKind::Office,
                x0,
                x0 + 4.0,
                Side::Top,
            ),
            5,
        ));
    }
    Plan {
        offices,
        conference: [
            Room::new("conference 1", ZoneKind::Conference, 0.0, 6.0, Side::Top),
            Room::new(
                "conference 2",
                ZoneKind::Conference,
                34.0,
                40.0,
                Side::Bottom,
            ),
        ],
        lunch: [
            Room::new("lunch 1", ZoneKind::Lunch, 0.0, 6.0, Side::Bottom),
            Room::new("lunch 2", ZoneKind::Lunch, 30.0, 35.0, Side::Top),
            Room::new("lunch 3", ZoneKind::Lunch, 35.0, 40.0, Side::Top),
        ],
        cores: [
            (6.0, 10.0, Side::Top, Point2::new(8.0, 10.5)),
            (30.0, 34.0, Side::Bottom, Point2::new(32.0, 9.5)),
        ],
    }
}

fn floor(p: &Plan) -> FaceWithHoles {
    // The cores reach the plate edge, so they are notches in the outline
    // rather than holes.
    let (a0, a1) = (p.cores[0].0, p.cores[0].1);
    let (b0, b1) = (p.cores[1].0, p.cores[1].1);
    let outline = vec![
        Point2::new(0.0, 0.0),
        Point2::new(b0, 0.0),
        Point2::new(b0, CORRIDOR_LO),
        Point2::new(b1, CORRIDOR_LO),
        Point2::new(b1, 0.0),
        Point2::new(WIDTH, 0.0),
        Point2::new(WIDTH, DEPTH),
        Point2::new(a1, DEPTH),
        Point2::new(a1, CORRIDOR_HI),
        Point2::new(a0, CORRIDOR_HI),
        Point2::new(a0, DEPTH),
        Point2::new(0.0, DEPTH),
    ];
    FaceWithHoles::without_holes(Polygon::new(outline).expect("outline is simple"))
}

fn seg(x0: f64, y0: f64, x1: f64, y1: f64) -> Segment {
    Segment::new(Point2::new(x0, y0), Point2::new(x1, y1)).expect("wall has length")
}

/// Corridor-side wall of each room with a centred door, plus the side walls
/// between neighbouring walled rooms.
fn walls(rooms: &[&Room]) -> Vec<Segment> {
    let mut out = Vec::new();
    for side in [Side::Bottom, Side::Top] {
        let mut row: Vec<&Room> = rooms.iter().copied().filter(|r| r.side == side).collect();
        row.sort_by(|a, b| a.x0.total_cmp(&b.x0));
        // Runs of touching rooms share one wall line broken only by doors.
        let mut k = 0;
        while k < row.len() {
            let mut end = k;
            while end + 1 < row.len() && row[end + 1].x0 == row[end].x1 {
                end += 1;
            }
            let y = row[k].wall_y();
            let mut x = row[k].x0;
            for r in &row[k..=end] {
                let d = r.door_x();
                out.push(seg(x, y, d - DOOR / 2.0, y));
                x = d + DOOR / 2.0;
            }
            out.push(seg(x, y, row[end].x1, y));
            for w in row[k..=end].windows(2) {
                let (y0, y1) = w[0].y_range();
                out.push(seg(w[0].x1, y0, w[0].x1, y1));
            }
            k = end + 1;
        }
    }
    out
}

struct Points {
    list: Vec<NavVertex>,
}

impl Points {
    fn add(&mut self, p: Point2, tag: VertexTag) -> Point2 {
        let id = self.list.len();
        self.list.push(NavVertex::new(id, p, tag));
        p
    }

    /// Door on the corridor wall plus one point just inside the room.
    fn door(&mut self, r: &Room) {
        let x = r.door_x();
        self.add(Point2::new(x, r.wall_y()), VertexTag::Door);
        self.add(Point2::new(x, r.depth(1.0)), VertexTag::Access);
    }

    /// `cols × rows` seats filling the room, row by row from the door.
    fn seats(&mut self, r: &Room, cols: usize, rows: usize) -> Vec<Point2> {
        let w = r.x1 - r.x0;
        let mut out = Vec::new();
        for row in 0..rows {
            for c in 0..cols {
                let x = r.x0 + w * (c as f64 + 0.5) / cols as f64;
                let d = 2.5 + 5.5 * (row as f64 + 0.5) / rows as f64;
                out.push(self.add(Point2::new(x, r.depth(d)), VertexTag::Other));
            }
        }
        out
    }
}

struct Places {
    desks: Vec<Point2>,
    /// Office index of each desk.
    desk_office: Vec<usize>,
    visit_spots: Vec<Point2>,
    conference_seats: [Vec<Point2>; 2],
    lunch_seats: [Vec<Point2>; 3],
    core_access: [Point2; 2],
}

fn points(p: &Plan) -> (Vec<NavVertex>, Places) {
    let mut pts = Points { list: Vec::new() };
    for k in 0..40 {
        pts.add(Point2::new(0.5 + k as f64, 10.0), VertexTag::Corridor);
    }
    let core_access = [p.cores[0].3, p.cores[1].3];
    for c in core_access {
        pts.add(c, VertexTag::Core);
    }

    let mut desks = Vec::new();
    let mut desk_office = Vec::new();
    let mut visit_spots = Vec::new();
    for (k, (room, n)) in p.offices.iter().enumerate() {
        pts.door(room);
        let spot = Point2::new(room.door_x(), room.depth(3.0));
        visit_spots.push(pts.add(spot, VertexTag::RoomCenter));
        let (cx, depths): (Vec<f64>, Vec<f64>) = match n {
            6 => (vec![1.0, 3.0], vec![4.5, 6.5, 8.3]),
            _ => (vec![1.0, 3.0], vec![5.0, 7.0]),
        };
        let mut seats = Vec::new();
        for &d in &depths {
            for &x in &cx {
                seats.push(Point2::new(room.x0 + x, room.depth(d)));
            }
        }
        if *n == 5 {
            seats.push(Point2::new(room.x0 + 2.0, room.depth(8.3)));
        }
        for s in seats {
            desks.push(pts.add(s, VertexTag::Desk));
            desk_office.push(k);
        }
    }
    let mut conference_seats: [Vec<Point2>; 2] = Default::default();
    for (k, room) in p.conference.iter().enumerate() {
        pts.door(room);
        conference_seats[k] = pts.seats(room, 5, 4);
    }
    let mut lunch_seats: [Vec<Point2>; 3] = Default::default();
    for (k, room) in p.lunch.iter().enumerate() {
        pts.door(room);
        lunch_seats[k] = pts.seats(room, 5, 2);
    }
    (
        pts.list,
        Places {
            desks,
            desk_office,
            visit_spots,
            conference_seats,
            lunch_seats,
            core_access,
        },
    )
}

/// Seats for the attendees of a shared-space session, assigned in id order:
/// the first `per_room` go to the first room, and so on.
fn assign(ids: &[u32], rooms: &[Vec<Point2>], per_room: usize) -> Vec<(u32, Point2)> {
    ids.iter()
        .enumerate()
        .map(|(k, &id)| (id, rooms[k / per_room][k % per_room]))
        .collect()
}

fn schedules(places: &Places) -> Vec<Schedule> {
    let all: Vec<u32> = (0..AGENTS).collect();
    let morning: Vec<u32> = all.iter().copied().filter(|i| i % 3 != 2).collect();
    let afternoon: Vec<u32> = all.iter().copied().filter(|i| i % 3 != 0).collect();
    let even: Vec<u32> = all.iter().copied().filter(|i| i % 2 == 0).collect();
    let odd: Vec<u32> = all.iter().copied().filter(|i| i % 2 == 1).collect();
    let m1 = assign(&morning, &places.conference_seats, 20);
    let m2 = assign(&afternoon, &places.conference_seats, 20);
    let l1 = assign(&even, &places.lunch_seats, 10);
    let l2 = assign(&odd, &places.lunch_seats, 10);
    let seat =
        |list: &[(u32, Point2)], id: u32| list.iter().find(|(i, _)| *i == id).map(|&(_, p)| p);

    all.iter()
        .map(|&id| {
            let desk = places.desks[id as usize];
            let core = if desk.x < 20.0 {
                places.core_access[0]
            } else {
                places.core_access[1]
            };
            let mut ev = vec![
                Event::new(core, ARRIVE, Activity::Resting),
                Event::new(desk, DESK, Activity::Resting),
            ];
            if let Some(p) = seat(&m1, id) {
                ev.push(Event::new(p, MORNING_MEETING.0, Activity::TalkingLoudly));
            }
            ev.push(Event::new(desk, MORNING_MEETING.1, Activity::Resting));
            let (lunch, window) = match seat(&l1, id) {
                Some(p) => (p, LUNCH_EVEN),
                None => (seat(&l2, id).expect("every agent has lunch"), LUNCH_ODD),
            };
            ev.push(Event::new(lunch, window.0, Activity::Talking));
            ev.push(Event::new(desk, window.1, Activity::Resting));
            if let Some(p) = seat(&m2, id) {
                ev.push(Event::new(p, AFTERNOON_MEETING.0, Activity::TalkingLoudly));
                ev.push(Event::new(desk, AFTERNOON_MEETING.1, Activity::Resting));
            }
            ev.push(Event::new(core, LEAVE, Activity::Resting));
            Schedule::new(ev, DAY_END)
        })
        .collect()
}

/// One visit spec per office so nobody "visits" their own office.
fn visit_specs(
    places: &Places,
    residue: u32,
    window: (f64, f64),
    max_count: u32,
    stay: (u32, u32),
) -> Vec<RandomVisitSpec> {
    let offices = places.visit_spots.len();
    (0..offices)
        .filter_map(|k| {
            let visitors: Vec<u32> = (0..AGENTS)
                .filter(|&id| id % 3 == residue && places.desk_office[id as usize] == k)
                .collect();
            if visitors.is_empty() {
                return None;
            }
            let destinations = (0..offices)
                .filter(|&o| o != k)
                .map(|o| places.visit_spots[o])
                .collect();
            Some(RandomVisitSpec {
                visitors,
                min_count: 1,
                max_count,
                min_stay: stay.0,
                max_stay: stay.1,
                destinations,
                activity: Activity::Talking,
                window_start: window.0,
                window_end: window.1,
            })
        })
        .collect()
}

/// Full scenario for one layout.
pub fn case_study(layout: Layout, seed: u64) -> ScenarioConfig {
    let p = plan();
    let face = floor(&p);
    let (nav_points, places) = points(&p);

    let mut walled: Vec<&Room> = p.conference.iter().collect();
    if layout == Layout::Cellular {
        walled.extend(p.offices.iter().map(|(r, _)| r));
        walled.extend(p.lunch.iter());
    }
    let barriers = walls(&walled);

    let mut zones: Vec<Zone> = p
        .offices
        .iter()
        .map(|(r, _)| r)
        .chain(p.conference.iter())
        .chain(p.lunch.iter())
        .map(|r| Zone {
            name: r.name.clone(),
            kind: r.kind,
            polygon: r.polygon(),
        })
        .collect();
    zones.push(Zone {
        name: "corridor".into(),
        kind: ZoneKind::Corridor,
        polygon: Polygon::rect(0.0, CORRIDOR_LO, WIDTH, CORRIDOR_HI).expect("corridor"),
    });

    let agents = schedules(&places)
        .into_iter()
        .enumerate()
        .map(|(k, schedule)| {
            let id = k as u32;
            AgentSpec {
                id,
                walking_speed: WALKING_SPEED,
                status: if INFECTIOUS_IDS.contains(&id) {
                    InfectionStatus::Infectious
                } else {
                    InfectionStatus::Susceptible
                },
                superspreader: false,
                mask: MaskType::NoMask,
                schedule,
                display: Display::default(),
            }
        })
        .collect();

    let mut random_visits = visit_specs(&places, 2, MORNING_VISITS, 6, (300, 600));
    random_visits.extend(visit_specs(&places, 0, AFTERNOON_VISITS, 4, (300, 900)));

    ScenarioConfig {
        seed,
        t_start: ARRIVE,
        t_end: DAY_END,
        dt: 1.0,
        graph_mode: GraphMode::PrunedDelaunay,
        buffer_distance: 0.0,
        pair_tolerance: MIN_SEGMENT_LEN,
        snap_radius: 0.25,
        max_substeps: 1000,
        grid: GridSpec {
            h: 0.5,
            height: 3.0,
        },
        output: OutputSpec {
            frame_every: 60,
            pgm: false,
        },
        physics: PhysicsParams {
            ach: ACH,
            ..PhysicsParams::default()
        },
        face,
        barriers,
        obstacles: vec![],
        zones,
        nav_points,
        agents,
        random_visits,
    }
}

/// Zones containing `p` (interior or boundary), in declaration order.
pub fn zones_at(zones: &[Zone], p: Point2) -> Vec<&Zone> {
    zones
        .iter()
        .filter(|z| z.polygon.contains_interior(p) || z.polygon.distance_to_boundary(p) <= 1e-9)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Simulation;

    #[test]
    fn headcount_and_desks() {
        let cfg = case_study(Layout::Cellular, DEFAULT_SEED);
        assert_eq!(cfg.agents.len(), 60);
        let infectious = cfg
            .agents
            .iter()
            .filter(|a| a.status == InfectionStatus::Infectious)
            .count();
        assert_eq!(infectious, 6);
        let desks = cfg
            .nav_points
            .iter()
            .filter(|v| v.tag == VertexTag::Desk)
            .count();
        assert_eq!(desks, 60);
        assert_eq!(
            cfg.zones
                .iter()
                .filter(|z| z.kind == ZoneKind::Office)
                .count(),
            11
        );
    }

    #[test]
    fn both_layouts_prepare() {
        for layout in [Layout::Cellular, Layout::OpenPlan] {
            let sim = Simulation::new(case_study(layout, DEFAULT_SEED)).unwrap();
            assert!(sim.warnings().is_empty(), "{:?}", sim.warnings());
        }
    }

    #[test]
    fn open_plan_has_fewer_walls() {
        let c = case_study(Layout::Cellular, 1);
        let o = case_study(Layout::OpenPlan, 1);
        assert!(o.barriers.len() < c.barriers.len());
        assert_eq!(o.nav_points, c.nav_points);
    }
}
