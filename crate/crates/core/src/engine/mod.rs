//! Time-stepped orchestration of agents, the aerosol field and dose.
//!
//! Each step of length `dt` runs, in order: move every agent, deposit
//! emissions, advance the field (sub-stepped to stay stable), then let
//! every present non-infectious agent inhale. Output depends only on the
//! configuration, never on thread count.

mod rng;
mod visits;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use rng::{seeded, SplitMix64};
pub use visits::{generate_random_visits, splice_visits, RandomVisitSpec, VisitPlan};

use crate::aerosol::{
    deposit_into_cell, sample_field, step_field, withdraw, AerosolError, CellKind, GridField,
    PhysicsParams,
};
use crate::geom::{
    offset_polygon, point_in_face, FaceWithHoles, GeomError, OffsetSide, Point2, Polygon, Segment,
    MIN_SEGMENT_LEN,
};
use crate::navgraph::{
    build_pruned_delaunay_graph, build_visibility_graph, prune_edges, retain_valid_edges, NavError,
    NavGraph, NavVertex,
};
use crate::risk::{average_risk, emission_rate, inhale, update_status, DoseState};
use crate::schedule::{
    advance_agent, validate_schedule, Activity, Agent, Display, InfectionStatus, MaskType,
    MovementState, Router, Schedule, ScheduleError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid random-visit spec: {0}")]
    InvalidVisitSpec(String),
    #[error("visits for agent {visitor} need {needed} s but the window is {available} s")]
    WindowTooSmall {
        visitor: u32,
        needed: f64,
        available: f64,
    },
    #[error("dt needs {substeps} field sub-steps, more than the limit of {max}")]
    UnstableConfig { substeps: usize, max: usize },
    #[error("agent {agent}: {source}")]
    Schedule { agent: u32, source: ScheduleError },
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Nav(#[from] NavError),
    #[error(transparent)]
    Aerosol(#[from] AerosolError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphMode {
    Visibility,
    PrunedDelaunay,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// Cell size, m.
    pub h: f64,
    /// Effective mixing height, m.
    pub height: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Record a frame every this many steps (the first and last step are
    /// always recorded).
    pub frame_every: u64,
    #[serde(default)]
    pub pgm: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            frame_every: 60,
            pgm: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZoneKind {
    Office,
    Conference,
    Lunch,
    Corridor,
    Core,
    Other,
}

/// A named region, used only for reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Zone {
    pub name: String,
    pub kind: ZoneKind,
    pub polygon: Polygon,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentSpec {
    pub id: u32,
    pub walking_speed: f64,
    pub status: InfectionStatus,
    #[serde(default)]
    pub superspreader: bool,
    #[serde(default = "no_mask")]
    pub mask: MaskType,
    pub schedule: Schedule,
    #[serde(default)]
    pub display: Display,
}

fn no_mask() -> MaskType {
    MaskType::NoMask
}

fn default_max_substeps() -> usize {
    1000
}

fn default_pair_tolerance() -> f64 {
    MIN_SEGMENT_LEN
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seed: u64,
    pub t_start: f64,
    pub t_end: f64,
    /// Agent step, s.
    pub dt: f64,
    pub graph_mode: GraphMode,
    /// Clearance kept from walls and holes when navigating, m.
    #[serde(default)]
    pub buffer_distance: f64,
    /// Point pairs closer than this are never joined, m.
    #[serde(default = "default_pair_tolerance")]
    pub pair_tolerance: f64,
    pub snap_radius: f64,
    #[serde(default = "default_max_substeps")]
    pub max_substeps: usize,
    pub grid: GridSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub physics: PhysicsParams,
    pub face: FaceWithHoles,
    #[serde(default)]
    pub barriers: Vec<Segment>,
    #[serde(default)]
    pub obstacles: Vec<Polygon>,
    #[serde(default)]
    pub zones: Vec<Zone>,
    pub nav_points: Vec<NavVertex>,
    pub agents: Vec<AgentSpec>,
    #[serde(default)]
    pub random_visits: Vec<RandomVisitSpec>,
}

impl ScenarioConfig {
    /// Number of agent steps; a trailing partial step is not run.
    pub fn step_count(&self) -> u64 {
        ((self.t_end - self.t_start) / self.dt + 1e-9).floor() as u64
    }

    pub fn time_at(&self, step: u64) -> f64 {
        self.t_start + step as f64 * self.dt
    }

    /// Field sub-steps per agent step.
    pub fn substeps(&self) -> usize {
        let max = self.physics.max_stable_dt(self.grid.h);
        if max.is_finite() {
            ((self.dt / max) * (1.0 - 1e-12)).ceil().max(1.0) as usize
        } else {
            1
        }
    }

    /// Structural checks that need no geometry work; returns warnings.
    pub fn validate(&self) -> Result<Vec<String>, EngineError> {
        let bad = |m: String| Err(EngineError::InvalidConfig(m));
        if !(self.t_start.is_finite() && self.t_end.is_finite() && self.t_start < self.t_end) {
            return bad(format!(
                "t_start {} must be before t_end {}",
                self.t_start, self.t_end
            ));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt = {} must be positive", self.dt));
        }
        if self.step_count() == 0 {
            return bad("run is shorter than one step".into());
        }
        if self.agents.is_empty() {
            return bad("at least one agent is required".into());
        }
        let mut ids: Vec<u32> = self.agents.iter().map(|a| a.id).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return bad(format!("duplicate agent id {}", w[0]));
        }
        for spec in &self.random_visits {
            spec.validate()?;
            if let Some(v) = spec.visitors.iter().find(|v| ids.binary_search(v).is_err()) {
                return bad(format!("random visits name unknown agent {v}"));
            }
        }
        if !(self.grid.h > 0.0 && self.grid.height > 0.0) {
            return bad(format!(
                "grid h = {}, height = {}",
                self.grid.h, self.grid.height
            ));
        }
        if !(self.snap_radius > 0.0 && self.snap_radius.is_finite()) {
            return bad(format!(
                "snap_radius = {} must be positive",
                self.snap_radius
            ));
        }
        if !(self.buffer_distance >= 0.0 && self.buffer_distance.is_finite()) {
            return bad(format!(
                "buffer_distance = {} must be >= 0",
                self.buffer_distance
            ));
        }
        if self.output.frame_every == 0 {
            return bad("output.frame_every must be at least 1".into());
        }
        let warnings = self.physics.validate()?;
        let substeps = self.substeps();
        if substeps > self.max_substeps {
            return Err(EngineError::UnstableConfig {
                substeps,
                max: self.max_substeps,
            });
        }
        Ok(warnings)
    }
}

/// The face agents navigate: the floor shrunk and the holes grown by the
/// buffer distance.
pub fn navigable_face(
    config: &ScenarioConfig,
) -> Result<(FaceWithHoles, Vec<Polygon>), EngineError> {
    let b = config.buffer_distance;
    if b == 0.0 {
        return Ok((config.face.clone(), config.obstacles.clone()));
    }
    let outer = offset_polygon(config.face.outer(), b, OffsetSide::Inward)?;
    let holes = config
        .face
        .holes()
        .iter()
        .map(|h| offset_polygon(h, b, OffsetSide::Outward))
        .collect::<Result<Vec<_>, _>>()?;
    let obstacles = config
        .obstacles
        .iter()
        .map(|o| offset_polygon(o, b, OffsetSide::Outward))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((FaceWithHoles::new(outer, holes)?, obstacles))
}

/// Builds the navigation graph selected by `graph_mode`.
pub fn build_graph(config: &ScenarioConfig) -> Result<NavGraph, EngineError> {
    let (face, obstacles) = navigable_face(config)?;
    for v in &config.nav_points {
        if !point_in_face(v.position, &face).is_walkable() {
            return Err(NavError::PointOutsideFace(v.id).into());
        }
    }
    let graph = match config.graph_mode {
        GraphMode::Visibility => {
            let g = build_visibility_graph(&face, &config.nav_points, config.pair_tolerance)?;
            prune_edges(&g, &config.barriers, &obstacles)?
        }
        GraphMode::PrunedDelaunay => {
            let g = build_pruned_delaunay_graph(&config.nav_points, &config.barriers, &obstacles)?;
            // Concave floors and holes are not obstacles to the triangulation.
            retain_valid_edges(&g, &face)?
        }
    };
    Ok(graph)
}

/// Explicit schedules with the seeded random visits spliced in, in agent order.
pub fn effective_schedules(config: &ScenarioConfig) -> Result<Vec<Schedule>, EngineError> {
    let plans = generate_random_visits(&config.random_visits, config.seed)?;
    let mut out: Vec<Schedule> = config.agents.iter().map(|a| a.schedule.clone()).collect();
    for (spec, plans) in config.random_visits.iter().zip(&plans) {
        for (slot, agent) in out.iter_mut().zip(&config.agents) {
            if let Some(plan) = plans.get(&agent.id) {
                *slot = splice_visits(slot, plan, spec);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentFrame {
    pub id: u32,
    pub position: Point2,
    pub status: InfectionStatus,
    pub activity: Activity,
    pub risk: f64,
    pub departed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameRecord {
    pub step: u64,
    pub t: f64,
    pub agents: Vec<AgentFrame>,
    /// Row-major concentrations, row 0 at minimum y.
    pub field: Vec<f64>,
    pub average_risk: f64,
    /// Agents newly infected during the run.
    pub infected_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentSummary {
    pub id: u32,
    pub initial_status: InfectionStatus,
    pub final_status: InfectionStatus,
    pub cumulative_dose: f64,
    pub risk: f64,
}

/// Running quanta totals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MassAccounting {
    pub emitted: f64,
    /// Lost to deactivation and ventilation.
    pub decayed: f64,
    /// Removed by breathing; zero unless the inhalation sink is enabled.
    pub inhaled: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridInfo {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub origin: Point2,
    pub mask: Vec<CellKind>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub frames: Vec<FrameRecord>,
    pub agents: Vec<AgentSummary>,
    pub accounting: MassAccounting,
    pub final_mass: f64,
    pub grid: GridInfo,
    pub graph: NavGraph,
    pub warnings: Vec<String>,
}

impl SimulationResult {
    pub fn final_infected(&self) -> usize {
        self.frames.last().map_or(0, |f| f.infected_count)
    }
}

/// A prepared run that can be stepped by hand.
#[derive(Debug)]
pub struct Simulation {
    config: ScenarioConfig,
    router: Router,
    agents: Vec<Agent>,
    resolved: Vec<Vec<usize>>,
    positions: Vec<Point2>,
    activities: Vec<Activity>,
    doses: Vec<DoseState>,
    initial_status: Vec<InfectionStatus>,
    field: GridField,
    substeps: usize,
    step: u64,
    accounting: MassAccounting,
    warnings: Vec<String>,
}

impl Simulation {
    pub fn new(config: ScenarioConfig) -> Result<Self, EngineError> {
        let mut warnings = config.validate()?;
        let graph = build_graph(&config)?;
        let schedules = effective_schedules(&config)?;
        let mut router = Router::new(graph);

        let mut agents = Vec::with_capacity(config.agents.len());
        let mut resolved = Vec::with_capacity(config.agents.len());
        for (spec, schedule) in config.agents.iter().zip(schedules) {
            let wrap = |source| EngineError::Schedule {
                agent: spec.id,
                source,
            };
            let ids =
                validate_schedule(&schedule, router.graph(), config.snap_radius).map_err(wrap)?;
            for w in ids.windows(2) {
                router.path(w[0], w[1]).map_err(|e| wrap(e.into()))?;
            }
            let mut agent = Agent::new(
                spec.id,
                spec.walking_speed,
                spec.status,
                spec.superspreader,
                spec.mask,
                schedule,
            )
            .map_err(wrap)?;
            agent.display = spec.display;
            agents.push(agent);
            resolved.push(ids);
        }

        let mut field = GridField::covering(&config.face, config.grid.h, config.grid.height)?;
        field.apply_barriers(&config.barriers);
        if !agents
            .iter()
            .any(|a| a.status == InfectionStatus::Susceptible)
        {
            warnings.push("no susceptible agents; average risk is reported as 0".into());
        }

        let t0 = config.t_start;
        let mut positions = Vec::with_capacity(agents.len());
        let mut activities = Vec::with_capacity(agents.len());
        for (agent, ids) in agents.iter_mut().zip(&resolved) {
            let adv = advance_agent(agent, t0, &mut router, ids)?;
            agent.movement = adv.movement;
            positions.push(adv.position);
            activities.push(adv.activity);
        }
        let doses = agents.iter().map(DoseState::new).collect();
        let initial_status = agents.iter().map(|a| a.status).collect();
        let substeps = config.substeps();
        Ok(Simulation {
            config,
            router,
            agents,
            resolved,
            positions,
            activities,
            doses,
            initial_status,
            field,
            substeps,
            step: 0,
            accounting: MassAccounting::default(),
            warnings,
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn graph(&self) -> &NavGraph {
        self.router.graph()
    }

    pub fn field(&self) -> &GridField {
        &self.field
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn doses(&self) -> &[DoseState] {
        &self.doses
    }

    pub fn positions(&self) -> &[Point2] {
        &self.positions
    }

    pub fn accounting(&self) -> MassAccounting {
        self.accounting
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn step_index(&self) -> u64 {
        self.step
    }

    pub fn time(&self) -> f64 {
        self.config.time_at(self.step)
    }

    pub fn is_finished(&self) -> bool {
        self.step >= self.config.step_count()
    }

    fn present(&self, k: usize) -> bool {
        !matches!(self.agents[k].movement, MovementState::Departed)
    }

    /// Advances one agent step.
    pub fn step(&mut self) -> Result<(), EngineError> {
        let now = self.config.time_at(self.step + 1);
        let dt = self.config.dt;
        let params = &self.config.physics;

        for k in 0..self.agents.len() {
            let adv = advance_agent(&self.agents[k], now, &mut self.router, &self.resolved[k])?;
            self.agents[k].movement = adv.movement;
            self.positions[k] = adv.position;
            self.activities[k] = adv.activity;
        }

        // Source cells and rates stay fixed across the sub-steps.
        let mut sources = Vec::new();
        for k in 0..self.agents.len() {
            if self.agents[k].status != InfectionStatus::Infectious || !self.present(k) {
                continue;
            }
            let rate = emission_rate(&self.agents[k], self.activities[k], params)
                .expect("status checked above");
            if rate == 0.0 {
                continue;
            }
            let p = self.positions[k];
            let cell = match self.field.cell_of(p) {
                Some((i, j)) if self.field.is_open(i, j) => (i, j),
                _ => self.field.nearest_open_cell(p),
            };
            sources.push((cell, rate));
        }
        let sub_dt = dt / self.substeps as f64;
        for _ in 0..self.substeps {
            for &((i, j), rate) in &sources {
                deposit_into_cell(&mut self.field, i, j, rate * sub_dt);
                self.accounting.emitted += rate * sub_dt;
            }
            let before = self.field.mass();
            step_field(&mut self.field, params, sub_dt)?;
            self.accounting.decayed += before - self.field.mass();
        }

        for k in 0..self.agents.len() {
            if self.agents[k].status == InfectionStatus::Infectious || !self.present(k) {
                continue;
            }
            let p = self.positions[k];
            let c = match sample_field(&self.field, p) {
                Ok(c) => c,
                Err(AerosolError::OutOfBounds(_)) => {
                    let (i, j) = self.field.nearest_open_cell(p);
                    self.field.value(i, j)
                }
                Err(e) => return Err(e.into()),
            };
            inhale(
                &mut self.doses[k],
                &self.agents[k],
                self.activities[k],
                c,
                params,
                dt,
            );
            update_status(&self.doses[k], &mut self.agents[k], params);
            if params.inhalation_sink {
                let breathed = params.breathing.get(self.activities[k]) * c * dt;
                self.accounting.inhaled += withdraw(&mut self.field, p, breathed);
            }
        }
        self.step += 1;
        Ok(())
    }

    pub fn average_risk(&self) -> f64 {
        average_risk(&self.doses).unwrap_or(0.0)
    }

    pub fn infected_count(&self) -> usize {
        self.agents
            .iter()
            .filter(|a| a.status == InfectionStatus::Infected)
            .count()
    }

    pub fn frame(&self) -> FrameRecord {
        let agents = (0..self.agents.len())
            .map(|k| AgentFrame {
                id: self.agents[k].id,
                position: self.positions[k],
                status: self.agents[k].status,
                activity: self.activities[k],
                risk: self.doses[k].risk,
                departed: !self.present(k),
            })
            .collect();
        FrameRecord {
            step: self.step,
            t: self.time(),
            agents,
            field: self.field.concentrations().to_vec(),
            average_risk: self.average_risk(),
            infected_count: self.infected_count(),
        }
    }

    /// Runs to `t_end`, calling `on_frame` at the output cadence.
    pub fn run_with(
        mut self,
        mut on_frame: impl FnMut(&FrameRecord),
    ) -> Result<SimulationResult, EngineError> {
        let every = self.config.output.frame_every;
        let last = self.config.step_count();
        let mut frames = Vec::new();
        let mut record = |sim: &Simulation, frames: &mut Vec<FrameRecord>| {
            let f = sim.frame();
            on_frame(&f);
            frames.push(f);
        };
        record(&self, &mut frames);
        while !self.is_finished() {
            self.step()?;
            if self.step.is_multiple_of(every) || self.step == last {
                record(&self, &mut frames);
            }
        }
        let agents = (0..self.agents.len())
            .map(|k| AgentSummary {
                id: self.agents[k].id,
                initial_status: self.initial_status[k],
                final_status: self.agents[k].status,
                cumulative_dose: self.doses[k].cumulative_dose,
                risk: self.doses[k].risk,
            })
            .collect();
        let grid = GridInfo {
            nx: self.field.nx(),
            ny: self.field.ny(),
            h: self.field.h(),
            origin: self.field.origin(),
            mask: self.field.mask().to_vec(),
        };
        Ok(SimulationResult {
            frames,
            agents,
            accounting: self.accounting,
            final_mass: self.field.mass(),
            grid,
            graph: self.router.graph().clone(),
            warnings: self.warnings,
        })
    }
}

/// Builds and runs a scenario from start to end.
pub fn run_simulation(config: ScenarioConfig) -> Result<SimulationResult, EngineError> {
    Simulation::new(config)?.run_with(|_| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::navgraph::VertexTag;
    use crate::schedule::Event;

    fn room_config(statuses: &[InfectionStatus]) -> ScenarioConfig {
        let face = FaceWithHoles::without_holes(Polygon::rect(0.0, 0.0, 5.0, 4.0).unwrap());
        let nav_points = vec![
            NavVertex::new(0, Point2::new(1.25, 1.25), VertexTag::Desk),
            NavVertex::new(1, Point2::new(3.75, 2.75), VertexTag::Desk),
            NavVertex::new(2, Point2::new(3.75, 1.25), VertexTag::Desk),
        ];
        let agents = statuses
            .iter()
            .enumerate()
            .map(|(k, &status)| AgentSpec {
                id: k as u32,
                walking_speed: 1.5,
                status,
                superspreader: false,
                mask: MaskType::NoMask,
                schedule: Schedule::new(
                    vec![
                        Event::new(nav_points[k % 3].position, 0.0, Activity::Resting),
                        Event::new(nav_points[(k + 1) % 3].position, 600.0, Activity::Talking),
                    ],
                    1200.0,
                ),
                display: Display::default(),
            })
            .collect();
        ScenarioConfig {
            seed: 7,
            t_start: 0.0,
            t_end: 1500.0,
            dt: 1.0,
            graph_mode: GraphMode::Visibility,
            buffer_distance: 0.0,
            pair_tolerance: MIN_SEGMENT_LEN,
            snap_radius: 0.5,
            max_substeps: 1000,
            grid: GridSpec {
                h: 0.5,
                height: 3.0,
            },
            output: OutputSpec {
                frame_every: 100,
                pgm: false,
            },
            physics: PhysicsParams::default(),
            face,
            barriers: vec![],
            obstacles: vec![],
            zones: vec![],
            nav_points,
            agents,
            random_visits: vec![],
        }
    }

    #[test]
    fn no_source_means_no_risk() {
        let cfg = room_config(&[InfectionStatus::Susceptible, InfectionStatus::Susceptible]);
        let r = run_simulation(cfg).unwrap();
        assert!(r.frames.iter().all(|f| f.average_risk == 0.0));
        assert!(r.frames.iter().all(|f| f.field.iter().all(|&c| c == 0.0)));
    }

    #[test]
    fn risk_is_monotone_and_agents_depart() {
        let cfg = room_config(&[
            InfectionStatus::Infectious,
            InfectionStatus::Susceptible,
            InfectionStatus::Susceptible,
        ]);
        let r = run_simulation(cfg).unwrap();
        assert_eq!(r.frames.first().unwrap().average_risk, 0.0);
        for w in r.frames.windows(2) {
            assert!(w[0].average_risk <= w[1].average_risk);
        }
        assert!(r.frames.last().unwrap().average_risk > 0.0);
        assert!(r.frames.last().unwrap().agents.iter().all(|a| a.departed));
        assert_eq!(r.frames.last().unwrap().t, 1500.0);
    }

    #[test]
    fn identical_runs_match() {
        let cfg = room_config(&[InfectionStatus::Infectious, InfectionStatus::Susceptible]);
        assert_eq!(
            run_simulation(cfg.clone()).unwrap(),
            run_simulation(cfg).unwrap()
        );
    }

    #[test]
    fn sealed_bookkeeping_balances() {
        let mut cfg = room_config(&[InfectionStatus::Infectious, InfectionStatus::Susceptible]);
        cfg.physics.inhalation_sink = true;
        cfg.physics.breathing = crate::aerosol::ActivityTable::uniform(0.01);
        let r = run_simulation(cfg).unwrap();
        let a = r.accounting;
        assert!(a.emitted > 0.0 && a.inhaled > 0.0 && a.decayed > 0.0);
        let rel = (a.emitted - (r.final_mass + a.decayed + a.inhaled)).abs() / a.emitted;
        assert!(rel < 1e-3, "imbalance {rel}");
    }

    #[test]
    fn config_errors() {
        let mut cfg = room_config(&[InfectionStatus::Susceptible]);
        cfg.dt = 0.0;
        assert!(matches!(cfg.validate(), Err(EngineError::InvalidConfig(_))));

        let mut cfg = room_config(&[InfectionStatus::Susceptible]);
        cfg.physics.diffusion = 100.0;
        cfg.max_substeps = 10;
        assert!(matches!(
            cfg.validate(),
            Err(EngineError::UnstableConfig { .. })
        ));

        let mut cfg = room_config(&[InfectionStatus::Susceptible]);
        cfg.agents[0].schedule.events[1].location = Point2::new(2.5, 3.9);
        assert!(matches!(
            Simulation::new(cfg),
            Err(EngineError::Schedule {
                agent: 0,
                source: ScheduleError::NoVertexInRange { index: 1, .. }
            })
        ));
    }
}
