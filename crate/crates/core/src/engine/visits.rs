//! Seeded random office visits, spliced into explicit schedules.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::rng::{range_inclusive, seeded};
use super::EngineError;
use crate::geom::Point2;
use crate::schedule::{Activity, Event, Schedule};

/// Each visitor makes `min_count..=max_count` back-to-back visits to
/// distinct destinations, staying `min_stay..=max_stay` whole seconds at
/// each, starting at `window_start`. Afterwards the visitor returns to
/// wherever it was when the window opened.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomVisitSpec {
    pub visitors: Vec<u32>,
    pub min_count: u32,
    pub max_count: u32,
    pub min_stay: u32,
    pub max_stay: u32,
    pub destinations: Vec<Point2>,
    pub activity: Activity,
    pub window_start: f64,
    pub window_end: f64,
}

impl RandomVisitSpec {
    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |m: String| Err(EngineError::InvalidVisitSpec(m));
        if self.min_count > self.max_count {
            return bad(format!(
                "min_count {} > max_count {}",
                self.min_count, self.max_count
            ));
        }
        if self.min_stay > self.max_stay {
            return bad(format!(
                "min_stay {} > max_stay {}",
                self.min_stay, self.max_stay
            ));
        }
        if self.destinations.is_empty() {
            return bad("no candidate destinations".into());
        }
        if self.max_count as usize > self.destinations.len() {
            return bad(format!(
                "max_count {} exceeds the {} distinct destinations",
                self.max_count,
                self.destinations.len()
            ));
        }
        if self.window_start.partial_cmp(&self.window_end) != Some(std::cmp::Ordering::Less) {
            return bad(format!(
                "window [{}, {}) is empty",
                self.window_start, self.window_end
            ));
        }
        Ok(())
    }
}

/// The visits of one visitor under one spec.
#[derive(Debug, Clone, PartialEq)]
pub struct VisitPlan {
    pub events: Vec<Event>,
    /// When the last stay ends.
    pub end: f64,
}

/// Visits drawn for each spec (same order as `specs`), keyed by agent id.
///
/// One generator seeded with `seed` is shared by all specs, which are
/// processed in order, visitors in listed order. Per visitor the draws are:
/// the count, then the destinations (partial Fisher-Yates), then the stays.
pub fn generate_random_visits(
    specs: &[RandomVisitSpec],
    seed: u64,
) -> Result<Vec<BTreeMap<u32, VisitPlan>>, EngineError> {
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(specs.len());
    for spec in specs {
        spec.validate()?;
        let window = spec.window_end - spec.window_start;
        let mut plans = BTreeMap::new();
        for &visitor in &spec.visitors {
            let count =
                range_inclusive(&mut rng, spec.min_count as u64, spec.max_count as u64) as usize;
            let mut order: Vec<usize> = (0..spec.destinations.len()).collect();
            for k in 0..count {
                let j = range_inclusive(&mut rng, k as u64, (order.len() - 1) as u64) as usize;
                order.swap(k, j);
            }
            let stays: Vec<u64> = (0..count)
                .map(|_| range_inclusive(&mut rng, spec.min_stay as u64, spec.max_stay as u64))
                .collect();
            let total: u64 = stays.iter().sum();
            if total as f64 >= window {
                return Err(EngineError::WindowTooSmall {
                    visitor,
                    needed: total as f64,
                    available: window,
                });
            }
            let mut t = spec.window_start;
            let mut events = Vec::with_capacity(count);
            for (k, stay) in stays.iter().enumerate() {
                events.push(Event::new(spec.destinations[order[k]], t, spec.activity));
                t += *stay as f64;
            }
            plans.insert(visitor, VisitPlan { events, end: t });
        }
        out.push(plans);
    }
    Ok(out)
}

/// Replaces the explicit events inside the visit window with the planned
/// visits, followed by a return to the event active when the window opened.
pub fn splice_visits(schedule: &Schedule, plan: &VisitPlan, spec: &RandomVisitSpec) -> Schedule {
    if plan.events.is_empty() {
        return schedule.clone();
    }
    let ws = spec.window_start;
    let we = spec.window_end;
    let home = schedule.events.iter().rfind(|e| e.start <= ws).copied();
    let mut events: Vec<Event> = schedule
        .events
        .iter()
        .filter(|e| e.start < ws)
        .copied()
        .collect();
    events.extend_from_slice(&plan.events);
    if let Some(h) = home {
        events.push(Event::new(h.location, plan.end, h.activity));
    }
    events.extend(schedule.events.iter().filter(|e| e.start >= we).copied());
    Schedule::new(events, schedule.day_end)
}
