//! Deterministic indoor airborne-infection simulation.
//!
//! A floor plan is turned into a navigation graph, agents follow gap-free
//! daily schedules along shortest paths, infectious agents feed a masked 2D
//! reaction-diffusion aerosol field, and every other agent accumulates an
//! inhaled dose that maps to an infection probability through the
//! exponential Wells-Riley dose-response.

pub mod aerosol;
pub mod case_study;
pub mod cli;
pub mod engine;
pub mod geom;
pub mod io;
pub mod navgraph;
pub mod risk;
pub mod schedule;
