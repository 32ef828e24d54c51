//! Dose accumulation and the exponential (Wells-Riley) infection risk.

use thiserror::Error;

use crate::aerosol::PhysicsParams;
use crate::schedule::{Activity, Agent, InfectionStatus};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RiskError {
    #[error("agent {0} is not infectious")]
    NotInfectious(u32),
    #[error("no initially susceptible agents")]
    NoSusceptibles,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoseState {
    pub agent_id: u32,
    /// Quanta.
    pub cumulative_dose: f64,
    pub risk: f64,
    pub initially_susceptible: bool,
}

impl DoseState {
    pub fn new(agent: &Agent) -> Self {
        DoseState {
            agent_id: agent.id,
            cumulative_dose: 0.0,
            risk: 0.0,
            initially_susceptible: agent.status == InfectionStatus::Susceptible,
        }
    }
}

/// `P = 1 - exp(-dose / d)`.
pub fn infection_probability(dose: f64, dose_threshold: f64) -> f64 {
    -(-dose / dose_threshold).exp_m1()
}

/// Adds `B · (1 - η_in) · C · dt` to the dose and refreshes the risk.
/// Infectious agents are left untouched.
pub fn inhale(
    state: &mut DoseState,
    agent: &Agent,
    activity: Activity,
    concentration: f64,
    params: &PhysicsParams,
    dt: f64,
) {
    if agent.status == InfectionStatus::Infectious {
        return;
    }
    let b = params.breathing.get(activity);
    let filter = 1.0 - params.mask_inhale.get(agent.mask);
    let delta = b * filter * concentration.max(0.0) * dt;
    state.cumulative_dose += delta;
    state.risk = infection_probability(state.cumulative_dose, params.dose_threshold);
}

/// Quanta per second shed by an infectious agent.
pub fn emission_rate(
    agent: &Agent,
    activity: Activity,
    params: &PhysicsParams,
) -> Result<f64, RiskError> {
    if agent.status != InfectionStatus::Infectious {
        return Err(RiskError::NotInfectious(agent.id));
    }
    let factor = if agent.superspreader {
        params.superspreader_factor
    } else {
        1.0
    };
    Ok(params.emission.get(activity) * (1.0 - params.mask_exhale.get(agent.mask)) * factor)
}

/// Susceptible agents whose dose reached `d` become Infected.
pub fn update_status(state: &DoseState, agent: &mut Agent, params: &PhysicsParams) {
    if agent.status == InfectionStatus::Susceptible
        && state.cumulative_dose >= params.dose_threshold
    {
        agent.status = InfectionStatus::Infected;
    }
}

/// Mean risk over the initially susceptible agents, summed in input order.
pub fn average_risk(states: &[DoseState]) -> Result<f64, RiskError> {
    let mut sum = 0.0;
    let mut n = 0usize;
    for s in states.iter().filter(|s| s.initially_susceptible) {
        sum += s.risk;
        n += 1;
    }
    if n == 0 {
        return Err(RiskError::NoSusceptibles);
    }
    Ok(sum / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point2;
    use crate::schedule::{Event, MaskType, Schedule};

    fn agent(status: InfectionStatus, mask: MaskType, superspreader: bool) -> Agent {
        let s = Schedule {
            events: vec![Event {
                location: Point2::new(0.0, 0.0),
                start: 0.0,
                activity: Activity::Resting,
            }],
            day_end: 10.0,
        };
        Agent::new(1, 1.5, status, superspreader, mask, s).unwrap()
    }

    #[test]
    fn inhale_direct_product() {
        let mut p = PhysicsParams::default();
        p.breathing.resting = 1e-4;
        p.mask_inhale.surgical = 0.5;
        let a = agent(InfectionStatus::Susceptible, MaskType::Surgical, false);
        let mut st = DoseState::new(&a);
        inhale(&mut st, &a, Activity::Resting, 2.0, &p, 1.0);
        assert!((st.cumulative_dose - 1e-4).abs() < 1e-18);
    }

    #[test]
    fn zero_exposure_gives_zero_risk() {
        let p = PhysicsParams::default();
        let a = agent(InfectionStatus::Susceptible, MaskType::NoMask, false);
        let mut st = DoseState::new(&a);
        for _ in 0..100 {
            inhale(&mut st, &a, Activity::Walking, 0.0, &p, 1.0);
        }
        assert_eq!(st.cumulative_dose, 0.0);
        assert_eq!(st.risk, 0.0);
    }

    #[test]
    fn constant_exposure_closed_form() {
        let p = PhysicsParams {
            dose_threshold: 0.7,
            ..PhysicsParams::default()
        };
        let a = agent(InfectionStatus::Susceptible, MaskType::Cotton, false);
        let mut st = DoseState::new(&a);
        let (c0, dt, n) = (3.0, 0.5, 2000);
        for _ in 0..n {
            inhale(&mut st, &a, Activity::Talking, c0, &p, dt);
        }
        let dose = p.breathing.talking * (1.0 - p.mask_inhale.cotton) * c0 * dt * n as f64;
        assert!((st.cumulative_dose - dose).abs() <= 1e-12 * dose);
        assert!((st.risk - (1.0 - (-dose / 0.7).exp())).abs() < 1e-12);
    }

    #[test]
    fn emission_factors() {
        let p = PhysicsParams::default();
        let a = agent(InfectionStatus::Infectious, MaskType::NoMask, false);
        assert_eq!(
            emission_rate(&a, Activity::Resting, &p).unwrap(),
            p.emission.resting
        );

        let mut q = p.clone();
        q.mask_exhale.n95 = 1.0;
        let masked = agent(InfectionStatus::Infectious, MaskType::N95, false);
        assert_eq!(emission_rate(&masked, Activity::Talking, &q).unwrap(), 0.0);

        let ss = agent(InfectionStatus::Infectious, MaskType::NoMask, true);
        assert_eq!(
            emission_rate(&ss, Activity::Walking, &p).unwrap(),
            10.0 * p.emission.walking
        );

        let sus = agent(InfectionStatus::Susceptible, MaskType::NoMask, false);
        assert_eq!(
            emission_rate(&sus, Activity::Resting, &p),
            Err(RiskError::NotInfectious(1))
        );
    }

    #[test]
    fn status_threshold() {
        let p = PhysicsParams::default();
        let mut a = agent(InfectionStatus::Susceptible, MaskType::NoMask, false);
        let mut st = DoseState::new(&a);
        st.cumulative_dose = p.dose_threshold - 1e-12;
        update_status(&st, &mut a, &p);
        assert_eq!(a.status, InfectionStatus::Susceptible);

        st.cumulative_dose = p.dose_threshold;
        st.risk = infection_probability(st.cumulative_dose, p.dose_threshold);
        update_status(&st, &mut a, &p);
        assert_eq!(a.status, InfectionStatus::Infected);
        assert!((st.risk - 0.632_120_558_828_557_7).abs() < 1e-15);

        st.cumulative_dose *= 3.0;
        update_status(&st, &mut a, &p);
        assert_eq!(a.status, InfectionStatus::Infected);
        assert!(emission_rate(&a, Activity::Resting, &p).is_err());
    }

    #[test]
    fn average_examples() {
        let mk = |id, risk, sus| DoseState {
            agent_id: id,
            cumulative_dose: 0.0,
            risk,
            initially_susceptible: sus,
        };
        assert_eq!(
            average_risk(&[mk(0, 0.0, true), mk(1, 0.0, true)]).unwrap(),
            0.0
        );
        let avg = average_risk(&[mk(0, 0.2, true), mk(1, 0.4, true), mk(2, 0.9, false)]).unwrap();
        assert!((avg - 0.3).abs() < 1e-15);
        assert_eq!(
            average_risk(&[mk(0, 0.5, false)]),
            Err(RiskError::NoSusceptibles)
        );

        let states: Vec<_> = (0..60).map(|i| mk(i, 1.0, i % 10 != 0)).collect();
        assert_eq!(
            states.iter().filter(|s| s.initially_susceptible).count(),
            54
        );
        assert_eq!(average_risk(&states).unwrap(), 1.0);
    }
}
