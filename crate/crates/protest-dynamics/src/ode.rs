//! Continuum limit of the discrete game: the coupled five-component ODE
//! right-hand side, classical fixed-step fourth-order integration with stop
//! events, closed-form crowd-size bounds, and the zero/positive-aggression
//! predicates.

use crate::discrete::{steps_to_horizon, Recorder, Scenario, TerminationReason, Trajectory};
use crate::error::{Error, Result};
use crate::model::{hazards, ModelParams, State};

/// Instantaneous rates of change of the five dynamic quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDerivative {
    pub dv1: f64,
    pub dv2: f64,
    pub du1: f64,
    pub du2: f64,
    pub dtau: f64,
}

/// Right-hand side of the continuum system at the given state and police
/// count.
pub fn rhs(state: &State, police: f64, params: &ModelParams) -> StateDerivative {
    let hz = hazards(state, police, params);
    let protester_acts = state.u1 * hz.agitator;
    let police_acts = police * hz.police;
    StateDerivative {
        dv1: protester_acts,
        dv2: police_acts,
        du1: state.u2 * hz.conversion - state.u1 * (hz.agitator + params.epsilon),
        du2: -state.u2 * (hz.conversion + params.epsilon),
        dtau: params.theta * (protester_acts + police_acts) - params.omega * state.tau,
    }
}

fn advance(state: &State, d: &StateDerivative, h: f64) -> State {
    State {
        t: state.t + h,
        v1: state.v1 + h * d.dv1,
        v2: state.v2 + h * d.dv2,
        u1: state.u1 + h * d.du1,
        u2: state.u2 + h * d.du2,
        tau: state.tau + h * d.dtau,
    }
}

/// One classical fourth-order step with the police count held constant over
/// the step. Components are clamped at zero afterwards.
fn rk4_step(state: &State, police: f64, params: &ModelParams, h: f64) -> State {
    let k1 = rhs(state, police, params);
    let k2 = rhs(&advance(state, &k1, 0.5 * h), police, params);
    let k3 = rhs(&advance(state, &k2, 0.5 * h), police, params);
    let k4 = rhs(&advance(state, &k3, h), police, params);
    let sixth = h / 6.0;
    State {
        t: state.t + h,
        v1: (state.v1 + sixth * (k1.dv1 + 2.0 * k2.dv1 + 2.0 * k3.dv1 + k4.dv1)).max(0.0),
        v2: (state.v2 + sixth * (k1.dv2 + 2.0 * k2.dv2 + 2.0 * k3.dv2 + k4.dv2)).max(0.0),
        u1: (state.u1 + sixth * (k1.du1 + 2.0 * k2.du1 + 2.0 * k3.du1 + k4.du1)).max(0.0),
        u2: (state.u2 + sixth * (k1.du2 + 2.0 * k2.du2 + 2.0 * k3.du2 + k4.du2)).max(0.0),
        tau: (state.tau + sixth * (k1.dtau + 2.0 * k2.dtau + 2.0 * k3.dtau + k4.dtau)).max(0.0),
    }
}

/// Core integration loop. `observe` sees every step (including the initial
/// state) with its step index. Stops at the first state with fewer than one
/// protester or at the horizon.
pub(crate) fn integrate_observed<F>(
    scenario: &Scenario,
    validate: bool,
    mut observe: F,
) -> Result<(State, TerminationReason)>
where
    F: FnMut(&State, usize),
{
    if validate {
        scenario.validate()?;
    }
    let settings = &scenario.settings;
    let max_steps = steps_to_horizon(settings.t_max, settings.h);

    let mut state = scenario.initial;
    let mut step = 0;
    observe(&state, step);

    let reason = loop {
        if state.protesters() < 1.0 {
            break TerminationReason::ProtestersDepleted;
        }
        if step >= max_steps {
            break TerminationReason::HorizonReached;
        }
        let police = scenario.schedule.presence(state.t, &state);
        state = rk4_step(&state, police, &scenario.params, settings.h);
        step += 1;
        state.t = scenario.initial.t + step as f64 * settings.h;
        if !state.is_finite() {
            return Err(Error::NonFiniteState { t: state.t });
        }
        observe(&state, step);
    };
    Ok((state, reason))
}

/// Integrates the continuum system over the scenario, recording thinned
/// samples per the solver settings.
pub fn integrate(scenario: &Scenario) -> Result<Trajectory> {
    let mut recorder = Recorder::new(scenario.settings.record_every);
    let mut last_step = 0;
    let (state, reason) = integrate_observed(scenario, true, |s, step| {
        recorder.record(s, step);
        last_step = step;
    })?;
    Ok(Trajectory {
        samples: recorder.finish(&state, last_step),
        terminated_by: reason,
    })
}

/// Closed-form ceilings on the crowd compartments at time `t`:
/// the moderates decay at least exponentially at the exit rate, and the
/// agitators are bounded by the integrated conversion inflow on top of the
/// same decay. Returns `(u1_bound, u2_bound)`.
pub fn analytic_upper_bounds(t: f64, initial: &State, params: &ModelParams) -> (f64, f64) {
    let decay = (-params.epsilon * t).exp();
    let u1_bound = decay * (initial.u1 + params.t3 * initial.u2 * t);
    let u2_bound = initial.u2 * decay;
    (u1_bound, u2_bound)
}

/// A-priori classification of a scenario's aggression outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggressionForecast {
    /// Both aggression counts stay exactly zero for the whole run.
    ZeroGuaranteed,
    /// Protester aggression is positive for t > 0.
    PositiveGuaranteed,
    /// Neither guarantee applies.
    Indeterminate,
}

impl AggressionForecast {
    pub fn as_str(&self) -> &'static str {
        match self {
            AggressionForecast::ZeroGuaranteed => "zero_guaranteed",
            AggressionForecast::PositiveGuaranteed => "positive_guaranteed",
            AggressionForecast::Indeterminate => "indeterminate",
        }
    }
}

/// Predicts whether a scenario can produce any act of aggression.
///
/// With no aggression on record, tension never rises, so an initially
/// inactive crowd response stays inactive; and with no police response at
/// zero protester aggression the police count stays silent too. Either no
/// initial agitators or an inactive crowd response then closes the system.
/// Conversely an active crowd response with agitators present produces
/// protester aggression immediately.
pub fn predict_zero_aggression(scenario: &Scenario) -> AggressionForecast {
    let initial = &scenario.initial;
    let params = &scenario.params;
    let quiet_start = initial.v1 == 0.0 && initial.v2 == 0.0;
    let crowd_response_active = params.f1().eval(initial.tau) > 0.0;
    let police_response_silent = params.f2().eval(0.0) == 0.0;

    if quiet_start && police_response_silent && (!crowd_response_active || initial.u1 == 0.0) {
        AggressionForecast::ZeroGuaranteed
    } else if crowd_response_active && initial.u1 > 0.0 {
        AggressionForecast::PositiveGuaranteed
    } else {
        AggressionForecast::Indeterminate
    }
}
