//! Discrete-time evolutionary-game stepper: per-interval expected-value
//! updates of the aggression counts, crowd compartments, and tension, plus
//! full protest runs with termination detection.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::model::{hazards, prob_from_hazard, ModelParams, PoliceSchedule, State};

/// Step sizes and output controls shared by the discrete stepper (`dt`) and
/// the continuum integrator (`h`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverSettings {
    /// Discrete-game step.
    pub dt: f64,
    /// Continuum integrator step.
    pub h: f64,
    /// Simulation horizon.
    pub t_max: f64,
    /// Record every n-th step (first and last are always kept).
    pub record_every: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            dt: 0.1,
            h: 0.01,
            t_max: 2000.0,
            record_every: 100,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("settings.dt", self.dt)?;
        ensure_positive("settings.h", self.h)?;
        ensure_positive("settings.t_max", self.t_max)?;
        if self.record_every == 0 {
            return Err(Error::validation("settings.record_every", "must be positive"));
        }
        Ok(())
    }
}

/// A fully specified run: initial state, model constants, police deployment,
/// and solver settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub initial: State,
    pub params: ModelParams,
    pub schedule: PoliceSchedule,
    pub settings: SolverSettings,
    pub label: String,
}

impl Scenario {
    /// Total protesters at the start of the run.
    pub fn total_protesters(&self) -> f64 {
        self.initial.protesters()
    }

    pub fn validate(&self) -> Result<()> {
        self.initial.validate()?;
        if self.initial.t != 0.0 {
            return Err(Error::validation("initial.t", "must be 0"));
        }
        self.params.validate()?;
        self.schedule.validate()?;
        self.settings.validate()
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    /// Fewer than one protester remained.
    ProtestersDepleted,
    /// The horizon `t_max` was reached first.
    HorizonReached,
}

/// Time-ordered states recorded from a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<State>,
    pub terminated_by: TerminationReason,
}

impl Trajectory {
    pub fn initial(&self) -> &State {
        self.samples.first().expect("trajectory has samples")
    }

    pub fn last(&self) -> &State {
        self.samples.last().expect("trajectory has samples")
    }
}

/// Thinning recorder: keeps every `every`-th step plus the final state.
pub(crate) struct Recorder {
    every: usize,
    samples: Vec<State>,
    last_recorded: Option<usize>,
}

impl Recorder {
    pub(crate) fn new(every: usize) -> Self {
        Recorder {
            every,
            samples: Vec::new(),
            last_recorded: None,
        }
    }

    pub(crate) fn record(&mut self, state: &State, step: usize) {
        if step.is_multiple_of(self.every) {
            self.samples.push(*state);
            self.last_recorded = Some(step);
        }
    }

    pub(crate) fn finish(mut self, state: &State, step: usize) -> Vec<State> {
        if self.last_recorded != Some(step) {
            self.samples.push(*state);
        }
        self.samples
    }
}

/// Number of steps of size `step` needed to reach `t_max`, robust to the
/// quotient landing a rounding error above an integer.
pub(crate) fn steps_to_horizon(t_max: f64, step: f64) -> usize {
    (t_max / step - 1e-9).ceil().max(0.0) as usize
}

/// Advances the state by one interval of length `dt`.
///
/// All transition probabilities are evaluated at the pre-step state
/// (synchronous update); the recorded aggression increments feed the tension
/// update of the same step. Compartments are clamped at zero. Errors with a
/// step-size violation when any per-step loss fraction exceeds one, which
/// means `dt` is too large for the given rates.
pub fn step_discrete(
    state: &State,
    params: &ModelParams,
    schedule: &PoliceSchedule,
    dt: f64,
) -> Result<State> {
    let police = schedule.presence(state.t, state);
    let hz = hazards(state, police, params);
    let prob_act = prob_from_hazard(hz.agitator, dt);
    let prob_engage = prob_from_hazard(hz.police, dt);
    let prob_convert = prob_from_hazard(hz.conversion, dt);

    let exit = params.epsilon * dt;
    let losses = [
        ("agitator", prob_act + exit),
        ("moderate", prob_convert + exit),
        ("tension", params.omega * dt),
    ];
    for (quantity, fraction) in losses {
        if fraction > 1.0 {
            return Err(Error::StepSizeViolation {
                quantity,
                fraction,
                dt,
            });
        }
    }

    let dv1 = state.u1 * prob_act;
    let dv2 = police * prob_engage;
    let converted = state.u2 * prob_convert;

    Ok(State {
        t: state.t + dt,
        v1: state.v1 + dv1,
        v2: state.v2 + dv2,
        u1: (state.u1 + converted - state.u1 * (prob_act + exit)).max(0.0),
        u2: (state.u2 - state.u2 * (prob_convert + exit)).max(0.0),
        tau: (state.tau + params.theta * (dv1 + dv2) - params.omega * state.tau * dt).max(0.0),
    })
}

/// Runs the discrete game from the scenario's initial state until fewer than
/// one protester remains or the horizon is reached.
pub fn run_discrete(scenario: &Scenario) -> Result<Trajectory> {
    scenario.validate()?;
    let settings = &scenario.settings;
    let max_steps = steps_to_horizon(settings.t_max, settings.dt);

    let mut recorder = Recorder::new(settings.record_every);
    let mut state = scenario.initial;
    let mut step = 0;
    recorder.record(&state, step);

    let reason = loop {
        if state.protesters() < 1.0 {
            break TerminationReason::ProtestersDepleted;
        }
        if step >= max_steps {
            break TerminationReason::HorizonReached;
        }
        state = step_discrete(&state, &scenario.params, &scenario.schedule, settings.dt)?;
        step += 1;
        // Pin time to the step index so recorded times are exact multiples.
        state.t = scenario.initial.t + step as f64 * settings.dt;
        recorder.record(&state, step);
    };

    Ok(Trajectory {
        samples: recorder.finish(&state, step),
        terminated_by: reason,
    })
}

/// Whether the initial state and final state of a run describe a productive
/// protest: no aggression from either side and tension below its starting
/// value.
pub(crate) fn is_productive(initial: &State, last: &State) -> bool {
    last.v1 == 0.0 && last.v2 == 0.0 && last.tau < initial.tau
}

/// A protest is productive when it ends with zero acts of aggression on both
/// sides and tension strictly below its initial value.
pub fn classify_productive(trajectory: &Trajectory) -> bool {
    is_productive(trajectory.initial(), trajectory.last())
}
