//! Hazard-rate kernels, step-response functions, and the police-presence
//! rule. Everything here is a pure function of its inputs; the steppers and
//! sweep engines are built on top.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_nonneg, Result};

/// All-or-nothing response: zero below a threshold, a constant intensity at
/// (or strictly above, when `inclusive` is false) the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepFn {
    pub threshold: f64,
    pub intensity: f64,
    /// Whether the threshold value itself activates the response.
    pub inclusive: bool,
}

impl StepFn {
    pub fn new(threshold: f64, intensity: f64, inclusive: bool) -> Self {
        StepFn {
            threshold,
            intensity,
            inclusive,
        }
    }

    /// Evaluates the step response at `x`. Total: never fails, returns
    /// either 0 or `intensity`.
    pub fn eval(&self, x: f64) -> f64 {
        let active = if self.inclusive {
            x >= self.threshold
        } else {
            x > self.threshold
        };
        if active {
            self.intensity
        } else {
            0.0
        }
    }
}

/// Rate and threshold constants of the interaction model.
///
/// The crowd response `f1` (tension -> agitator aggression) and the police
/// response `f2` (protester aggression count -> police aggression) activate
/// at their threshold value; the conversion response `f3` activates strictly
/// above its threshold. The three `*_inclusive` flags expose those defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Agitator aggression intensity.
    #[serde(rename = "T1")]
    pub t1: f64,
    /// Police aggression intensity.
    #[serde(rename = "T2")]
    pub t2: f64,
    /// Moderate-to-agitator conversion intensity.
    #[serde(rename = "T3")]
    pub t3: f64,
    /// Critical tension for agitator aggression.
    pub tau_c: f64,
    /// Critical protester aggression count for police engagement.
    pub v_c: f64,
    /// Critical tension for moderate-to-agitator conversion.
    pub tau_f3: f64,
    /// Tension increase per act of aggression.
    pub theta: f64,
    /// Tension decay rate.
    pub omega: f64,
    /// Protester exit rate.
    pub epsilon: f64,
    #[serde(default = "default_true")]
    pub f1_inclusive: bool,
    #[serde(default = "default_true")]
    pub f2_inclusive: bool,
    #[serde(default)]
    pub f3_inclusive: bool,
}

fn default_true() -> bool {
    true
}

impl ModelParams {
    /// Tension response of agitators.
    pub fn f1(&self) -> StepFn {
        StepFn::new(self.tau_c, self.t1, self.f1_inclusive)
    }

    /// Response of police to cumulative protester aggression.
    pub fn f2(&self) -> StepFn {
        StepFn::new(self.v_c, self.t2, self.f2_inclusive)
    }

    /// Tension response gating moderate-to-agitator conversion.
    pub fn f3(&self) -> StepFn {
        StepFn::new(self.tau_f3, self.t3, self.f3_inclusive)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_nonneg("params.T1", self.t1)?;
        ensure_nonneg("params.T2", self.t2)?;
        ensure_nonneg("params.T3", self.t3)?;
        ensure_nonneg("params.tau_c", self.tau_c)?;
        ensure_nonneg("params.v_c", self.v_c)?;
        ensure_nonneg("params.tau_f3", self.tau_f3)?;
        ensure_nonneg("params.theta", self.theta)?;
        ensure_nonneg("params.omega", self.omega)?;
        ensure_nonneg("params.epsilon", self.epsilon)?;
        Ok(())
    }
}

/// The five dynamic quantities plus simulation time.
///
/// `v1` and `v2` are cumulative counts and nondecreasing along any
/// trajectory; `u1 + u2` is nonincreasing (no new protesters arrive).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    /// Simulation time.
    pub t: f64,
    /// Cumulative acts of aggression by protesters.
    pub v1: f64,
    /// Cumulative acts of aggression by police.
    pub v2: f64,
    /// Agitator count.
    pub u1: f64,
    /// Moderate count.
    pub u2: f64,
    /// Social tension.
    pub tau: f64,
}

impl State {
    pub fn new(t: f64, v1: f64, v2: f64, u1: f64, u2: f64, tau: f64) -> Self {
        State {
            t,
            v1,
            v2,
            u1,
            u2,
            tau,
        }
    }

    /// Total protesters still present.
    pub fn protesters(&self) -> f64 {
        self.u1 + self.u2
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite()
            && self.v1.is_finite()
            && self.v2.is_finite()
            && self.u1.is_finite()
            && self.u2.is_finite()
            && self.tau.is_finite()
    }

    pub fn validate(&self) -> Result<()> {
        ensure_nonneg("initial.t", self.t)?;
        ensure_nonneg("initial.v1", self.v1)?;
        ensure_nonneg("initial.v2", self.v2)?;
        ensure_nonneg("initial.u1", self.u1)?;
        ensure_nonneg("initial.u2", self.u2)?;
        ensure_nonneg("initial.tau", self.tau)?;
        Ok(())
    }
}

/// Police deployment: `p0` officers from `t_enter` on, withdrawn once the
/// crowd has shrunk to `min_protesters` or fewer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoliceSchedule {
    pub p0: f64,
    #[serde(default)]
    pub t_enter: f64,
    #[serde(default = "default_min_protesters")]
    pub min_protesters: f64,
}

fn default_min_protesters() -> f64 {
    1.0
}

impl PoliceSchedule {
    pub fn new(p0: f64, t_enter: f64) -> Self {
        PoliceSchedule {
            p0,
            t_enter,
            min_protesters: default_min_protesters(),
        }
    }

    /// Officers present at time `t` given the crowd state: `p0` once the
    /// entrance time has passed and while more than `min_protesters` remain,
    /// zero otherwise.
    pub fn presence(&self, t: f64, state: &State) -> f64 {
        if t >= self.t_enter && state.protesters() > self.min_protesters {
            self.p0
        } else {
            0.0
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_nonneg("schedule.p0", self.p0)?;
        ensure_nonneg("schedule.t_enter", self.t_enter)?;
        if !self.min_protesters.is_finite() {
            return Err(crate::error::Error::validation(
                "schedule.min_protesters",
                "must be finite",
            ));
        }
        Ok(())
    }
}

/// Instantaneous event rates for the three stochastic transitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hazards {
    /// Per-agitator aggression rate, deterrence-adjusted: f1(tau)/(p+1).
    pub agitator: f64,
    /// Per-officer aggression rate: f2(v1).
    pub police: f64,
    /// Per-moderate conversion rate: (v2/(v2+v1+1)) * f3(tau).
    pub conversion: f64,
}

/// Evaluates all three hazard rates at the given state and police count.
/// Denominators are at least 1, so the result is finite for every valid
/// state including the all-zero one.
pub fn hazards(state: &State, police: f64, params: &ModelParams) -> Hazards {
    let weight = state.v2 / (state.v2 + state.v1 + 1.0);
    Hazards {
        agitator: params.f1().eval(state.tau) / (police + 1.0),
        police: params.f2().eval(state.v1),
        conversion: weight * params.f3().eval(state.tau),
    }
}

/// Probability that at least one event occurs in an interval of length `dt`
/// under a constant hazard rate: 1 - exp(-lambda * dt).
pub fn prob_from_hazard(lambda: f64, dt: f64) -> f64 {
    -(-lambda * dt).exp_m1()
}
