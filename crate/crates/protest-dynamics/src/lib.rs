//! Deterministic simulator of police-protester interaction dynamics.
//!
//! The crowd splits into agitators and moderates. Agitators commit acts of
//! aggression once social tension passes a critical level, damped by police
//! presence; police engage once protester aggression passes their tolerance
//! threshold; moderates radicalize at a rate weighted by how unfair the
//! police response looks. Tension rises with every act and decays on its
//! own.
//!
//! Two equivalent engines evolve the system: a discrete-time
//! expected-value game ([`discrete`]) and its continuum limit integrated
//! with a classical fixed-step fourth-order scheme ([`ode`]). On top sit
//! Monte Carlo envelope and finite-difference sensitivity analyses
//! ([`sensitivity`]), 2D phase-diagram sweeps with named presets
//! ([`sweep`]), and scenario/CSV/SVG serialization ([`io`]).

pub mod cli;
pub mod discrete;
pub mod error;
pub mod io;
pub mod model;
pub mod ode;
pub mod sensitivity;
pub mod sweep;

pub use discrete::{
    classify_productive, run_discrete, step_discrete, Scenario, SolverSettings,
    TerminationReason, Trajectory,
};
pub use error::{Error, Result};
pub use model::{hazards, prob_from_hazard, Hazards, ModelParams, PoliceSchedule, State, StepFn};
pub use ode::{
    analytic_upper_bounds, integrate, predict_zero_aggression, rhs, AggressionForecast,
    StateDerivative,
};
pub use sensitivity::{
    global_envelopes, local_sensitivity, sample_params, EnvelopeStats, EnvelopeSummary,
    ParamRanges, SensitivityMatrix, SensitivityParam,
};
pub use sweep::{
    detect_phase_boundary, preset_scenario, run_sweep_2d, AxisSpec, AxisTarget, CellMetrics,
    Metric, SweepGrid, BOUNDARY_THRESHOLD, PRESET_IDS,
};
