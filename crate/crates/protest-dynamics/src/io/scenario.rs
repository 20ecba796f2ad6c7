//! TOML scenario documents.
//!
//! All model parameters must be spelled out explicitly so a document fully
//! determines its run; only solver settings (and the police schedule's
//! optional fields) carry defaults.

use serde::{Deserialize, Serialize};

use crate::discrete::{Scenario, SolverSettings};
use crate::error::{Error, Result};
use crate::model::{ModelParams, PoliceSchedule, State};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct InitialConditions {
    v1: f64,
    v2: f64,
    u1: f64,
    u2: f64,
    tau: f64,
}

/// Serialized form of a [`Scenario`]. Parsing and serializing round-trip
/// bit-for-bit on the numeric fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioDocument {
    #[serde(default)]
    label: String,
    initial: InitialConditions,
    params: ModelParams,
    schedule: PoliceSchedule,
    #[serde(default)]
    settings: SolverSettings,
}

impl From<&Scenario> for ScenarioDocument {
    fn from(scenario: &Scenario) -> Self {
        ScenarioDocument {
            label: scenario.label.clone(),
            initial: InitialConditions {
                v1: scenario.initial.v1,
                v2: scenario.initial.v2,
                u1: scenario.initial.u1,
                u2: scenario.initial.u2,
                tau: scenario.initial.tau,
            },
            params: scenario.params,
            schedule: scenario.schedule,
            settings: scenario.settings,
        }
    }
}

impl ScenarioDocument {
    fn into_scenario(self) -> Scenario {
        Scenario {
            initial: State::new(
                0.0,
                self.initial.v1,
                self.initial.v2,
                self.initial.u1,
                self.initial.u2,
                self.initial.tau,
            ),
            params: self.params,
            schedule: self.schedule,
            settings: self.settings,
            label: self.label,
        }
    }
}

/// Parses and validates a scenario document. Syntax errors carry the TOML
/// position; validation errors name the offending field.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let document: ScenarioDocument =
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let scenario = document.into_scenario();
    scenario.validate()?;
    Ok(scenario)
}

/// Serializes a scenario as a TOML document that parses back to an equal
/// value.
pub fn serialize_scenario(scenario: &Scenario) -> String {
    toml::to_string(&ScenarioDocument::from(scenario)).expect("scenario serializes")
}
