//! Scenario document parsing, CSV emission, and dependency-free SVG heat
//! maps. Every writer is deterministic: identical inputs produce identical
//! bytes.

mod csv;
mod scenario;
mod svg;

pub use csv::{
    write_envelope_csv, write_grid_csv, write_sensitivity_csv, write_trajectory_csv,
};
pub use scenario::{parse_scenario, serialize_scenario, ScenarioDocument};
pub use svg::render_heatmap_svg;
