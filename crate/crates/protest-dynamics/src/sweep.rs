//! 2D parameter sweeps over independent scenarios: total-aggression heat
//! maps over (tau_c, v_c) and (initial agitators, police entrance time),
//! phase-boundary extraction, and named experiment presets.

use rayon::prelude::*;

use crate::discrete::{is_productive, Scenario, SolverSettings};
use crate::error::{Error, Result};
use crate::model::{ModelParams, PoliceSchedule, State};
use crate::ode::integrate_observed;

/// Quantity a sweep axis overrides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisTarget {
    TauC,
    VC,
    InitialAgitators,
    EntranceTime,
}

impl AxisTarget {
    pub fn name(&self) -> &'static str {
        match self {
            AxisTarget::TauC => "tau_c",
            AxisTarget::VC => "v_c",
            AxisTarget::InitialAgitators => "initial_agitators",
            AxisTarget::EntranceTime => "entrance_time",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "tau_c" => Ok(AxisTarget::TauC),
            "v_c" => Ok(AxisTarget::VC),
            "initial_agitators" => Ok(AxisTarget::InitialAgitators),
            "entrance_time" => Ok(AxisTarget::EntranceTime),
            other => Err(Error::validation(
                "axis.target",
                format!("unknown target `{other}`; expected tau_c, v_c, initial_agitators, or entrance_time"),
            )),
        }
    }
}

/// One sweep axis: a target quantity and its strictly increasing,
/// nonnegative values.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub target: AxisTarget,
    pub values: Vec<f64>,
}

impl AxisSpec {
    pub fn new(target: AxisTarget, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::validation("axis.values", "must be non-empty"));
        }
        for value in &values {
            if !value.is_finite() || *value < 0.0 {
                return Err(Error::validation(
                    "axis.values",
                    "must be finite and nonnegative",
                ));
            }
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation(
                "axis.values",
                "must be strictly increasing",
            ));
        }
        Ok(AxisSpec { target, values })
    }

    /// Builds `start, start+step, ...` up to and including `stop` (within a
    /// relative rounding slack).
    pub fn from_range(target: AxisTarget, start: f64, step: f64, stop: f64) -> Result<Self> {
        if step <= 0.0 || !step.is_finite() {
            return Err(Error::validation("axis.step", "must be positive"));
        }
        if stop < start {
            return Err(Error::validation("axis.stop", "must be at least start"));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        let values = (0..count).map(|i| start + i as f64 * step).collect();
        AxisSpec::new(target, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Summary metrics of one sweep cell's run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellMetrics {
    /// Final cumulative police aggression.
    pub total_police_aofa: f64,
    /// Final cumulative protester aggression.
    pub total_protester_aofa: f64,
    /// Largest agitator count over the run.
    pub peak_agitators: f64,
    /// Termination time.
    pub duration: f64,
    pub productive: bool,
}

/// Cell metric selector for boundary detection and rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    PoliceAofa,
    ProtesterAofa,
    PeakAgitators,
    Duration,
}

impl Metric {
    pub fn value(&self, cell: &CellMetrics) -> f64 {
        match self {
            Metric::PoliceAofa => cell.total_police_aofa,
            Metric::ProtesterAofa => cell.total_protester_aofa,
            Metric::PeakAgitators => cell.peak_agitators,
            Metric::Duration => cell.duration,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Metric::PoliceAofa => "police_aofa",
            Metric::ProtesterAofa => "protester_aofa",
            Metric::PeakAgitators => "peak_agitators",
            Metric::Duration => "duration",
        }
    }
}

/// Row-major grid of cell metrics over two swept axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    /// `cells[i * axis2.len() + j]` holds the run at
    /// `(axis1.values[i], axis2.values[j])`.
    pub cells: Vec<CellMetrics>,
}

impl SweepGrid {
    pub fn shape(&self) -> (usize, usize) {
        (self.axis1.len(), self.axis2.len())
    }

    pub fn cell(&self, i: usize, j: usize) -> &CellMetrics {
        &self.cells[i * self.axis2.len() + j]
    }
}

/// Applies an axis override to a scenario. Setting the initial agitators
/// repartitions the crowd while keeping its total size.
fn apply_axis(scenario: &mut Scenario, target: AxisTarget, value: f64) -> Result<()> {
    match target {
        AxisTarget::TauC => scenario.params.tau_c = value,
        AxisTarget::VC => scenario.params.v_c = value,
        AxisTarget::InitialAgitators => {
            let total = scenario.total_protesters();
            if value > total {
                return Err(Error::validation(
                    "axis.values",
                    format!("initial agitators {value} exceeds crowd size {total}"),
                ));
            }
            scenario.initial.u1 = value;
            scenario.initial.u2 = total - value;
        }
        AxisTarget::EntranceTime => scenario.schedule.t_enter = value,
    }
    Ok(())
}

/// Integrates one cell, tracking only the metrics.
fn run_cell(scenario: &Scenario) -> Result<CellMetrics> {
    let initial = scenario.initial;
    let mut peak = initial.u1;
    let (last, _) = integrate_observed(scenario, false, |state, _| {
        peak = peak.max(state.u1);
    })?;
    Ok(CellMetrics {
        total_police_aofa: last.v2,
        total_protester_aofa: last.v1,
        peak_agitators: peak,
        duration: last.t,
        productive: is_productive(&initial, &last),
    })
}

/// Runs the base scenario once per grid cell with the two axis overrides
/// applied, integrating the continuum system. Cells are independent and run
/// on parallel workers; results land in pre-assigned slots, so the grid is
/// identical for any worker count.
pub fn run_sweep_2d(base: &Scenario, axis1: &AxisSpec, axis2: &AxisSpec) -> Result<SweepGrid> {
    if axis1.target == axis2.target {
        return Err(Error::validation(
            "axis2.target",
            "axes must target distinct quantities",
        ));
    }
    base.validate()?;

    let n2 = axis2.len();
    let cells: Vec<Result<CellMetrics>> = (0..axis1.len() * n2)
        .into_par_iter()
        .map(|index| {
            let a = axis1.values[index / n2];
            let b = axis2.values[index % n2];
            let mut scenario = base.clone();
            apply_axis(&mut scenario, axis1.target, a)?;
            apply_axis(&mut scenario, axis2.target, b)?;
            run_cell(&scenario).map_err(|source| Error::CellFailed {
                axis1: a,
                axis2: b,
                source: Box::new(source),
            })
        })
        .collect();

    let cells = cells.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SweepGrid {
        axis1: axis1.clone(),
        axis2: axis2.clone(),
        cells,
    })
}

/// Adjacent cell pairs (4-neighborhood) whose metric values lie on opposite
/// sides of `threshold`. Empty when the metric is uniformly on one side.
pub fn detect_phase_boundary(
    grid: &SweepGrid,
    metric: Metric,
    threshold: f64,
) -> Vec<((usize, usize), (usize, usize))> {
    let (n1, n2) = grid.shape();
    let side = |i: usize, j: usize| metric.value(grid.cell(i, j)) >= threshold;
    let mut pairs = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            if j + 1 < n2 && side(i, j) != side(i, j + 1) {
                pairs.push(((i, j), (i, j + 1)));
            }
            if i + 1 < n1 && side(i, j) != side(i + 1, j) {
                pairs.push(((i, j), (i + 1, j)));
            }
        }
    }
    pairs
}

/// Default crossing threshold for boundary detection: separates zero from
/// positive aggression in the continuum model.
pub const BOUNDARY_THRESHOLD: f64 = 0.5;

pub const PRESET_IDS: [&str; 10] = [
    "cs1i",
    "cs1ii",
    "cs2i",
    "cs2ii",
    "heatmap-A20",
    "heatmap-A40",
    "heatmap-A50",
    "entrance-T1-0.1",
    "entrance-T1-0.01",
    "entrance-T1-0.5",
];

/// Baseline constants for the case studies: exit 0.02, decay 0.01,
/// conversion response (0.1, >2); the five analysed parameters sit at the
/// midpoints of their default analysis ranges.
fn case_study_params() -> ModelParams {
    ModelParams {
        t1: 0.1005,
        t2: 0.00505,
        t3: 0.1,
        tau_c: 5.0,
        v_c: 5.0,
        tau_f3: 2.0,
        theta: 0.045,
        omega: 0.01,
        epsilon: 0.02,
        f1_inclusive: true,
        f2_inclusive: true,
        f3_inclusive: false,
    }
}

/// Constants behind the (tau_c, v_c) heat maps: T1=0.1, T2=0.01, theta=0.2,
/// omega=0.01, epsilon=0.01, conversion response (0.1, >5).
fn heatmap_params() -> ModelParams {
    ModelParams {
        t1: 0.1,
        t2: 0.01,
        t3: 0.1,
        tau_c: 5.0,
        v_c: 5.0,
        tau_f3: 5.0,
        theta: 0.2,
        omega: 0.01,
        epsilon: 0.01,
        f1_inclusive: true,
        f2_inclusive: true,
        f3_inclusive: false,
    }
}

fn scenario(label: &str, initial: State, params: ModelParams, schedule: PoliceSchedule) -> Scenario {
    Scenario {
        initial,
        params,
        schedule,
        settings: SolverSettings::default(),
        label: label.to_string(),
    }
}

fn heatmap_axes() -> Result<(AxisSpec, AxisSpec)> {
    Ok((
        AxisSpec::from_range(AxisTarget::TauC, 0.0, 0.25, 10.0)?,
        AxisSpec::from_range(AxisTarget::VC, 0.0, 0.25, 15.0)?,
    ))
}

fn entrance_axes() -> Result<(AxisSpec, AxisSpec)> {
    Ok((
        AxisSpec::from_range(AxisTarget::InitialAgitators, 0.0, 10.0, 500.0)?,
        AxisSpec::from_range(AxisTarget::EntranceTime, 0.0, 1.0, 50.0)?,
    ))
}

fn heatmap_preset(label: &str, agitators: f64) -> Result<(Scenario, Option<(AxisSpec, AxisSpec)>)> {
    let initial = State::new(0.0, 0.0, 0.0, agitators, 500.0 - agitators, 5.0);
    let sc = scenario(label, initial, heatmap_params(), PoliceSchedule::new(100.0, 0.0));
    Ok((sc, Some(heatmap_axes()?)))
}

fn entrance_preset(label: &str, t1: f64) -> Result<(Scenario, Option<(AxisSpec, AxisSpec)>)> {
    let mut params = heatmap_params();
    params.t1 = t1;
    params.t2 = 0.001;
    params.tau_c = 5.0;
    params.v_c = 15.0;
    let initial = State::new(0.0, 0.0, 0.0, 0.0, 500.0, 5.0);
    let sc = scenario(label, initial, params, PoliceSchedule::new(100.0, 0.0));
    Ok((sc, Some(entrance_axes()?)))
}

/// Returns a fully populated named scenario, plus sweep axes for the
/// heat-map presets.
pub fn preset_scenario(id: &str) -> Result<(Scenario, Option<(AxisSpec, AxisSpec)>)> {
    let cs = |label: &str, v2: f64, u1: f64, t_enter: f64| {
        let initial = State::new(0.0, 0.0, v2, u1, 500.0 - u1, 2.0);
        scenario(
            label,
            initial,
            case_study_params(),
            PoliceSchedule::new(100.0, t_enter),
        )
    };
    match id {
        "cs1i" => Ok((cs(id, 0.0, 0.0, 0.0), None)),
        "cs1ii" => Ok((cs(id, 1.0, 0.0, 0.0), None)),
        "cs2i" => Ok((cs(id, 0.0, 100.0, 0.0), None)),
        "cs2ii" => Ok((cs(id, 0.0, 100.0, 10.0), None)),
        "heatmap-A20" => heatmap_preset(id, 100.0),
        "heatmap-A40" => heatmap_preset(id, 200.0),
        "heatmap-A50" => heatmap_preset(id, 250.0),
        "entrance-T1-0.1" => entrance_preset(id, 0.1),
        "entrance-T1-0.01" => entrance_preset(id, 0.01),
        "entrance-T1-0.5" => entrance_preset(id, 0.5),
        other => Err(Error::UnknownPreset {
            id: other.to_string(),
            valid: PRESET_IDS.join(", "),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_values_must_increase() {
        assert!(AxisSpec::new(AxisTarget::VC, vec![0.0, 1.0, 1.0]).is_err());
        assert!(AxisSpec::new(AxisTarget::VC, vec![]).is_err());
        assert!(AxisSpec::new(AxisTarget::VC, vec![-1.0, 0.0]).is_err());
    }

    #[test]
    fn axis_range_includes_endpoint() {
        let axis = AxisSpec::from_range(AxisTarget::TauC, 0.0, 0.25, 10.0).unwrap();
        assert_eq!(axis.len(), 41);
        assert_eq!(axis.values[0], 0.0);
        assert_eq!(*axis.values.last().unwrap(), 10.0);
    }

    #[test]
    fn unknown_preset_lists_valid_ids() {
        let err = preset_scenario("bogus").unwrap_err();
        let message = err.to_string();
        assert!(message.contains("bogus"));
        assert!(message.contains("cs1i"));
        assert!(message.contains("heatmap-A20"));
    }

    #[test]
    fn cs1ii_preset_initial_data() {
        let (sc, axes) = preset_scenario("cs1ii").unwrap();
        assert_eq!(sc.initial.u2, 500.0);
        assert_eq!(sc.initial.v2, 1.0);
        assert_eq!(sc.initial.tau, 2.0);
        assert_eq!(sc.schedule.p0, 100.0);
        assert!(axes.is_none());
    }

    #[test]
    fn heatmap_preset_constants() {
        let (sc, axes) = preset_scenario("heatmap-A20").unwrap();
        assert_eq!(sc.params.t1, 0.1);
        assert_eq!(sc.params.t2, 0.01);
        assert_eq!(sc.params.theta, 0.2);
        assert_eq!(sc.params.epsilon, 0.01);
        assert_eq!(sc.params.omega, 0.01);
        assert_eq!(sc.initial.tau, 5.0);
        assert_eq!(sc.total_protesters(), 500.0);
        assert_eq!(sc.initial.u1, 100.0);
        let (a1, a2) = axes.unwrap();
        assert_eq!(a1.target, AxisTarget::TauC);
        assert_eq!(a2.target, AxisTarget::VC);
    }

    #[test]
    fn grid_shape_matches_axes() {
        let (base, _) = preset_scenario("cs2i").unwrap();
        let axis1 = AxisSpec::new(AxisTarget::TauC, vec![0.0, 2.0, 4.0]).unwrap();
        let axis2 = AxisSpec::new(AxisTarget::VC, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let grid = run_sweep_2d(&base, &axis1, &axis2).unwrap();
        assert_eq!(grid.shape(), (3, 4));
        assert_eq!(grid.cells.len(), 12);
    }

    #[test]
    fn duplicate_axis_targets_are_rejected() {
        let (base, _) = preset_scenario("cs2i").unwrap();
        let axis1 = AxisSpec::new(AxisTarget::VC, vec![0.0, 1.0]).unwrap();
        let axis2 = AxisSpec::new(AxisTarget::VC, vec![2.0, 3.0]).unwrap();
        assert!(run_sweep_2d(&base, &axis1, &axis2).is_err());
    }

    #[test]
    fn blackout_above_initial_tension() {
        // tau_c above tau(0) with tolerant police: nothing ever happens.
        let (base, _) = preset_scenario("heatmap-A20").unwrap();
        let axis1 = AxisSpec::new(AxisTarget::TauC, vec![6.0]).unwrap();
        let axis2 = AxisSpec::new(AxisTarget::VC, vec![0.0, 1.0, 8.0]).unwrap();
        let grid = run_sweep_2d(&base, &axis1, &axis2).unwrap();
        for j in 1..3 {
            let cell = grid.cell(0, j);
            assert_eq!(cell.total_police_aofa, 0.0);
            assert_eq!(cell.total_protester_aofa, 0.0);
        }
        // The v_c = 0 cell is the exception: police act spontaneously.
        assert!(grid.cell(0, 0).total_police_aofa > 0.0);
    }

    #[test]
    fn boundary_detection_on_uniform_grid_is_empty() {
        let (base, _) = preset_scenario("heatmap-A20").unwrap();
        let axis1 = AxisSpec::new(AxisTarget::TauC, vec![6.0, 7.0]).unwrap();
        let axis2 = AxisSpec::new(AxisTarget::VC, vec![1.0, 2.0]).unwrap();
        let grid = run_sweep_2d(&base, &axis1, &axis2).unwrap();
        assert!(detect_phase_boundary(&grid, Metric::PoliceAofa, BOUNDARY_THRESHOLD).is_empty());
    }

    #[test]
    fn police_boundary_brackets_the_protester_total() {
        // At tau_c = 0 the crowd response never shuts off; police engagement
        // flips exactly where v_c passes the protesters' total output.
        let (base, _) = preset_scenario("heatmap-A20").unwrap();
        let axis1 = AxisSpec::new(AxisTarget::TauC, vec![0.0]).unwrap();
        let axis2 = AxisSpec::from_range(AxisTarget::VC, 8.0, 0.25, 10.0).unwrap();
        let grid = run_sweep_2d(&base, &axis1, &axis2).unwrap();
        let pairs = detect_phase_boundary(&grid, Metric::PoliceAofa, BOUNDARY_THRESHOLD);
        assert_eq!(pairs.len(), 1);
        let ((_, j_lo), (_, j_hi)) = pairs[0];
        let lo = grid.axis2.values[j_lo];
        let hi = grid.axis2.values[j_hi];
        let quiet_total = grid.cell(0, grid.axis2.len() - 1).total_protester_aofa;
        assert!(lo < quiet_total + 0.25 && quiet_total - 0.25 < hi + 0.25);
        assert!((quiet_total - 9.0).abs() < 1.0);
    }

    #[test]
    fn sweep_is_deterministic_across_worker_counts() {
        let (base, _) = preset_scenario("heatmap-A20").unwrap();
        let axis1 = AxisSpec::new(AxisTarget::TauC, vec![0.0, 3.0, 6.0]).unwrap();
        let axis2 = AxisSpec::new(AxisTarget::VC, vec![0.0, 5.0, 10.0]).unwrap();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_sweep_2d(&base, &axis1, &axis2))
            .unwrap();
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(8)
            .build()
            .unwrap()
            .install(|| run_sweep_2d(&base, &axis1, &axis2))
            .unwrap();
        assert_eq!(single, many);
    }

    #[test]
    fn initial_agitators_axis_repartitions_the_crowd() {
        let (base, _) = preset_scenario("entrance-T1-0.1").unwrap();
        let axis1 = AxisSpec::new(AxisTarget::InitialAgitators, vec![0.0, 250.0, 500.0]).unwrap();
        let axis2 = AxisSpec::new(AxisTarget::EntranceTime, vec![0.0, 10.0]).unwrap();
        let grid = run_sweep_2d(&base, &axis1, &axis2).unwrap();
        // A fully moderate crowd with no initial police aggression stays calm.
        assert_eq!(grid.cell(0, 0).total_protester_aofa, 0.0);
        // A fully agitated crowd does not.
        assert!(grid.cell(2, 0).total_protester_aofa > 0.0);
    }

    #[test]
    fn oversized_agitator_override_names_the_cell() {
        let (base, _) = preset_scenario("entrance-T1-0.1").unwrap();
        let axis1 = AxisSpec::new(AxisTarget::InitialAgitators, vec![600.0]).unwrap();
        let axis2 = AxisSpec::new(AxisTarget::EntranceTime, vec![0.0]).unwrap();
        assert!(run_sweep_2d(&base, &axis1, &axis2).is_err());
    }
}
