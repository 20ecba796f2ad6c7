//! Python bindings: the core types and operations of the simulator, exposed
//! one-to-one. Build as a cdylib and import as `protest_dynamics`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::protest_dynamics as core;
use ::protest_dynamics::Error;

/// Index pair of two adjacent grid cells.
type CellPair = ((usize, usize), (usize, usize));

fn to_py_err(err: Error) -> PyErr {
    match err.exit_code() {
        2 => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

#[pyclass(name = "ModelParams", skip_from_py_object)]
#[derive(Clone)]
struct PyModelParams {
    #[pyo3(get, set)]
    t1: f64,
    #[pyo3(get, set)]
    t2: f64,
    #[pyo3(get, set)]
    t3: f64,
    #[pyo3(get, set)]
    tau_c: f64,
    #[pyo3(get, set)]
    v_c: f64,
    #[pyo3(get, set)]
    tau_f3: f64,
    #[pyo3(get, set)]
    theta: f64,
    #[pyo3(get, set)]
    omega: f64,
    #[pyo3(get, set)]
    epsilon: f64,
    #[pyo3(get, set)]
    f1_inclusive: bool,
    #[pyo3(get, set)]
    f2_inclusive: bool,
    #[pyo3(get, set)]
    f3_inclusive: bool,
}

#[pymethods]
impl PyModelParams {
    #[new]
    #[pyo3(signature = (t1, t2, t3, tau_c, v_c, tau_f3, theta, omega, epsilon,
                        f1_inclusive = true, f2_inclusive = true, f3_inclusive = false))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        t1: f64,
        t2: f64,
        t3: f64,
        tau_c: f64,
        v_c: f64,
        tau_f3: f64,
        theta: f64,
        omega: f64,
        epsilon: f64,
        f1_inclusive: bool,
        f2_inclusive: bool,
        f3_inclusive: bool,
    ) -> Self {
        PyModelParams {
            t1,
            t2,
            t3,
            tau_c,
            v_c,
            tau_f3,
            theta,
            omega,
            epsilon,
            f1_inclusive,
            f2_inclusive,
            f3_inclusive,
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "ModelParams(t1={}, t2={}, t3={}, tau_c={}, v_c={}, tau_f3={}, theta={}, omega={}, epsilon={})",
            self.t1, self.t2, self.t3, self.tau_c, self.v_c, self.tau_f3, self.theta, self.omega, self.epsilon
        )
    }
}

impl From<core::ModelParams> for PyModelParams {
    fn from(p: core::ModelParams) -> Self {
        PyModelParams {
            t1: p.t1,
            t2: p.t2,
            t3: p.t3,
            tau_c: p.tau_c,
            v_c: p.v_c,
            tau_f3: p.tau_f3,
            theta: p.theta,
            omega: p.omega,
            epsilon: p.epsilon,
            f1_inclusive: p.f1_inclusive,
            f2_inclusive: p.f2_inclusive,
            f3_inclusive: p.f3_inclusive,
        }
    }
}

impl From<&PyModelParams> for core::ModelParams {
    fn from(p: &PyModelParams) -> Self {
        core::ModelParams {
            t1: p.t1,
            t2: p.t2,
            t3: p.t3,
            tau_c: p.tau_c,
            v_c: p.v_c,
            tau_f3: p.tau_f3,
            theta: p.theta,
            omega: p.omega,
            epsilon: p.epsilon,
            f1_inclusive: p.f1_inclusive,
            f2_inclusive: p.f2_inclusive,
            f3_inclusive: p.f3_inclusive,
        }
    }
}

#[pyclass(name = "State", skip_from_py_object)]
#[derive(Clone)]
struct PyState {
    #[pyo3(get, set)]
    t: f64,
    #[pyo3(get, set)]
    v1: f64,
    #[pyo3(get, set)]
    v2: f64,
    #[pyo3(get, set)]
    u1: f64,
    #[pyo3(get, set)]
    u2: f64,
    #[pyo3(get, set)]
    tau: f64,
}

#[pymethods]
impl PyState {
    #[new]
    #[pyo3(signature = (v1 = 0.0, v2 = 0.0, u1 = 0.0, u2 = 0.0, tau = 0.0, t = 0.0))]
    fn new(v1: f64, v2: f64, u1: f64, u2: f64, tau: f64, t: f64) -> Self {
        PyState {
            t,
            v1,
            v2,
            u1,
            u2,
            tau,
        }
    }

    fn protesters(&self) -> f64 {
        self.u1 + self.u2
    }

    fn __repr__(&self) -> String {
        format!(
            "State(t={}, v1={}, v2={}, u1={}, u2={}, tau={})",
            self.t, self.v1, self.v2, self.u1, self.u2, self.tau
        )
    }
}

impl From<core::State> for PyState {
    fn from(s: core::State) -> Self {
        PyState {
            t: s.t,
            v1: s.v1,
            v2: s.v2,
            u1: s.u1,
            u2: s.u2,
            tau: s.tau,
        }
    }
}

impl From<&PyState> for core::State {
    fn from(s: &PyState) -> Self {
        core::State::new(s.t, s.v1, s.v2, s.u1, s.u2, s.tau)
    }
}

#[pyclass(name = "PoliceSchedule", skip_from_py_object)]
#[derive(Clone)]
struct PyPoliceSchedule {
    #[pyo3(get, set)]
    p0: f64,
    #[pyo3(get, set)]
    t_enter: f64,
    #[pyo3(get, set)]
    min_protesters: f64,
}

#[pymethods]
impl PyPoliceSchedule {
    #[new]
    #[pyo3(signature = (p0, t_enter = 0.0, min_protesters = 1.0))]
    fn new(p0: f64, t_enter: f64, min_protesters: f64) -> Self {
        PyPoliceSchedule {
            p0,
            t_enter,
            min_protesters,
        }
    }

    fn presence(&self, t: f64, state: &PyState) -> f64 {
        core::PoliceSchedule::from(self).presence(t, &core::State::from(state))
    }

    fn __repr__(&self) -> String {
        format!(
            "PoliceSchedule(p0={}, t_enter={}, min_protesters={})",
            self.p0, self.t_enter, self.min_protesters
        )
    }
}

impl From<core::PoliceSchedule> for PyPoliceSchedule {
    fn from(s: core::PoliceSchedule) -> Self {
        PyPoliceSchedule {
            p0: s.p0,
            t_enter: s.t_enter,
            min_protesters: s.min_protesters,
        }
    }
}

impl From<&PyPoliceSchedule> for core::PoliceSchedule {
    fn from(s: &PyPoliceSchedule) -> Self {
        core::PoliceSchedule {
            p0: s.p0,
            t_enter: s.t_enter,
            min_protesters: s.min_protesters,
        }
    }
}

#[pyclass(name = "SolverSettings", skip_from_py_object)]
#[derive(Clone)]
struct PySolverSettings {
    #[pyo3(get, set)]
    dt: f64,
    #[pyo3(get, set)]
    h: f64,
    #[pyo3(get, set)]
    t_max: f64,
    #[pyo3(get, set)]
    record_every: usize,
}

#[pymethods]
impl PySolverSettings {
    #[new]
    #[pyo3(signature = (dt = 0.1, h = 0.01, t_max = 2000.0, record_every = 100))]
    fn new(dt: f64, h: f64, t_max: f64, record_every: usize) -> Self {
        PySolverSettings {
            dt,
            h,
            t_max,
            record_every,
        }
    }
}

impl From<core::SolverSettings> for PySolverSettings {
    fn from(s: core::SolverSettings) -> Self {
        PySolverSettings {
            dt: s.dt,
            h: s.h,
            t_max: s.t_max,
            record_every: s.record_every,
        }
    }
}

impl From<&PySolverSettings> for core::SolverSettings {
    fn from(s: &PySolverSettings) -> Self {
        core::SolverSettings {
            dt: s.dt,
            h: s.h,
            t_max: s.t_max,
            record_every: s.record_every,
        }
    }
}

#[pyclass(name = "Scenario", skip_from_py_object)]
#[derive(Clone)]
struct PyScenario {
    inner: core::Scenario,
}

#[pymethods]
impl PyScenario {
    #[new]
    #[pyo3(signature = (initial, params, schedule, settings = None, label = String::new()))]
    fn new(
        initial: &PyState,
        params: &PyModelParams,
        schedule: &PyPoliceSchedule,
        settings: Option<&PySolverSettings>,
        label: String,
    ) -> Self {
        PyScenario {
            inner: core::Scenario {
                initial: initial.into(),
                params: params.into(),
                schedule: schedule.into(),
                settings: settings.map(Into::into).unwrap_or_default(),
                label,
            },
        }
    }

    #[getter]
    fn initial(&self) -> PyState {
        self.inner.initial.into()
    }

    #[setter]
    fn set_initial(&mut self, state: &PyState) {
        self.inner.initial = state.into();
    }

    #[getter]
    fn params(&self) -> PyModelParams {
        self.inner.params.into()
    }

    #[setter]
    fn set_params(&mut self, params: &PyModelParams) {
        self.inner.params = params.into();
    }

    #[getter]
    fn schedule(&self) -> PyPoliceSchedule {
        self.inner.schedule.into()
    }

    #[setter]
    fn set_schedule(&mut self, schedule: &PyPoliceSchedule) {
        self.inner.schedule = schedule.into();
    }

    #[getter]
    fn settings(&self) -> PySolverSettings {
        self.inner.settings.into()
    }

    #[setter]
    fn set_settings(&mut self, settings: &PySolverSettings) {
        self.inner.settings = settings.into();
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label.clone()
    }

    #[setter]
    fn set_label(&mut self, label: String) {
        self.inner.label = label;
    }

    fn total_protesters(&self) -> f64 {
        self.inner.total_protesters()
    }

    fn validate(&self) -> PyResult<()> {
        self.inner.validate().map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!("Scenario(label={:?}, n={})", self.inner.label, self.inner.total_protesters())
    }
}

#[pyclass(name = "Trajectory")]
struct PyTrajectory {
    inner: core::Trajectory,
    schedule: core::PoliceSchedule,
}

#[pymethods]
impl PyTrajectory {
    /// Recorded states, oldest first.
    fn samples(&self) -> Vec<PyState> {
        self.inner.samples.iter().map(|s| (*s).into()).collect()
    }

    fn times(&self) -> Vec<f64> {
        self.inner.samples.iter().map(|s| s.t).collect()
    }

    #[getter]
    fn terminated_by(&self) -> &'static str {
        match self.inner.terminated_by {
            core::TerminationReason::ProtestersDepleted => "protesters_depleted",
            core::TerminationReason::HorizonReached => "horizon_reached",
        }
    }

    fn initial(&self) -> PyState {
        (*self.inner.initial()).into()
    }

    fn last(&self) -> PyState {
        (*self.inner.last()).into()
    }

    fn is_productive(&self) -> bool {
        core::classify_productive(&self.inner)
    }

    fn to_csv(&self) -> String {
        core::io::write_trajectory_csv(&self.inner, &self.schedule)
    }

    fn __len__(&self) -> usize {
        self.inner.samples.len()
    }
}

#[pyclass(name = "AxisSpec", skip_from_py_object)]
#[derive(Clone)]
struct PyAxisSpec {
    inner: core::AxisSpec,
}

#[pymethods]
impl PyAxisSpec {
    #[new]
    fn new(target: &str, values: Vec<f64>) -> PyResult<Self> {
        let target = core::AxisTarget::parse(target).map_err(to_py_err)?;
        Ok(PyAxisSpec {
            inner: core::AxisSpec::new(target, values).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn from_range(target: &str, start: f64, step: f64, stop: f64) -> PyResult<Self> {
        let target = core::AxisTarget::parse(target).map_err(to_py_err)?;
        Ok(PyAxisSpec {
            inner: core::AxisSpec::from_range(target, start, step, stop).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn target(&self) -> &'static str {
        self.inner.target.name()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values.clone()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyclass(name = "CellMetrics", skip_from_py_object)]
#[derive(Clone)]
struct PyCellMetrics {
    #[pyo3(get)]
    total_police_aofa: f64,
    #[pyo3(get)]
    total_protester_aofa: f64,
    #[pyo3(get)]
    peak_agitators: f64,
    #[pyo3(get)]
    duration: f64,
    #[pyo3(get)]
    productive: bool,
}

impl From<&core::CellMetrics> for PyCellMetrics {
    fn from(c: &core::CellMetrics) -> Self {
        PyCellMetrics {
            total_police_aofa: c.total_police_aofa,
            total_protester_aofa: c.total_protester_aofa,
            peak_agitators: c.peak_agitators,
            duration: c.duration,
            productive: c.productive,
        }
    }
}

fn parse_metric(name: &str) -> PyResult<core::Metric> {
    match name {
        "police" | "police_aofa" => Ok(core::Metric::PoliceAofa),
        "protester" | "protester_aofa" => Ok(core::Metric::ProtesterAofa),
        "peak_agitators" => Ok(core::Metric::PeakAgitators),
        "duration" => Ok(core::Metric::Duration),
        other => Err(PyValueError::new_err(format!(
            "unknown metric `{other}`; expected police, protester, peak_agitators, or duration"
        ))),
    }
}

#[pyclass(name = "SweepGrid")]
struct PySweepGrid {
    inner: core::SweepGrid,
}

#[pymethods]
impl PySweepGrid {
    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    #[getter]
    fn axis1(&self) -> PyAxisSpec {
        PyAxisSpec {
            inner: self.inner.axis1.clone(),
        }
    }

    #[getter]
    fn axis2(&self) -> PyAxisSpec {
        PyAxisSpec {
            inner: self.inner.axis2.clone(),
        }
    }

    fn cell(&self, i: usize, j: usize) -> PyResult<PyCellMetrics> {
        let (n1, n2) = self.inner.shape();
        if i >= n1 || j >= n2 {
            return Err(PyValueError::new_err(format!(
                "cell ({i}, {j}) outside {n1}x{n2} grid"
            )));
        }
        Ok(self.inner.cell(i, j).into())
    }

    /// Metric values as a nested list, rows indexed by axis1.
    fn metric_values(&self, metric: &str) -> PyResult<Vec<Vec<f64>>> {
        let metric = parse_metric(metric)?;
        let (n1, n2) = self.inner.shape();
        Ok((0..n1)
            .map(|i| (0..n2).map(|j| metric.value(self.inner.cell(i, j))).collect())
            .collect())
    }

    fn boundary(&self, metric: &str, threshold: f64) -> PyResult<Vec<CellPair>> {
        Ok(core::detect_phase_boundary(
            &self.inner,
            parse_metric(metric)?,
            threshold,
        ))
    }

    fn to_csv(&self) -> String {
        core::io::write_grid_csv(&self.inner)
    }

    fn to_svg(&self, metric: &str) -> PyResult<String> {
        Ok(core::io::render_heatmap_svg(&self.inner, parse_metric(metric)?))
    }
}

#[pyclass(name = "EnvelopeSummary")]
struct PyEnvelopeSummary {
    inner: core::EnvelopeSummary,
}

fn output_index(name: &str) -> PyResult<usize> {
    core::sensitivity::OUTPUT_NAMES
        .iter()
        .position(|n| *n == name)
        .ok_or_else(|| {
            PyValueError::new_err(format!("unknown output `{name}`; expected v1, v2, u1, u2, or tau"))
        })
}

#[pymethods]
impl PyEnvelopeSummary {
    #[getter]
    fn times(&self) -> Vec<f64> {
        self.inner.times.clone()
    }

    #[getter]
    fn draws(&self) -> usize {
        self.inner.draws
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    /// One statistic curve: stat in {min, max, mean, sd, q05, q95}.
    fn curve(&self, output: &str, stat: &str) -> PyResult<Vec<f64>> {
        let index = output_index(output)?;
        let pick = |s: &core::EnvelopeStats| -> PyResult<f64> {
            Ok(match stat {
                "min" => s.min,
                "max" => s.max,
                "mean" => s.mean,
                "sd" => s.sd,
                "q05" => s.q05,
                "q95" => s.q95,
                other => {
                    return Err(PyValueError::new_err(format!(
                        "unknown stat `{other}`; expected min, max, mean, sd, q05, or q95"
                    )))
                }
            })
        };
        self.inner.stats.iter().map(|row| pick(&row[index])).collect()
    }

    fn to_csv(&self) -> String {
        core::io::write_envelope_csv(&self.inner)
    }
}

#[pyclass(name = "SensitivityMatrix")]
struct PySensitivityMatrix {
    inner: core::SensitivityMatrix,
}

fn parse_sens_param(name: &str) -> PyResult<core::SensitivityParam> {
    core::SensitivityParam::ALL
        .into_iter()
        .find(|p| p.name() == name)
        .ok_or_else(|| {
            PyValueError::new_err(format!(
                "unknown parameter `{name}`; expected T1, T2, theta, v_c, or tau_c"
            ))
        })
}

#[pymethods]
impl PySensitivityMatrix {
    #[getter]
    fn times(&self) -> Vec<f64> {
        self.inner.times.clone()
    }

    #[getter]
    fn params(&self) -> Vec<&'static str> {
        self.inner.params.iter().map(|p| p.name()).collect()
    }

    #[getter]
    fn flagged(&self) -> Vec<bool> {
        self.inner.flagged.clone()
    }

    /// Raw sensitivity curve d(output)/d(param) over the grid.
    fn curve(&self, param: &str, output: &str) -> PyResult<Vec<f64>> {
        let param = parse_sens_param(param)?;
        let param_index = self
            .inner
            .params
            .iter()
            .position(|p| *p == param)
            .ok_or_else(|| PyValueError::new_err("parameter not in this matrix"))?;
        let out = output_index(output)?;
        Ok(self
            .inner
            .entries
            .iter()
            .map(|row| row[param_index][out])
            .collect())
    }

    fn ranked_by_l2(&self) -> Vec<&'static str> {
        self.inner.ranked_by_l2().iter().map(|p| p.name()).collect()
    }

    fn to_csv(&self) -> String {
        core::io::write_sensitivity_csv(&self.inner)
    }
}

fn ranges_from_dict(dict: Option<&Bound<'_, PyDict>>) -> PyResult<core::ParamRanges> {
    let Some(dict) = dict else {
        return Ok(core::ParamRanges::table_defaults());
    };
    let mut entries = Vec::new();
    for param in core::SensitivityParam::ALL {
        if let Some(value) = dict.get_item(param.name())? {
            let (min, max): (f64, f64) = value.extract()?;
            entries.push((param, min, max));
        }
    }
    if entries.len() != dict.len() {
        return Err(PyValueError::new_err(
            "ranges keys must be among T1, T2, theta, v_c, tau_c",
        ));
    }
    core::ParamRanges::new(entries).map_err(to_py_err)
}

#[pyfunction]
fn preset_ids() -> Vec<&'static str> {
    core::PRESET_IDS.to_vec()
}

#[pyfunction]
fn preset_scenario(id: &str) -> PyResult<(PyScenario, Option<(PyAxisSpec, PyAxisSpec)>)> {
    let (scenario, axes) = core::preset_scenario(id).map_err(to_py_err)?;
    Ok((
        PyScenario { inner: scenario },
        axes.map(|(a, b)| (PyAxisSpec { inner: a }, PyAxisSpec { inner: b })),
    ))
}

#[pyfunction]
fn run_discrete(scenario: &PyScenario) -> PyResult<PyTrajectory> {
    Ok(PyTrajectory {
        inner: core::run_discrete(&scenario.inner).map_err(to_py_err)?,
        schedule: scenario.inner.schedule,
    })
}

#[pyfunction]
fn integrate(scenario: &PyScenario) -> PyResult<PyTrajectory> {
    Ok(PyTrajectory {
        inner: core::integrate(&scenario.inner).map_err(to_py_err)?,
        schedule: scenario.inner.schedule,
    })
}

#[pyfunction]
fn step_discrete(
    state: &PyState,
    params: &PyModelParams,
    schedule: &PyPoliceSchedule,
    dt: f64,
) -> PyResult<PyState> {
    core::step_discrete(&state.into(), &params.into(), &schedule.into(), dt)
        .map(Into::into)
        .map_err(to_py_err)
}

#[pyfunction]
fn rhs(state: &PyState, police: f64, params: &PyModelParams) -> (f64, f64, f64, f64, f64) {
    let d = core::rhs(&state.into(), police, &params.into());
    (d.dv1, d.dv2, d.du1, d.du2, d.dtau)
}

#[pyfunction]
fn predict_zero_aggression(scenario: &PyScenario) -> &'static str {
    core::predict_zero_aggression(&scenario.inner).as_str()
}

#[pyfunction]
fn analytic_upper_bounds(t: f64, initial: &PyState, params: &PyModelParams) -> (f64, f64) {
    core::analytic_upper_bounds(t, &initial.into(), &params.into())
}

#[pyfunction]
#[pyo3(signature = (scenario, axis1, axis2))]
fn run_sweep_2d(
    scenario: &PyScenario,
    axis1: &PyAxisSpec,
    axis2: &PyAxisSpec,
) -> PyResult<PySweepGrid> {
    Ok(PySweepGrid {
        inner: core::run_sweep_2d(&scenario.inner, &axis1.inner, &axis2.inner)
            .map_err(to_py_err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (base, n, seed, ranges = None))]
fn global_envelopes(
    base: &PyScenario,
    n: usize,
    seed: u64,
    ranges: Option<&Bound<'_, PyDict>>,
) -> PyResult<PyEnvelopeSummary> {
    let ranges = ranges_from_dict(ranges)?;
    Ok(PyEnvelopeSummary {
        inner: core::global_envelopes(&base.inner, &ranges, n, seed).map_err(to_py_err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (base, t_grid, params = None, rel_step = 1e-4))]
fn local_sensitivity(
    base: &PyScenario,
    t_grid: Vec<f64>,
    params: Option<Vec<String>>,
    rel_step: f64,
) -> PyResult<PySensitivityMatrix> {
    let params = match params {
        Some(names) => names
            .iter()
            .map(|n| parse_sens_param(n))
            .collect::<PyResult<Vec<_>>>()?,
        None => core::SensitivityParam::ALL.to_vec(),
    };
    Ok(PySensitivityMatrix {
        inner: core::local_sensitivity(&base.inner, &params, rel_step, &t_grid)
            .map_err(to_py_err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (base, n, seed, ranges = None))]
fn sample_params(
    base: &PyModelParams,
    n: usize,
    seed: u64,
    ranges: Option<&Bound<'_, PyDict>>,
) -> PyResult<Vec<PyModelParams>> {
    let ranges = ranges_from_dict(ranges)?;
    Ok(core::sample_params(&ranges, &base.into(), n, seed)
        .map_err(to_py_err)?
        .into_iter()
        .map(Into::into)
        .collect())
}

#[pyfunction]
fn parse_scenario(text: &str) -> PyResult<PyScenario> {
    Ok(PyScenario {
        inner: core::io::parse_scenario(text).map_err(to_py_err)?,
    })
}

#[pyfunction]
fn serialize_scenario(scenario: &PyScenario) -> String {
    core::io::serialize_scenario(&scenario.inner)
}

#[pymodule]
fn protest_dynamics(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModelParams>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PyPoliceSchedule>()?;
    m.add_class::<PySolverSettings>()?;
    m.add_class::<PyScenario>()?;
    m.add_class::<PyTrajectory>()?;
    m.add_class::<PyAxisSpec>()?;
    m.add_class::<PyCellMetrics>()?;
    m.add_class::<PySweepGrid>()?;
    m.add_class::<PyEnvelopeSummary>()?;
    m.add_class::<PySensitivityMatrix>()?;
    m.add_function(wrap_pyfunction!(preset_ids, m)?)?;
    m.add_function(wrap_pyfunction!(preset_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(run_discrete, m)?)?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(step_discrete, m)?)?;
    m.add_function(wrap_pyfunction!(rhs, m)?)?;
    m.add_function(wrap_pyfunction!(predict_zero_aggression, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_upper_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep_2d, m)?)?;
    m.add_function(wrap_pyfunction!(global_envelopes, m)?)?;
    m.add_function(wrap_pyfunction!(local_sensitivity, m)?)?;
    m.add_function(wrap_pyfunction!(sample_params, m)?)?;
    m.add_function(wrap_pyfunction!(parse_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(serialize_scenario, m)?)?;
    Ok(())
}
