//! Global Monte Carlo sensitivity envelopes and local finite-difference
//! sensitivity functions over the five simulated outputs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::discrete::{steps_to_horizon, Scenario};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::ode::integrate_observed;

/// The five recorded outputs, in column order.
pub const OUTPUT_NAMES: [&str; 5] = ["v1", "v2", "u1", "u2", "tau"];

/// Model constants subject to sensitivity analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SensitivityParam {
    T1,
    T2,
    Theta,
    VC,
    TauC,
}

impl SensitivityParam {
    pub const ALL: [SensitivityParam; 5] = [
        SensitivityParam::T1,
        SensitivityParam::T2,
        SensitivityParam::Theta,
        SensitivityParam::VC,
        SensitivityParam::TauC,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SensitivityParam::T1 => "T1",
            SensitivityParam::T2 => "T2",
            SensitivityParam::Theta => "theta",
            SensitivityParam::VC => "v_c",
            SensitivityParam::TauC => "tau_c",
        }
    }

    pub fn get(&self, params: &ModelParams) -> f64 {
        match self {
            SensitivityParam::T1 => params.t1,
            SensitivityParam::T2 => params.t2,
            SensitivityParam::Theta => params.theta,
            SensitivityParam::VC => params.v_c,
            SensitivityParam::TauC => params.tau_c,
        }
    }

    pub fn set(&self, params: &mut ModelParams, value: f64) {
        match self {
            SensitivityParam::T1 => params.t1 = value,
            SensitivityParam::T2 => params.t2 = value,
            SensitivityParam::Theta => params.theta = value,
            SensitivityParam::VC => params.v_c = value,
            SensitivityParam::TauC => params.tau_c = value,
        }
    }

    /// Whether the parameter is a step-function threshold (perturbing it can
    /// move an activation boundary across the trajectory).
    fn is_threshold(&self) -> bool {
        matches!(self, SensitivityParam::VC | SensitivityParam::TauC)
    }
}

/// Closed sampling interval per parameter, in a fixed draw order.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamRanges {
    entries: Vec<(SensitivityParam, f64, f64)>,
}

impl ParamRanges {
    /// The default global-sensitivity ranges:
    /// T1 in [0.001, 0.2], T2 in [0.0001, 0.01], theta in [0.01, 0.08],
    /// v_c in [0, 10], tau_c in [0, 10].
    pub fn table_defaults() -> Self {
        ParamRanges {
            entries: vec![
                (SensitivityParam::T1, 0.001, 0.2),
                (SensitivityParam::T2, 0.0001, 0.01),
                (SensitivityParam::Theta, 0.01, 0.08),
                (SensitivityParam::VC, 0.0, 10.0),
                (SensitivityParam::TauC, 0.0, 10.0),
            ],
        }
    }

    pub fn new(entries: Vec<(SensitivityParam, f64, f64)>) -> Result<Self> {
        let mut ranges = ParamRanges { entries: Vec::new() };
        for (param, min, max) in entries {
            ranges.set(param, min, max)?;
        }
        Ok(ranges)
    }

    /// Sets or replaces the interval for one parameter.
    pub fn set(&mut self, param: SensitivityParam, min: f64, max: f64) -> Result<()> {
        if !min.is_finite() || !max.is_finite() || min > max {
            return Err(Error::validation(
                format!("ranges.{}", param.name()),
                format!("invalid interval [{min}, {max}]"),
            ));
        }
        if let Some(entry) = self.entries.iter_mut().find(|(p, _, _)| *p == param) {
            entry.1 = min;
            entry.2 = max;
        } else {
            self.entries.push((param, min, max));
        }
        Ok(())
    }

    pub fn with_range(mut self, param: SensitivityParam, min: f64, max: f64) -> Result<Self> {
        self.set(param, min, max)?;
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(SensitivityParam, f64, f64)] {
        &self.entries
    }
}

impl Default for ParamRanges {
    fn default() -> Self {
        ParamRanges::table_defaults()
    }
}

/// Draws `n` parameter sets, each uniform per ranged parameter and merged
/// over `base` for the unswept fields. Deterministic given the seed.
pub fn sample_params(
    ranges: &ParamRanges,
    base: &ModelParams,
    n: usize,
    seed: u64,
) -> Result<Vec<ModelParams>> {
    if ranges.is_empty() {
        return Err(Error::EmptyRanges);
    }
    if n == 0 {
        return Err(Error::validation("n", "must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::with_capacity(n);
    for _ in 0..n {
        let mut params = *base;
        for &(param, min, max) in &ranges.entries {
            param.set(&mut params, rng.random_range(min..=max));
        }
        draws.push(params);
    }
    Ok(draws)
}

/// Pointwise statistics of one output over the draw ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub sd: f64,
    pub q05: f64,
    pub q95: f64,
}

/// Ensemble envelopes of all five outputs on a shared time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeSummary {
    pub times: Vec<f64>,
    /// `stats[time_index][output_index]`, outputs ordered as `OUTPUT_NAMES`.
    pub stats: Vec<[EnvelopeStats; 5]>,
    pub draws: usize,
    pub seed: u64,
}

fn outputs_of(state: &crate::model::State) -> [f64; 5] {
    [state.v1, state.v2, state.u1, state.u2, state.tau]
}

/// Linear-interpolation quantile of pre-sorted values (same convention as
/// numpy's default).
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = q * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Runs one draw and captures outputs on the shared step grid, padding past
/// termination by holding the final state.
fn run_on_grid(scenario: &Scenario, grid_len: usize, record_every: usize) -> Result<Vec<[f64; 5]>> {
    let mut captured: Vec<[f64; 5]> = Vec::with_capacity(grid_len);
    let (final_state, _) = integrate_observed(scenario, false, |state, step| {
        if step % record_every == 0 {
            captured.push(outputs_of(state));
        }
    })?;
    captured.resize(grid_len, outputs_of(&final_state));
    Ok(captured)
}

/// Integrates the continuum system for each parameter draw and reduces the
/// runs pointwise to min/max/mean/sd and 5%/95% quantiles. Draws execute in
/// parallel; the reduction is performed in draw order, so the result is
/// identical for any worker count.
pub fn global_envelopes(
    base: &Scenario,
    ranges: &ParamRanges,
    n: usize,
    seed: u64,
) -> Result<EnvelopeSummary> {
    base.validate()?;
    if n < 2 {
        return Err(Error::validation("n", "must be at least 2"));
    }
    let draws = sample_params(ranges, &base.params, n, seed)?;

    let settings = &base.settings;
    let max_steps = steps_to_horizon(settings.t_max, settings.h);
    let grid_steps: Vec<usize> = (0..=max_steps).step_by(settings.record_every).collect();
    let times: Vec<f64> = grid_steps.iter().map(|&k| k as f64 * settings.h).collect();
    let grid_len = grid_steps.len();

    let runs: Vec<Result<Vec<[f64; 5]>>> = draws
        .par_iter()
        .map(|params| {
            let mut scenario = base.clone();
            scenario.params = *params;
            run_on_grid(&scenario, grid_len, settings.record_every)
        })
        .collect();

    let mut grids = Vec::with_capacity(n);
    for (index, run) in runs.into_iter().enumerate() {
        match run {
            Ok(grid) => grids.push(grid),
            Err(source) => {
                return Err(Error::DrawFailed {
                    index,
                    source: Box::new(source),
                })
            }
        }
    }

    let mut stats = Vec::with_capacity(grid_len);
    let mut column = vec![0.0; n];
    #[allow(clippy::needless_range_loop)]
    for time_index in 0..grid_len {
        let mut row = [EnvelopeStats {
            min: 0.0,
            max: 0.0,
            mean: 0.0,
            sd: 0.0,
            q05: 0.0,
            q95: 0.0,
        }; 5];
        for (output, slot) in row.iter_mut().enumerate() {
            for (draw, value) in column.iter_mut().enumerate() {
                *value = grids[draw][time_index][output];
            }
            let mut sorted = column.clone();
            sorted.sort_by(f64::total_cmp);
            // Summation rounding can push the mean an ulp past the extremes;
            // the true mean always lies inside them.
            let mean = (column.iter().sum::<f64>() / n as f64).clamp(sorted[0], sorted[n - 1]);
            let ss = column.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
            let sd = (ss / (n - 1) as f64).sqrt();
            *slot = EnvelopeStats {
                min: sorted[0],
                max: sorted[n - 1],
                mean,
                sd,
                q05: quantile_sorted(&sorted, 0.05),
                q95: quantile_sorted(&sorted, 0.95),
            };
        }
        stats.push(row);
    }

    Ok(EnvelopeSummary {
        times,
        stats,
        draws: n,
        seed,
    })
}

/// Local sensitivity estimates on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityMatrix {
    pub times: Vec<f64>,
    pub params: Vec<SensitivityParam>,
    /// `entries[time_index][param_index][output_index]`: d(output)/d(param).
    pub entries: Vec<Vec<[f64; 5]>>,
    /// Parameter-scaled entries: d(output)/d(param) * param / output-scale,
    /// where the output scale is the base run's largest absolute value of
    /// that output on the grid.
    pub scaled: Vec<Vec<[f64; 5]>>,
    /// Per-parameter flag, set when the perturbation straddles a
    /// step-function threshold along the base trajectory.
    pub flagged: Vec<bool>,
    pub rel_step: f64,
}

impl SensitivityMatrix {
    /// Column L2 norm of the raw entries for one parameter.
    pub fn column_l2(&self, param_index: usize) -> f64 {
        self.entries
            .iter()
            .map(|row| row[param_index].iter().map(|e| e * e).sum::<f64>())
            .sum::<f64>()
            .sqrt()
    }

    /// Parameters ordered by descending column L2 norm; ties keep the input
    /// order.
    pub fn ranked_by_l2(&self) -> Vec<SensitivityParam> {
        let mut order: Vec<usize> = (0..self.params.len()).collect();
        order.sort_by(|&a, &b| self.column_l2(b).total_cmp(&self.column_l2(a)));
        order.into_iter().map(|i| self.params[i]).collect()
    }
}

/// Dense run: all five outputs at every integrator step.
struct DenseRun {
    h: f64,
    outputs: Vec<[f64; 5]>,
}

impl DenseRun {
    fn compute(scenario: &Scenario, validate: bool) -> Result<DenseRun> {
        let mut outputs = Vec::new();
        integrate_observed(scenario, validate, |state, _| {
            outputs.push(outputs_of(state));
        })?;
        Ok(DenseRun {
            h: scenario.settings.h,
            outputs,
        })
    }

    /// Linear interpolation between recorded steps; holds the final state
    /// past termination.
    fn sample(&self, t: f64) -> [f64; 5] {
        let pos = t / self.h;
        let lo = pos.floor() as usize;
        if lo + 1 >= self.outputs.len() {
            return *self.outputs.last().expect("dense run is non-empty");
        }
        let frac = pos - lo as f64;
        let a = self.outputs[lo];
        let b = self.outputs[lo + 1];
        let mut out = [0.0; 5];
        for i in 0..5 {
            out[i] = a[i] + frac * (b[i] - a[i]);
        }
        out
    }
}

/// Central finite-difference sensitivities of the five outputs to each
/// requested parameter, evaluated on `t_grid`.
///
/// The perturbation is `rel_step * max(|value|, 1e-8)` per parameter.
/// Threshold parameters whose perturbed interval touches the base
/// trajectory's own signal (tension for tau_c, protester aggression for v_c)
/// are flagged rather than rejected: the difference quotient there estimates
/// a jump, not a derivative.
pub fn local_sensitivity(
    base: &Scenario,
    params: &[SensitivityParam],
    rel_step: f64,
    t_grid: &[f64],
) -> Result<SensitivityMatrix> {
    base.validate()?;
    if rel_step <= 0.0 || !rel_step.is_finite() {
        return Err(Error::validation("rel_step", "must be positive"));
    }
    if t_grid.is_empty() {
        return Err(Error::validation("t_grid", "must be non-empty"));
    }

    let base_run = DenseRun::compute(base, false)?;

    let base_samples: Vec<[f64; 5]> = t_grid.iter().map(|&t| base_run.sample(t)).collect();
    let mut output_scale = [0.0f64; 5];
    for sample in &base_samples {
        for (i, value) in sample.iter().enumerate() {
            output_scale[i] = output_scale[i].max(value.abs());
        }
    }
    for scale in &mut output_scale {
        *scale = scale.max(1e-8);
    }

    let mut entries = vec![vec![[0.0; 5]; params.len()]; t_grid.len()];
    let mut scaled = vec![vec![[0.0; 5]; params.len()]; t_grid.len()];
    let mut flagged = vec![false; params.len()];

    for (param_index, &param) in params.iter().enumerate() {
        let value = param.get(&base.params);
        let delta = rel_step * value.abs().max(1e-8);

        if param.is_threshold() {
            let signal = match param {
                SensitivityParam::TauC => 4,
                _ => 0,
            };
            flagged[param_index] = base_run
                .outputs
                .iter()
                .any(|out| (out[signal] - value).abs() <= delta);
        }

        let mut plus = base.clone();
        param.set(&mut plus.params, value + delta);
        let plus_run = DenseRun::compute(&plus, false)?;
        let mut minus = base.clone();
        param.set(&mut minus.params, value - delta);
        let minus_run = DenseRun::compute(&minus, false)?;

        for (time_index, &t) in t_grid.iter().enumerate() {
            let hi = plus_run.sample(t);
            let lo = minus_run.sample(t);
            for output in 0..5 {
                let derivative = (hi[output] - lo[output]) / (2.0 * delta);
                entries[time_index][param_index][output] = derivative;
                scaled[time_index][param_index][output] =
                    derivative * value / output_scale[output];
            }
        }
    }

    Ok(SensitivityMatrix {
        times: t_grid.to_vec(),
        params: params.to_vec(),
        entries,
        scaled,
        flagged,
        rel_step,
    })
}
