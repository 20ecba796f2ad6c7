//! Command-line surface. Exit codes: 0 success, 1 validation or parse
//! error, 2 numerical failure.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::discrete::{run_discrete, Scenario, Trajectory};
use crate::error::{Error, Result};
use crate::io::{
    parse_scenario, render_heatmap_svg, write_envelope_csv, write_grid_csv,
    write_sensitivity_csv, write_trajectory_csv,
};
use crate::ode::integrate;
use crate::sensitivity::{global_envelopes, local_sensitivity, ParamRanges, SensitivityParam};
use crate::sweep::{preset_scenario, run_sweep_2d, AxisSpec, AxisTarget, Metric};

#[derive(Debug, Parser)]
#[command(
    name = "protest-dynamics",
    version,
    about = "Deterministic simulator of police-protester interaction dynamics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario file and write its trajectory CSV.
    Simulate(SimulateArgs),
    /// Run a named preset scenario (see `case-study --help` for ids).
    CaseStudy(CaseStudyArgs),
    /// Global (Monte Carlo envelope) and local (finite difference)
    /// sensitivity analyses.
    #[command(subcommand)]
    Sensitivity(SensitivityCommand),
    /// 2D parameter sweep producing a long-format CSV and optional SVG heat
    /// map.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Discrete,
    Ode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Police,
    Protester,
}

impl MetricArg {
    fn metric(self) -> Metric {
        match self {
            MetricArg::Police => Metric::PoliceAofa,
            MetricArg::Protester => Metric::ProtesterAofa,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scenario document (TOML).
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Ode)]
    pub method: Method,
    /// Override the discrete step.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Override the integrator step.
    #[arg(long = "h")]
    pub h: Option<f64>,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CaseStudyArgs {
    /// Preset id: cs1i, cs1ii, cs2i, cs2ii, heatmap-A20, heatmap-A40,
    /// heatmap-A50, entrance-T1-0.1, entrance-T1-0.01, entrance-T1-0.5.
    pub id: String,
    #[arg(long, value_enum, default_value_t = Method::Ode)]
    pub method: Method,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long = "h")]
    pub h: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum SensitivityCommand {
    /// Monte Carlo envelopes over the default parameter ranges.
    Global {
        #[arg(long)]
        scenario: PathBuf,
        /// Number of parameter draws.
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Central finite-difference sensitivities on the recording grid.
    Local {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = 1e-4)]
        rel_step: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Heat-map preset id (carries its own axes).
    #[arg(long, conflicts_with_all = ["scenario", "axis1", "axis2"])]
    pub preset: Option<String>,
    /// Scenario document; requires --axis1 and --axis2.
    #[arg(long, requires = "axis1", requires = "axis2")]
    pub scenario: Option<PathBuf>,
    /// First axis as target:start:step:stop (targets: tau_c, v_c,
    /// initial_agitators, entrance_time).
    #[arg(long)]
    pub axis1: Option<String>,
    #[arg(long)]
    pub axis2: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
    /// Also render the grid as an SVG heat map.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MetricArg::Police)]
    pub metric: MetricArg,
}

fn read_scenario(path: &Path) -> Result<Scenario> {
    let text = fs::read_to_string(path)?;
    parse_scenario(&text)
}

fn apply_step_overrides(scenario: &mut Scenario, dt: Option<f64>, h: Option<f64>) -> Result<()> {
    if let Some(dt) = dt {
        scenario.settings.dt = dt;
    }
    if let Some(h) = h {
        scenario.settings.h = h;
    }
    scenario.settings.validate()
}

fn run_method(scenario: &Scenario, method: Method) -> Result<Trajectory> {
    match method {
        Method::Discrete => run_discrete(scenario),
        Method::Ode => integrate(scenario),
    }
}

fn parse_axis_arg(name: &str, spec: &str) -> Result<AxisSpec> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(Error::validation(
            name,
            format!("expected target:start:step:stop, got `{spec}`"),
        ));
    }
    let target = AxisTarget::parse(parts[0])?;
    let number = |what: &str, field: &str| -> Result<f64> {
        field
            .parse()
            .map_err(|_| Error::validation(name, format!("{what} `{field}` is not a number")))
    };
    AxisSpec::from_range(
        target,
        number("start", parts[1])?,
        number("step", parts[2])?,
        number("stop", parts[3])?,
    )
}

/// Time grid matching the scenario's recording grid.
fn recording_grid(scenario: &Scenario) -> Vec<f64> {
    let settings = &scenario.settings;
    let max_steps = crate::discrete::steps_to_horizon(settings.t_max, settings.h);
    (0..=max_steps)
        .step_by(settings.record_every)
        .map(|k| k as f64 * settings.h)
        .collect()
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(args) => {
            let mut scenario = read_scenario(&args.scenario)?;
            apply_step_overrides(&mut scenario, args.dt, args.h)?;
            let trajectory = run_method(&scenario, args.method)?;
            fs::write(
                &args.out,
                write_trajectory_csv(&trajectory, &scenario.schedule),
            )?;
        }
        Command::CaseStudy(args) => {
            let (mut scenario, _) = preset_scenario(&args.id)?;
            apply_step_overrides(&mut scenario, args.dt, args.h)?;
            let trajectory = run_method(&scenario, args.method)?;
            fs::write(
                &args.out,
                write_trajectory_csv(&trajectory, &scenario.schedule),
            )?;
        }
        Command::Sensitivity(SensitivityCommand::Global {
            scenario,
            n,
            seed,
            out,
        }) => {
            let base = read_scenario(&scenario)?;
            let summary = global_envelopes(&base, &ParamRanges::table_defaults(), n, seed)?;
            fs::write(&out, write_envelope_csv(&summary))?;
        }
        Command::Sensitivity(SensitivityCommand::Local {
            scenario,
            rel_step,
            out,
        }) => {
            let base = read_scenario(&scenario)?;
            let grid = recording_grid(&base);
            let matrix = local_sensitivity(&base, &SensitivityParam::ALL, rel_step, &grid)?;
            fs::write(&out, write_sensitivity_csv(&matrix))?;
        }
        Command::Sweep(args) => {
            let (base, axis1, axis2) = match (&args.preset, &args.scenario) {
                (Some(id), None) => {
                    let (base, axes) = preset_scenario(id)?;
                    let (axis1, axis2) = axes.ok_or_else(|| {
                        Error::validation(
                            "preset",
                            format!("preset `{id}` has no sweep axes; pass --axis1/--axis2 with --scenario"),
                        )
                    })?;
                    (base, axis1, axis2)
                }
                (None, Some(path)) => {
                    let base = read_scenario(path)?;
                    let axis1 = parse_axis_arg("axis1", args.axis1.as_deref().unwrap())?;
                    let axis2 = parse_axis_arg("axis2", args.axis2.as_deref().unwrap())?;
                    (base, axis1, axis2)
                }
                _ => {
                    return Err(Error::validation(
                        "sweep",
                        "pass exactly one of --preset or --scenario",
                    ))
                }
            };
            let grid = run_sweep_2d(&base, &axis1, &axis2)?;
            fs::write(&args.out, write_grid_csv(&grid))?;
            if let Some(svg_path) = &args.svg {
                fs::write(svg_path, render_heatmap_svg(&grid, args.metric.metric()))?;
            }
        }
    }
    Ok(())
}
