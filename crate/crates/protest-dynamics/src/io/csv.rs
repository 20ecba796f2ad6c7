//! CSV writers. Reals are serialized with Rust's shortest round-trip
//! formatting, so re-parsing a document reproduces the binary values
//! exactly.

use std::fmt::Write;

use crate::discrete::Trajectory;
use crate::model::PoliceSchedule;
use crate::sensitivity::{EnvelopeSummary, SensitivityMatrix, OUTPUT_NAMES};
use crate::sweep::SweepGrid;

/// One row per sample; the police column is recomputed from the schedule at
/// each sample.
pub fn write_trajectory_csv(trajectory: &Trajectory, schedule: &PoliceSchedule) -> String {
    let mut out = String::from("t,v1,v2,u1,u2,tau,p\n");
    for s in &trajectory.samples {
        let p = schedule.presence(s.t, s);
        writeln!(out, "{},{},{},{},{},{},{}", s.t, s.v1, s.v2, s.u1, s.u2, s.tau, p).unwrap();
    }
    out
}

/// Long-format grid export, row-major in (axis1, axis2) order.
pub fn write_grid_csv(grid: &SweepGrid) -> String {
    let mut out = String::from(
        "axis1,axis2,police_aofa,protester_aofa,peak_agitators,duration,productive\n",
    );
    for (i, a) in grid.axis1.values.iter().enumerate() {
        for (j, b) in grid.axis2.values.iter().enumerate() {
            let cell = grid.cell(i, j);
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                a,
                b,
                cell.total_police_aofa,
                cell.total_protester_aofa,
                cell.peak_agitators,
                cell.duration,
                cell.productive
            )
            .unwrap();
        }
    }
    out
}

/// Envelope statistics, one row per (time, output) pair.
pub fn write_envelope_csv(summary: &EnvelopeSummary) -> String {
    let mut out = String::from("t,output,min,q05,mean,q95,max,sd\n");
    for (time_index, t) in summary.times.iter().enumerate() {
        for (output, name) in OUTPUT_NAMES.iter().enumerate() {
            let s = &summary.stats[time_index][output];
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                t, name, s.min, s.q05, s.mean, s.q95, s.max, s.sd
            )
            .unwrap();
        }
    }
    out
}

/// Local sensitivity entries, one row per (time, parameter, output) triple.
pub fn write_sensitivity_csv(matrix: &SensitivityMatrix) -> String {
    let mut out = String::from("t,parameter,output,sensitivity,scaled,flagged\n");
    for (time_index, t) in matrix.times.iter().enumerate() {
        for (param_index, param) in matrix.params.iter().enumerate() {
            for (output, name) in OUTPUT_NAMES.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    t,
                    param.name(),
                    name,
                    matrix.entries[time_index][param_index][output],
                    matrix.scaled[time_index][param_index][output],
                    matrix.flagged[param_index]
                )
                .unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::{run_discrete, TerminationReason, Trajectory};
    use crate::sweep::{preset_scenario, run_sweep_2d, AxisSpec, AxisTarget};

    #[test]
    fn empty_trajectory_yields_header_only() {
        let traj = Trajectory {
            samples: vec![],
            terminated_by: TerminationReason::HorizonReached,
        };
        let csv = write_trajectory_csv(&traj, &PoliceSchedule::new(100.0, 0.0));
        assert_eq!(csv, "t,v1,v2,u1,u2,tau,p\n");
    }

    #[test]
    fn row_count_is_samples_plus_header() {
        let (sc, _) = preset_scenario("cs1i").unwrap();
        let traj = run_discrete(&sc).unwrap();
        let csv = write_trajectory_csv(&traj, &sc.schedule);
        assert_eq!(csv.lines().count(), traj.samples.len() + 1);
    }

    #[test]
    fn reparsing_reproduces_samples_exactly() {
        let (sc, _) = preset_scenario("cs2i").unwrap();
        let traj = run_discrete(&sc).unwrap();
        let csv = write_trajectory_csv(&traj, &sc.schedule);
        for (line, sample) in csv.lines().skip(1).zip(&traj.samples) {
            let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
            assert_eq!(fields[0], sample.t);
            assert_eq!(fields[1], sample.v1);
            assert_eq!(fields[2], sample.v2);
            assert_eq!(fields[3], sample.u1);
            assert_eq!(fields[4], sample.u2);
            assert_eq!(fields[5], sample.tau);
        }
    }

    #[test]
    fn grid_rows_are_sorted_row_major() {
        let (base, _) = preset_scenario("cs2i").unwrap();
        let axis1 = AxisSpec::new(AxisTarget::TauC, vec![0.0, 5.0]).unwrap();
        let axis2 = AxisSpec::new(AxisTarget::VC, vec![1.0, 2.0]).unwrap();
        let grid = run_sweep_2d(&base, &axis1, &axis2).unwrap();
        let csv = write_grid_csv(&grid);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        let keys: Vec<(f64, f64)> = lines[1..]
            .iter()
            .map(|line| {
                let mut it = line.split(',');
                (
                    it.next().unwrap().parse().unwrap(),
                    it.next().unwrap().parse().unwrap(),
                )
            })
            .collect();
        assert_eq!(keys, vec![(0.0, 1.0), (0.0, 2.0), (5.0, 1.0), (5.0, 2.0)]);
        for line in &lines[1..] {
            let productive = line.split(',').next_back().unwrap();
            assert!(productive == "true" || productive == "false");
        }
    }
}
