//! End-to-end checks of the command-line surface and its exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use protest_dynamics::io::serialize_scenario;
use protest_dynamics::preset_scenario;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_protest-dynamics"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("protest-dynamics-cli-{name}"));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn scenario_file(dir: &Path, id: &str) -> PathBuf {
    let (scenario, _) = preset_scenario(id).unwrap();
    let path = dir.join(format!("{id}.toml"));
    fs::write(&path, serialize_scenario(&scenario)).unwrap();
    path
}

#[test]
fn case_study_writes_trajectory_csv() {
    let dir = workdir("case-study");
    let out = dir.join("cs1i.csv");
    let output = run(bin().args(["case-study", "cs1i", "--out"]).arg(&out));
    assert!(output.status.success(), "{output:?}");
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("t,v1,v2,u1,u2,tau,p\n"));
    assert!(csv.lines().count() > 2);
}

#[test]
fn simulate_runs_both_methods_on_a_scenario_file() {
    let dir = workdir("simulate");
    let scenario = scenario_file(&dir, "cs2i");
    for method in ["discrete", "ode"] {
        let out = dir.join(format!("{method}.csv"));
        let output = run(bin()
            .args(["simulate", "--method", method, "--scenario"])
            .arg(&scenario)
            .arg("--out")
            .arg(&out));
        assert!(output.status.success(), "{method}: {output:?}");
        let csv = fs::read_to_string(&out).unwrap();
        let last = csv.lines().last().unwrap();
        let protesters: f64 = last.split(',').nth(3).unwrap().parse::<f64>().unwrap()
            + last.split(',').nth(4).unwrap().parse::<f64>().unwrap();
        assert!(protesters < 1.0);
    }
}

#[test]
fn step_overrides_are_honored() {
    let dir = workdir("overrides");
    let scenario = scenario_file(&dir, "cs1i");
    let out = dir.join("coarse.csv");
    let output = run(bin()
        .args(["simulate", "--method", "discrete", "--dt", "1.0", "--scenario"])
        .arg(&scenario)
        .arg("--out")
        .arg(&out));
    assert!(output.status.success());
    let csv = fs::read_to_string(&out).unwrap();
    // record_every = 100 at dt = 1: samples land on multiples of 100.
    assert!(csv.lines().nth(2).unwrap().starts_with("100,"));
}

#[test]
fn invalid_scenario_exits_1_and_names_the_field() {
    let dir = workdir("invalid");
    let (scenario, _) = preset_scenario("cs1i").unwrap();
    let path = dir.join("bad.toml");
    fs::write(
        &path,
        serialize_scenario(&scenario).replace("u2 = 500.0", "u2 = -5.0"),
    )
    .unwrap();
    let out = dir.join("never.csv");
    let output = run(bin()
        .args(["simulate", "--scenario"])
        .arg(&path)
        .arg("--out")
        .arg(&out));
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("u2"));
    assert!(!out.exists());
}

#[test]
fn unknown_preset_exits_1_listing_ids() {
    let dir = workdir("unknown-preset");
    let output = run(bin()
        .args(["case-study", "bogus", "--out"])
        .arg(dir.join("x.csv")));
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("bogus") && stderr.contains("cs1i"));
}

#[test]
fn step_size_violation_exits_2() {
    let dir = workdir("step-size");
    let scenario = scenario_file(&dir, "cs1i");
    let output = run(bin()
        .args(["simulate", "--method", "discrete", "--dt", "100", "--scenario"])
        .arg(&scenario)
        .arg("--out")
        .arg(dir.join("x.csv")));
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("loss fraction"));
}

#[test]
fn argument_misuse_exits_1() {
    let output = run(bin().args(["simulate", "--no-such-flag"]));
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn sweep_with_explicit_axes_writes_csv_and_svg() {
    let dir = workdir("sweep");
    let scenario = scenario_file(&dir, "cs2i");
    let out = dir.join("grid.csv");
    let svg = dir.join("grid.svg");
    let output = run(bin()
        .args(["sweep", "--scenario"])
        .arg(&scenario)
        .args(["--axis1", "tau_c:0:5:10", "--axis2", "v_c:0:5:15", "--metric", "protester"])
        .arg("--out")
        .arg(&out)
        .arg("--svg")
        .arg(&svg));
    assert!(output.status.success(), "{output:?}");
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 4);
    assert!(csv.starts_with("axis1,axis2,police_aofa,protester_aofa,peak_agitators,duration,productive\n"));
    let svg_text = fs::read_to_string(&svg).unwrap();
    assert_eq!(svg_text.matches("class=\"cell\"").count(), 12);
}

#[test]
fn sweep_preset_without_axes_is_rejected() {
    let dir = workdir("sweep-no-axes");
    let output = run(bin()
        .args(["sweep", "--preset", "cs1i", "--out"])
        .arg(dir.join("x.csv")));
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("no sweep axes"));
}

#[test]
fn sensitivity_commands_write_expected_headers() {
    let dir = workdir("sensitivity");
    let scenario = scenario_file(&dir, "cs1i");
    let env_out = dir.join("env.csv");
    let output = run(bin()
        .args(["sensitivity", "global", "--n", "8", "--seed", "5", "--scenario"])
        .arg(&scenario)
        .arg("--out")
        .arg(&env_out));
    assert!(output.status.success(), "{output:?}");
    assert!(fs::read_to_string(&env_out)
        .unwrap()
        .starts_with("t,output,min,q05,mean,q95,max,sd\n"));

    let local_out = dir.join("local.csv");
    let output = run(bin()
        .args(["sensitivity", "local", "--scenario"])
        .arg(&scenario)
        .arg("--out")
        .arg(&local_out));
    assert!(output.status.success(), "{output:?}");
    assert!(fs::read_to_string(&local_out)
        .unwrap()
        .starts_with("t,parameter,output,sensitivity,scaled,flagged\n"));
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let dir = workdir("determinism");
    let scenario = scenario_file(&dir, "cs2i");
    let mut outputs = Vec::new();
    for run_index in 0..2 {
        let out = dir.join(format!("env{run_index}.csv"));
        let output = run(bin()
            .args(["sensitivity", "global", "--n", "16", "--seed", "9", "--scenario"])
            .arg(&scenario)
            .arg("--out")
            .arg(&out));
        assert!(output.status.success());
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}
