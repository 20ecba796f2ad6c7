#!/usr/bin/env python3
"""Smoke test for the protest_dynamics extension module.

Builds the cdylib if needed, stages it under an importable name, and
exercises the main types and operations. Exits nonzero on the first failure.
"""

import math
import os
import shutil
import subprocess
import sys
import sysconfig
import tempfile

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def staged_module_dir() -> str:
    lib = os.path.join(REPO_ROOT, "target", "release", "libprotest_dynamics.so")
    if not os.path.exists(lib):
        print("building protest-dynamics-py (release) ...")
        subprocess.run(
            ["cargo", "build", "--release", "-p", "protest-dynamics-py"],
            cwd=REPO_ROOT,
            check=True,
        )
    stage = os.path.join(tempfile.gettempdir(), "protest_dynamics_stage")
    os.makedirs(stage, exist_ok=True)
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(lib, os.path.join(stage, f"protest_dynamics{suffix}"))
    return stage


sys.path.insert(0, staged_module_dir())
import protest_dynamics as pd  # noqa: E402

checks = 0


def check(name: str, ok: bool, detail: str = "") -> None:
    global checks
    checks += 1
    if not ok:
        print(f"FAIL {name}: {detail}")
        sys.exit(1)
    print(f"PASS {name}")


# Presets and the homogeneously moderate crowd.
scenario, axes = pd.preset_scenario("cs1i")
check("preset cs1i loads", scenario.total_protesters() == 500.0 and axes is None)
check(
    "zero-aggression forecast",
    pd.predict_zero_aggression(scenario) == "zero_guaranteed",
)
traj = pd.integrate(scenario)
last = traj.last()
check(
    "cs1i ends aggression-free",
    last.v1 == 0.0 and last.v2 == 0.0 and traj.terminated_by == "protesters_depleted",
    repr(last),
)
check("cs1i is productive", traj.is_productive())

# Discrete and continuum engines agree on the quiet decay.
disc = pd.run_discrete(scenario)
check(
    "discrete engine agrees",
    disc.last().v1 == 0.0 and abs(disc.last().u2 - last.u2) < 0.5,
    f"{disc.last()!r} vs {last!r}",
)

# Hand-built scenario plus hazard arithmetic.
params = pd.ModelParams(
    t1=0.1, t2=0.01, t3=0.1, tau_c=5.0, v_c=15.0, tau_f3=5.0,
    theta=0.2, omega=0.01, epsilon=0.01,
)
state = pd.State(v1=0.0, v2=0.0, u1=100.0, u2=400.0, tau=5.0)
dv1, dv2, du1, du2, dtau = pd.rhs(state, 100.0, params)
check(
    "rhs matches reference",
    abs(dv1 - 0.09900990099009901) < 1e-15 and dv2 == 0.0 and abs(du2 + 4.0) < 1e-12,
    f"dv1={dv1} du2={du2}",
)
stepped = pd.step_discrete(state, params, pd.PoliceSchedule(p0=100.0), 1.0)
check("discrete step matches reference", abs(stepped.u1 - 98.90103909763987) < 1e-9)

u1_bound, u2_bound = pd.analytic_upper_bounds(10.0, state, params)
check(
    "analytic bounds",
    math.isclose(u2_bound, 400.0 * math.exp(-0.1), rel_tol=1e-12),
    f"u2_bound={u2_bound}",
)

# Oversized step surfaces as a runtime error.
try:
    pd.step_discrete(state, params, pd.PoliceSchedule(p0=0.0), 1000.0)
    check("step-size violation raises", False)
except RuntimeError:
    check("step-size violation raises", True)

# Scenario document round-trip.
text = pd.serialize_scenario(scenario)
reparsed = pd.parse_scenario(text)
check(
    "scenario round-trip",
    pd.serialize_scenario(reparsed) == text and reparsed.params.epsilon == 0.02,
)
try:
    pd.parse_scenario(text.replace("omega = 0.01", "omega = -1"))
    check("validation raises ValueError", False)
except ValueError as e:
    check("validation raises ValueError", "omega" in str(e), str(e))

# A small sweep with boundary detection, CSV, and SVG.
base, heat_axes = pd.preset_scenario("heatmap-A20")
check("heatmap preset carries axes", heat_axes is not None)
axis1 = pd.AxisSpec("tau_c", [0.0, 6.0])
axis2 = pd.AxisSpec.from_range("v_c", 0.0, 5.0, 15.0)
grid = pd.run_sweep_2d(base, axis1, axis2)
check("sweep shape", grid.shape == (2, 4), str(grid.shape))
blackout = grid.cell(1, 2)
check(
    "blackout cell is silent",
    blackout.total_police_aofa == 0.0 and blackout.total_protester_aofa == 0.0,
)
boundary = grid.boundary("police", 0.5)
check("boundary pairs found", len(boundary) > 0)
csv = grid.to_csv()
check("grid csv", csv.splitlines()[0].startswith("axis1,axis2,") and len(csv.splitlines()) == 9)
svg = grid.to_svg("protester")
check("grid svg", svg.count('class="cell"') == 8 and "<svg" in svg)

# Envelopes: deterministic for a fixed seed.
small = pd.preset_scenario("cs2i")[0]
settings = small.settings
settings.t_max = 100.0
small.settings = settings
env_a = pd.global_envelopes(small, 12, 7)
env_b = pd.global_envelopes(small, 12, 7)
check("envelopes deterministic", env_a.to_csv() == env_b.to_csv())
check(
    "envelope ordering",
    all(
        lo <= hi
        for lo, hi in zip(env_a.curve("u2", "q05"), env_a.curve("u2", "q95"))
    ),
)

# Local sensitivity: the police intensity is inert in cs1i.
sens = pd.local_sensitivity(pd.preset_scenario("cs1i")[0], [0.0, 50.0, 100.0])
check("T2 column inert", all(v == 0.0 for v in sens.curve("T2", "v2")))
check("sensitivity csv", sens.to_csv().startswith("t,parameter,output,"))

print(f"\nall {checks} smoke checks passed")
