"""Acceptance criteria 1-12, each at its stated tolerance.

A PASS/FAIL line per criterion is printed and collected into the pytest
terminal summary.
"""

import json
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from symwass.assignment import brute_force_assignment, solve_assignment
from symwass.bootstrap import BootstrapConfig, bootstrap_reflection_estimate, bootstrap_variance_bound
from symwass.bounds import BoundConfig, compare_symmetrization_bounds, nemirovski_experiment
from symwass.cli import main
from symwass.rng import substream
from symwass.simgen import GeneratorSpec, gen_gauss_mixture, gen_rademacher
from symwass.symtest import SymTestConfig, mardia_skewness_test, permutation_symmetry_test
from symwass.wasserstein import empirical_wasserstein, sorted_1d_wasserstein

SEED = 20161104
N_GRID = [2, 4, 8, 16, 32, 64, 128, 256]
LEVEL = 0.05
POWER_GRID = [0.5, 0.6, 0.7, 0.8]


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_c01_assignment_exactness():
    rng = np.random.default_rng(SEED)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        m = int(rng.integers(2, 9))
        c = rng.random((m, m))
        worst = max(worst, abs(solve_assignment(c).total_cost - brute_force_assignment(c).total_cost))
    elapsed = time.perf_counter() - t0
    record(1, worst <= 1e-9 and elapsed < 10, f"max |diff| = {worst:.2e}, {elapsed:.1f}s")


def test_c02_one_dimensional_oracle():
    rng = np.random.default_rng(SEED + 2)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(500):
        m = int(rng.integers(1, 65))
        x, y = rng.normal(size=m), rng.normal(size=m)
        for p in (1, 2):
            worst = max(worst, abs(empirical_wasserstein(x, y, p) - sorted_1d_wasserstein(x, y, p)))
    elapsed = time.perf_counter() - t0
    record(2, worst <= 1e-9 and elapsed < 10, f"max |diff| = {worst:.2e}, {elapsed:.1f}s")


def test_c03_order_property():
    rng = np.random.default_rng(SEED + 3)
    worst = -math.inf
    for i in range(200):
        m, d = int(rng.integers(1, 30)), int(rng.integers(1, 6))
        X = rng.normal(size=(m, d))
        Y = rng.standard_t(3, size=(m, d)) + rng.normal()
        metric = ("l1", "l2", "linf")[i % 3]
        worst = max(worst, empirical_wasserstein(X, Y, 1, metric) - empirical_wasserstein(X, Y, 2, metric))
    record(3, worst <= 1e-12, f"max (W1 - W2) = {worst:.2e}")


def test_c04_empirical_upward_bias():
    # mu = U{0,1}, nu = U{0,-1}: every coupling [[a, 1/2-a], [1/2-a, a]] costs
    # 0*a + 1*(1/2-a) + 1*(1/2-a) + 2*a = 1, so W1(mu, nu) = 1 exactly.
    couplings = np.linspace(0, 0.5, 101)
    w1_exact = float(np.min(2 * (0.5 - couplings) + 2 * couplings))
    assert w1_exact == 1.0
    t0 = time.perf_counter()
    vals = []
    for k in range(2000):
        rng = substream(SEED, "c04", k)
        x = rng.integers(0, 2, size=8).astype(float)
        y = -rng.integers(0, 2, size=8).astype(float)
        vals.append(empirical_wasserstein(x, y, 1))
    elapsed = time.perf_counter() - t0
    mean, se = float(np.mean(vals)), float(np.std(vals, ddof=1) / math.sqrt(len(vals)))
    record(4, mean >= w1_exact - 3 * se and elapsed < 30, f"E W1(mu_8, nu_8) = {mean:.4f} (se {se:.4f}), {elapsed:.1f}s")


@pytest.fixture(scope="module")
def bound_tables():
    t0 = time.perf_counter()
    tables = {}
    for kind, metric in (("rademacher", "l1"), ("mixture", "l2")):
        cfg = BoundConfig(metric=metric, p=2, seed=SEED)
        spec = GeneratorSpec(kind, 2)
        tables[kind] = [compare_symmetrization_bounds(spec, n, 2000, cfg) for n in N_GRID]
    return tables, time.perf_counter() - t0


@pytest.mark.parametrize("kind", ["rademacher", "mixture"])
def test_c05_bound_sharpening(bound_tables, kind):
    tables, elapsed = bound_tables
    rep = tables[kind][-1]
    se3 = 3 * rep.mc_std_error
    checks = (rep.new_bound < rep.old_bound, rep.lhs <= rep.new_bound + se3, rep.lhs <= rep.old_bound + se3)
    record(
        5,
        all(checks) and elapsed < 300,
        f"{kind} n=256: lhs {rep.lhs:.4f}, new {rep.new_bound:.4f}, old {rep.old_bound:.4f}, "
        f"se {rep.mc_std_error:.4f}, both tables {elapsed:.0f}s",
    )


def test_c06_correction_decay(bound_tables):
    tables, _ = bound_tables
    C = np.array([r.C_n for r in tables["mixture"]])
    slope = float(np.polyfit(np.log(N_GRID), np.log(C), 1)[0])
    c16, c256 = C[N_GRID.index(16)], C[-1]
    record(6, slope <= -0.4 and c256 < c16, f"log-log slope {slope:.3f} (need <= -0.4); C_16 {c16:.4f}, C_256 {c256:.4f}")


def _power_sim(prob: float, s: int, with_mardia: bool):
    rng = substream(SEED, "power", repr(prob), s)
    X = gen_rademacher(100, 5, prob, rng)
    cfg = SymTestConfig(r=1, m_perms=200, p=1, metric="l1", seed=int(rng.integers(2**63)))
    perm = permutation_symmetry_test(X, cfg).p_value <= LEVEL
    mardia = mardia_skewness_test(X).p_value <= LEVEL if with_mardia else None
    return perm, mardia


def test_c07_null_calibration():
    t0 = time.perf_counter()
    rejections = []
    for s in range(300):
        rng = substream(SEED, "null", s)
        X = gen_rademacher(100, 5, 0.5, rng)
        cfg = SymTestConfig(r=1, m_perms=200, seed=int(rng.integers(2**63)))
        rejections.append(permutation_symmetry_test(X, cfg).p_value <= LEVEL)
    rate = float(np.mean(rejections))
    elapsed = time.perf_counter() - t0
    record(7, 0.02 <= rate <= 0.09 and elapsed < 600, f"rejection rate {rate:.3f} at level {LEVEL}, {elapsed:.0f}s")


@pytest.fixture(scope="module")
def power_curve():
    out = {}
    for prob in POWER_GRID:
        sims = [_power_sim(prob, s, prob == 0.8) for s in range(200)]
        out[prob] = (float(np.mean([p for p, _ in sims])), sims)
    return out


def test_c08_power(power_curve):
    powers = [power_curve[p][0] for p in POWER_GRID]
    monotone = all(b >= a - 0.05 for a, b in zip(powers, powers[1:]))
    record(8, powers[-1] >= 0.8 and monotone, "power " + ", ".join(f"p={p}: {w:.3f}" for p, w in zip(POWER_GRID, powers)))


def test_c09_mardia_baseline(power_curve):
    df = mardia_skewness_test(gen_rademacher(100, 5, 0.5, 1)).df
    antipodal = mardia_skewness_test([[-1.0], [1.0]]).statistic
    perm_power, sims = power_curve[0.8]
    mardia_power = float(np.mean([m for _, m in sims]))
    ok = df == 35 and antipodal == 0.0 and mardia_power <= perm_power + 0.05
    record(9, ok, f"df {df}, antipodal statistic {antipodal}, Mardia power {mardia_power:.3f} vs permutation {perm_power:.3f}")


@pytest.mark.parametrize("p", [2, 1])
def test_c10_bootstrap_variance(p):
    X = gen_gauss_mixture(64, 2, substream(SEED, "c10"))

    def variance(m):
        cfg = BootstrapConfig(m=m, r=200, p=p, metric="l2", seed=SEED + m)
        return bootstrap_reflection_estimate(X, cfg).empirical_variance

    v32, bound = variance(32), bootstrap_variance_bound(X, 32, "l2")
    v16, v64 = variance(16), variance(64)
    ok = v32 <= 1.5 * bound and v64 <= 1.2 * v16
    record(10, ok, f"p={p}: var(m=32) {v32:.4f} <= 1.5*C^2/(2m) = {1.5 * bound:.4f}; var(64) {v64:.4f} vs var(16) {v16:.4f}")


def test_c11_nemirovski():
    rep = nemirovski_experiment(n=10, d=25, alpha=0.5, reps=2000, w2_m=5, seed=SEED)
    floor = rep.lhs - 3 * rep.mc_std_error
    ok = rep.new_bound < rep.old_bound and rep.old_bound >= floor and rep.new_bound >= floor
    record(11, ok, f"lhs {rep.lhs:.4f}, new {rep.new_bound:.4f}, old {rep.old_bound:.4f}, W2 {rep.w2:.4f}")


def _cli_bytes(capsys, argv):
    assert main(argv) == 0
    return capsys.readouterr().out.encode()


def test_c12_cli_determinism(tmp_path, capsys):
    data = tmp_path / "data.csv"
    assert main(["gen", "--kind", "rademacher", "--p", "0.7", "--n", "30", "--d", "3", "--seed", "4", "--out", str(data)]) == 0
    commands = {
        "gen": ["gen", "--kind", "mixture", "--n", "20", "--d", "3", "--seed", "11"],
        "symtest": ["symtest", "--input", str(data), "--r", "4", "--m-perms", "25", "--seed", "11"],
        "bound": ["bound", "--generator", "rademacher", "--metric", "l1", "--n-grid", "4,16", "--reps", "12", "--seed", "11"],
        "power": ["power", "--p-grid", "0.5,0.7", "--n", "20", "--sims", "6", "--m-perms", "20", "--with-mardia", "--seed", "11"],
        "nemirovski": ["nemirovski", "--d-grid", "5", "--alpha-grid", "0.5,2", "--reps", "12", "--seed", "11"],
    }
    mismatched = []
    for name, argv in commands.items():
        first = _cli_bytes(capsys, argv)
        again = _cli_bytes(capsys, argv)
        parallel = _cli_bytes(capsys, argv + ["--workers", "3"])
        if not (first == again == parallel):
            mismatched.append(name)
        if name != "gen":
            json.loads(first)
    record(12, not mismatched, f"{len(commands)} subcommands byte-identical across reruns and worker counts"
           + (f"; mismatched: {mismatched}" if mismatched else ""))
