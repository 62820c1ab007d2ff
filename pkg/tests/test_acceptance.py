"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line, printed in the terminal summary under
"acceptance criteria". Reference numbers are the published ones, compared
at their stated tolerances.
"""

import json
import subprocess
import sys
import time

import pytest

import conftest
import test_properties as props
from conftest import corner_char_root
from pcmaxioms.cli import table2_rows
from pcmaxioms.harness import (DEFAULT_N_GRID, DEFAULT_X_LADDER, IndexFunction, build_ri_table,
                               check_axiom6, estimate_ri)
from pcmaxioms.indices import gwi, kii, pli, ric
from pcmaxioms.matrix import corner, elementwise_power, from_upper_triangle
from pcmaxioms.solvers import principal_eigen

PUBLISHED_SWEEP = {
    "x": (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 100),
    "RIC": (0, 0.0474, 0.1011, 0.1391, 0.1658, 0.1853, 0.1999, 0.2113, 0.2204, 0.2279, 0.292),
    "CI": (0, 0.027, 0.068, 0.109, 0.147, 0.184, 0.218, 0.25, 0.28, 0.309, 1.428),
    "GWI": (0, 0.1595, 0.2509, 0.3113, 0.3547, 0.3875, 0.4134, 0.4344, 0.4518, 0.4666, 0.6492),
    "PLI": (0, 0.5, 1.3333, 2.25, 3.2, 4.1667, 5.1429, 6.125, 7.1111, 8.1, 98.1),
    "KII": (0, 0.5, 0.667, 0.75, 0.8, 0.8333, 0.857, 0.875, 0.889, 0.9, 0.99),
    "GCI": (0, 0.1602, 0.4023, 0.6406, 0.8634, 1.07, 1.2622, 1.4414, 1.6093, 1.7676, 7.0692),
}


def record(number, title, failures):
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {number}: {title}"
    if failures:
        line += " -- " + "; ".join(failures)
    conftest.ACCEPTANCE_LINES[number] = line
    print(line)
    assert not failures, line


def test_criterion_1_corner_sweep():
    t0 = time.perf_counter()
    rows = table2_rows(PUBLISHED_SWEEP["x"])
    elapsed = time.perf_counter() - t0
    bad = []
    for k, row in enumerate(rows):
        x = row["x"]
        for col in ("RIC", "CI", "GWI", "PLI", "KII", "GCI"):
            want = PUBLISHED_SWEEP[col][k]
            tol = 0.15 if (col == "PLI" and x == 100) else 5e-3
            if abs(row[col] - want) > tol:
                bad.append(f"{col}(x={x}) = {row[col]:.4f} vs {want}")
    if elapsed >= 1.0:
        bad.append(f"runtime {elapsed:.2f}s >= 1s")
    record(1, f"corner(3, x) sweep vs published values ({elapsed:.3f}s)", bad)


def test_criterion_2_ric_counterexample():
    a = from_upper_triangle(3, (0.1, 0.15, 0.3))
    r1, r2 = ric(a), ric(elementwise_power(a, 2))
    bad = []
    if abs(r1 - 0.047) > 1e-3:
        bad.append(f"RIC(A) = {r1:.5f}")
    if abs(r2 - 0.018) > 1e-3:
        bad.append(f"RIC(A^2) = {r2:.5f}")
    if not r2 < r1:
        bad.append("RIC(A^2) >= RIC(A)")
    record(2, f"RIC(A) = {r1:.4f}, RIC(A^2) = {r2:.4f}", bad)


def test_criterion_3_verdict_table():
    bad = []
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pcmaxioms", "axioms", "all", "--strict",
                           "--format", "json"], capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    if proc.returncode != 0:
        bad.append(f"axioms all --strict exited {proc.returncode}: {proc.stderr.strip()}")
    if elapsed >= 60:
        bad.append(f"runtime {elapsed:.1f}s >= 60s")
    table = json.loads(proc.stdout)["table"] if proc.stdout else {}
    if table.get("KII") != "YYYYYY":
        bad.append(f"KII row {table.get('KII')}")
    for name in ("CI", "PLI", "GCI"):
        if table.get(name, "")[5:] != "N":
            bad.append(f"{name}/A6 not failing")
    # the A6 bound clauses, each checked against an explicit bound of 1
    for name, fn in (("RIC", ric), ("GWI", gwi)):
        v = check_axiom6(IndexFunction(name, fn, bound=1.0))
        if v.outcome != "pass":
            top = max(fn(corner(n, x)) for n in DEFAULT_N_GRID for x in DEFAULT_X_LADDER)
            bad.append(f"{name} A6 with bound 1: {v.outcome} (corner max {top:.4f})")
    record(3, f"verdict table vs reference ({elapsed:.1f}s)", bad)


PROPERTIES = (
    ("EM = GM on consistent (1e-8)", props.test_em_gm_agree_on_consistent),
    ("lambda_max >= n - 1e-9", props.test_lambda_max_at_least_n),
    ("indices 0 on consistent (1e-9)", props.test_indices_vanish_on_consistent),
    ("indices > 0 on perturbed", props.test_indices_positive_on_perturbed),
    ("permutation invariance (1e-9)", props.test_permutation_invariance),
)


def test_criterion_4_properties():
    bad = []
    for label, prop in PROPERTIES:
        assert prop.hypothesis.inner_test  # a hypothesis-wrapped test
        if prop._hypothesis_internal_use_settings.max_examples < 1000:
            bad.append(f"{label}: fewer than 1000 cases")
        try:
            prop()
        except AssertionError as exc:
            bad.append(f"{label}: {str(exc).splitlines()[0]}")
    record(4, "consistency properties, 1000 cases each", bad)


def test_criterion_5_closed_forms():
    bad = []
    for x in (1.1, 2, 5, 10, 100):
        m = corner(3, x)
        if abs(pli(m) - (x + 1 / x - 2)) > 1e-12:
            bad.append(f"PLI(x={x})")
        if abs(kii(m) - (1 - 1 / x)) > 1e-12:
            bad.append(f"KII(x={x})")
        lam = principal_eigen(m).lambda_max
        if abs(lam ** 3 - 3 * lam ** 2 - (x + 1 / x - 2)) > 1e-6:
            bad.append(f"lambda relation (x={x})")
        if abs(lam - corner_char_root(x)) > 1e-9:
            bad.append(f"lambda vs bisection root (x={x})")
    record(5, "closed forms on corner(3, x)", bad)


@pytest.mark.slow
def test_criterion_6_random_index():
    bad = []
    t0 = time.perf_counter()
    table = build_ri_table(range(3, 9), samples=100_000, seed=42)
    ri10 = estimate_ri(10, samples=100_000, seed=42).mean_ci
    elapsed = time.perf_counter() - t0
    vals = [table[n] for n in range(3, 9)]
    if any(b < a for a, b in zip(vals, vals[1:])):
        bad.append(f"not monotone: {vals}")
    if not ri10 < 1.7:
        bad.append(f"R.I.(10) = {ri10:.4f}")
    if build_ri_table(range(3, 9), samples=100_000, seed=42) != table:
        bad.append("same seed gave a different table")
    if elapsed >= 120:
        bad.append(f"runtime {elapsed:.1f}s >= 120s")
    shown = ", ".join(f"{v:.4f}" for v in vals)
    record(6, f"R.I.(3..8) = {shown}; R.I.(10) = {ri10:.4f} ({elapsed:.1f}s)", bad)
