"""Empirical axiom checks for inconsistency indices, and Monte Carlo R.I.

Every check is a deterministic function of its arguments. Trial ``t`` of
axiom ``k`` draws from ``numpy.random.default_rng([seed, k, t])``, so trials
are independent of each other and of execution order.

A ``fail`` verdict always carries a :class:`Counterexample` that can be
replayed on its own with :meth:`Counterexample.still_violates`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import indices
from .indices import RiTable, ci_from_lambda
from .matrix import (ComparisonMatrix, elementwise_power, from_upper_triangle,
                     from_weights, corner, is_consistent, permute, perturb_entry,
                     upper_index)
from .solvers import ConvergenceError, power_iteration

AXIOMS = ("A1", "A2", "A3", "A4", "A5", "A6")
ZERO_TOL = 1e-9
SLACK = 1e-9
FLAT = 1e-12
DIVERGENCE_THRESHOLD = 100.0

SAATY_SCALE = np.array([1 / 9, 1 / 8, 1 / 7, 1 / 6, 1 / 5, 1 / 4, 1 / 3, 1 / 2,
                        1, 2, 3, 4, 5, 6, 7, 8, 9])

DEFAULT_TRIALS = 1000
DEFAULT_B_GRID = (1.5, 2.0, 3.0)
DEFAULT_DELTA_GRID = (0.1, 0.25, 0.5, 0.75, 0.9, 1.0, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0)
DEFAULT_EPS_LADDER = (1e-2, 1e-4, 1e-6)
DEFAULT_N_GRID = (3, 4, 5, 6, 7)
DEFAULT_X_LADDER = tuple(10.0 ** k for k in range(1, 13))
N_RANGE = (3, 7)

# counterexample to Axiom 3 for RIC: RIC(A) ~ 0.047 > RIC(A^2) ~ 0.018
RIC_POWER_WITNESS = from_upper_triangle(3, (0.1, 0.15, 0.3))

REFERENCE_VERDICTS = {
    "CI":  "YYYYYN",
    "GWI": "YYN?YY",
    "GCI": "YYYYYN",
    "PLI": "YYYYYN",
    "RIC": "YYNYYY",
    "KII": "YYYYYY",
}
NOT_ASSERTED = {("GWI", "A4")}
SYMBOL = {"pass": "Y", "fail": "N", "inconclusive": "?"}


@dataclass(frozen=True)
class IndexFunction:
    name: str
    fn: Callable[[ComparisonMatrix], float]
    bound: float | None = None  # proven upper bound, used by the Axiom 6 check

    def __call__(self, m: ComparisonMatrix) -> float:
        return float(self.fn(m))


STANDARD_INDICES = {
    "CI": IndexFunction("CI", indices.ci),
    "GWI": IndexFunction("GWI", indices.gwi, bound=2.0),
    "GCI": IndexFunction("GCI", indices.gci),
    "PLI": IndexFunction("PLI", indices.pli),
    "RIC": IndexFunction("RIC", indices.ric, bound=1.0),
    "KII": IndexFunction("KII", indices.kii, bound=1.0),
}


def _a4_bad(f_a: float, f_b: float, d_a: float, d_b: float) -> bool:
    # d_a < d_b; above 1 the index may not drop, below 1 it may not rise
    if d_a >= 1.0:
        return f_b < f_a - SLACK
    return f_b > f_a + SLACK


def _shrinks(d: Sequence[float]) -> bool:
    return all(nxt <= prev / 2 or nxt <= FLAT for prev, nxt in zip(d, d[1:]))


def _scaled_entry(m: ComparisonMatrix, i: int, j: int, factor: float) -> ComparisonMatrix:
    a = m.entries.copy()
    a[i, j] *= factor
    a[j, i] = 1.0 / a[i, j]
    return ComparisonMatrix._trusted(a)


def _ladder(f, m: ComparisonMatrix, i: int, j: int, eps: Sequence[float]) -> list[float]:
    base = f(m)
    return [max(abs(f(_scaled_entry(m, i, j, 1 + e)) - base),
                abs(f(_scaled_entry(m, i, j, 1 / (1 + e))) - base)) for e in eps]


def _diverges(v: Sequence[float]) -> bool:
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        return True
    return bool(v.max() > DIVERGENCE_THRESHOLD and (v[-1] - v[-2]) > 0.01 * abs(v[-2]))


def _levels_off(v: Sequence[float], bound: float | None) -> bool:
    """Below the bound everywhere, with increments shrinking over the top half."""
    v = np.asarray(v, dtype=float)
    if bound is None or not np.all(np.isfinite(v)) or v.max() > bound + FLAT:
        return False
    inc = np.diff(v[len(v) // 2 - 1:])
    return bool(np.all(np.diff(inc) <= FLAT))


def _corner_series(f, n: int, xs: Sequence[float]) -> list[float]:
    out = []
    for x in xs:
        try:
            with np.errstate(over="raise", invalid="raise"):
                out.append(f(corner(n, x)))
        except (OverflowError, FloatingPointError, ConvergenceError):
            out.append(math.inf)
    return out


@dataclass(frozen=True)
class Counterexample:
    axiom: str
    matrix: ComparisonMatrix
    transform: dict
    observed: dict

    def describe(self) -> str:
        t = ", ".join(f"{k}={v}" for k, v in self.transform.items())
        o = ", ".join(f"{k}={_short(v)}" for k, v in self.observed.items())
        return f"{self.axiom}: {t}; observed {o}; matrix {self.matrix.tolist()}"

    def still_violates(self, f) -> bool:
        """Re-evaluate ``f`` from scratch and confirm the violation."""
        m, t = self.matrix, self.transform
        if self.axiom == "A1":
            v = f(m)
            if t["kind"] == "consistent-nonzero":
                return is_consistent(m) and v > ZERO_TOL
            return not is_consistent(m) and v <= ZERO_TOL
        if self.axiom == "A2":
            v, w = f(m), f(permute(m, t["sigma"]))
            return abs(w - v) > SLACK * max(1.0, abs(v))
        if self.axiom == "A3":
            return f(elementwise_power(m, t["b"])) < f(m) - SLACK
        if self.axiom == "A4":
            i, j, da, db = t["i"], t["j"], t["delta_a"], t["delta_b"]
            fa = f(perturb_entry(m, i, j, da)) if da != 1 else f(m)
            fb = f(perturb_entry(m, i, j, db)) if db != 1 else f(m)
            return _a4_bad(fa, fb, da, db)
        if self.axiom == "A5":
            return not _shrinks(_ladder(f, m, t["i"], t["j"], t["eps"]))
        if self.axiom == "A6":
            return _diverges(_corner_series(f, t["n"], t["x"]))
        raise ValueError(self.axiom)


def _short(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    return str(v)


@dataclass(frozen=True)
class AxiomVerdict:
    index_name: str
    axiom_id: str
    outcome: str  # "pass" | "fail" | "inconclusive"
    trials: int
    seed: int | None
    counterexample: Counterexample | None = None
    note: str = ""

    @property
    def symbol(self) -> str:
        return SYMBOL[self.outcome]

    def to_json(self) -> dict:
        out = {"index": self.index_name, "axiom": self.axiom_id, "outcome": self.outcome,
               "trials": self.trials, "seed": self.seed, "note": self.note}
        if self.counterexample is not None:
            c = self.counterexample
            out["counterexample"] = {"matrix": c.matrix.tolist(), "transform": c.transform,
                                     "observed": c.observed}
        return out


# -- random matrices ----------------------------------------------------------

@dataclass(frozen=True)
class LogUniform:
    low: float
    high: float

    def __post_init__(self):
        if not (0 < self.low < self.high and math.isfinite(self.high)):
            raise ValueError(f"invalid log-uniform range [{self.low}, {self.high}]")

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        return np.exp(rng.uniform(math.log(self.low), math.log(self.high), size))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _draw(scale, rng: np.random.Generator, size) -> np.ndarray:
    if isinstance(scale, str):
        if scale.lower() != "saaty":
            raise ValueError(f"unknown scale {scale!r}")
        return rng.choice(SAATY_SCALE, size=size)
    return scale.sample(rng, size)


def random_reciprocal(n: int, scale="saaty", seed=None) -> ComparisonMatrix:
    """Upper triangle i.i.d. from ``scale``: "saaty" (17 values 1/9..9) or a LogUniform."""
    if n < 2:
        raise ValueError("order must be at least 2")
    rng = _rng(seed)
    return from_upper_triangle(n, _draw(scale, rng, n * (n - 1) // 2))


def random_weights(n: int, rng: np.random.Generator, spread: float = 9.0) -> np.ndarray:
    return np.exp(rng.uniform(-math.log(spread), math.log(spread), n))


def _consistent_with_cell(rng: np.random.Generator, min_log: float = 0.1):
    """A consistent matrix and an off-diagonal cell with |ln a_ij| >= min_log."""
    while True:
        n = int(rng.integers(N_RANGE[0], N_RANGE[1] + 1))
        m = from_weights(random_weights(n, rng))
        i, j = (int(v) for v in rng.choice(n, 2, replace=False))
        if abs(math.log(m[i, j])) >= min_log:
            return m, i, j


def _random_matrix(rng: np.random.Generator) -> ComparisonMatrix:
    n = int(rng.integers(N_RANGE[0], N_RANGE[1] + 1))
    return random_reciprocal(n, "saaty", rng)


def _trial_rng(seed: int, axiom: int, t: int) -> np.random.Generator:
    return np.random.default_rng([seed, axiom, t])


# -- axiom checks -------------------------------------------------------------

def check_axiom1(f: IndexFunction, trials: int = DEFAULT_TRIALS, seed: int = 42) -> AxiomVerdict:
    """Zero on consistent matrices, positive on single-entry perturbations of them."""
    for t in range(trials):
        rng = _trial_rng(seed, 1, t)
        m, i, j = _consistent_with_cell(rng)
        v = f(m)
        if v > ZERO_TOL:
            return AxiomVerdict(f.name, "A1", "fail", t + 1, seed, Counterexample(
                "A1", m, {"kind": "consistent-nonzero"}, {"value": v}))
        for delta in (2.0, 0.5):
            p = perturb_entry(m, i, j, delta)
            v = f(p)
            if v <= ZERO_TOL:
                return AxiomVerdict(f.name, "A1", "fail", t + 1, seed, Counterexample(
                    "A1", p, {"kind": "inconsistent-zero", "i": i, "j": j, "delta": delta},
                    {"value": v}))
    return AxiomVerdict(f.name, "A1", "pass", trials, seed)


def check_axiom2(f: IndexFunction, trials: int = DEFAULT_TRIALS, seed: int = 42,
                 identity_only: bool = False) -> AxiomVerdict:
    """Invariance under relabelling the alternatives."""
    for t in range(trials):
        rng = _trial_rng(seed, 2, t)
        m = _random_matrix(rng)
        sigma = list(range(m.n)) if identity_only else rng.permutation(m.n).tolist()
        v, w = f(m), f(permute(m, sigma))
        if abs(w - v) > SLACK * max(1.0, abs(v)):
            return AxiomVerdict(f.name, "A2", "fail", t + 1, seed, Counterexample(
                "A2", m, {"sigma": sigma}, {"original": v, "permuted": w}))
    return AxiomVerdict(f.name, "A2", "pass", trials, seed)


def check_axiom3(f: IndexFunction, trials: int = DEFAULT_TRIALS, seed: int = 42,
                 b_grid: Sequence[float] = DEFAULT_B_GRID,
                 probes: Iterable[tuple[ComparisonMatrix, float]] = ((RIC_POWER_WITNESS, 2.0),),
                 ) -> AxiomVerdict:
    """Intensifying all preferences (a_ij -> a_ij^b, b > 1) must not lower the index.

    Known counterexample candidates in ``probes`` are tried before the random
    search, so a failing index reports the textbook witness when there is one.
    """
    if any(b <= 1 for b in b_grid):
        raise ValueError("every b in b_grid must exceed 1")

    def attempt(m, b, t):
        v, w = f(m), f(elementwise_power(m, b))
        if w < v - SLACK:
            return AxiomVerdict(f.name, "A3", "fail", t, seed, Counterexample(
                "A3", m, {"b": b}, {"original": v, "powered": w}))
        return None

    for m, b in probes:
        if (hit := attempt(m, b, 0)) is not None:
            return hit
    for t in range(trials):
        m = _random_matrix(_trial_rng(seed, 3, t))
        for b in b_grid:
            if (hit := attempt(m, b, t + 1)) is not None:
                return hit
    return AxiomVerdict(f.name, "A3", "pass", trials, seed)


def check_axiom4(f: IndexFunction, trials: int = DEFAULT_TRIALS, seed: int = 42,
                 delta_grid: Sequence[float] = DEFAULT_DELTA_GRID) -> AxiomVerdict:
    """Moving one entry of a consistent matrix further away (a_ij -> a_ij^delta)
    never lowers the index: nondecreasing for delta > 1, nonincreasing below."""
    deltas = sorted(set(delta_grid) | {1.0})
    if deltas[0] >= 1 or deltas[-1] <= 1:
        raise ValueError("delta_grid must span both sides of 1")
    for t in range(trials):
        m, i, j = _consistent_with_cell(_trial_rng(seed, 4, t))
        vals = [f(m) if d == 1.0 else f(perturb_entry(m, i, j, d)) for d in deltas]
        for (da, fa), (db, fb) in zip(zip(deltas, vals), zip(deltas[1:], vals[1:])):
            if _a4_bad(fa, fb, da, db):
                return AxiomVerdict(f.name, "A4", "fail", t + 1, seed, Counterexample(
                    "A4", m, {"i": i, "j": j, "delta_a": da, "delta_b": db},
                    {"value_a": fa, "value_b": fb}))
    return AxiomVerdict(f.name, "A4", "pass", trials, seed)


def _steepest_point(f, m: ComparisonMatrix, i: int, j: int, depth: int = 25) -> ComparisonMatrix:
    """Walk a_ij over [a/e, a*e] and bisect towards the largest change in f."""
    def at(t):
        return _scaled_entry(m, i, j, math.exp(t))

    ts = np.linspace(-1.0, 1.0, 9)
    g = [f(at(t)) for t in ts]
    k = int(np.argmax(np.abs(np.diff(g))))
    lo, hi, glo, ghi = ts[k], ts[k + 1], g[k], g[k + 1]
    for _ in range(depth):
        mid = 0.5 * (lo + hi)
        gm = f(at(mid))
        if abs(gm - glo) >= abs(ghi - gm):
            hi, ghi = mid, gm
        else:
            lo, glo = mid, gm
    return at(lo)


def check_axiom5(f: IndexFunction, trials: int = DEFAULT_TRIALS, seed: int = 42,
                 eps_ladder: Sequence[float] = DEFAULT_EPS_LADDER) -> AxiomVerdict:
    """Continuity by sampling: |f(a_ij (1 +- eps)) - f(a_ij)| must vanish with eps.

    Each trial probes a random matrix and, along the same entry, the point
    where f changes fastest (found by bisection), which is where a jump
    would sit. Passing means no discontinuity was detected, nothing more.
    """
    eps = list(eps_ladder)
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("eps_ladder must be strictly decreasing")
    flat = True
    for t in range(trials):
        rng = _trial_rng(seed, 5, t)
        m = _random_matrix(rng)
        i, j = (int(v) for v in rng.choice(m.n, 2, replace=False))
        for base in (m, _steepest_point(f, m, i, j)):
            d = _ladder(f, base, i, j, eps)
            if not _shrinks(d):
                return AxiomVerdict(f.name, "A5", "fail", t + 1, seed, Counterexample(
                    "A5", base, {"i": i, "j": j, "eps": eps}, {"d": d}))
            flat = flat and max(d) <= FLAT
    if flat:
        return AxiomVerdict(f.name, "A5", "inconclusive", trials, seed,
                            note="index constant at every sampled point")
    return AxiomVerdict(f.name, "A5", "pass", trials, seed, note="no discontinuity detected")


def check_axiom6(f: IndexFunction, n_grid: Sequence[int] = DEFAULT_N_GRID,
                 x_ladder: Sequence[float] = DEFAULT_X_LADDER) -> AxiomVerdict:
    """Upper boundary, probed on corner matrices with x growing geometrically.

    fail: some order shows values above the divergence threshold still
    growing by more than 1% at the top of the ladder (or overflowing).
    pass: the index has a declared bound, never exceeds it, and its
    increments shrink over the upper half of the ladder for every order.
    """
    xs = list(x_ladder)
    if len(xs) < 4 or any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("x_ladder must be increasing with at least 4 rungs")
    series = {}
    for n in n_grid:
        v = _corner_series(f, n, xs)
        series[n] = v
        if _diverges(v):
            return AxiomVerdict(f.name, "A6", "fail", len(xs), None, Counterexample(
                "A6", corner(n, xs[-1]), {"n": n, "x": xs}, {"values": v}),
                note=f"unbounded on corner matrices of order {n}")
    if all(_levels_off(v, f.bound) for v in series.values()):
        top = max(max(v) for v in series.values())
        return AxiomVerdict(f.name, "A6", "pass", len(xs), None,
                            note=f"bounded by {f.bound:g} (max observed {top:.4g})")
    return AxiomVerdict(f.name, "A6", "inconclusive", len(xs), None,
                        note="neither divergence nor a respected declared bound")


def check_all(f: IndexFunction, trials: int = DEFAULT_TRIALS, seed: int = 42) -> list[AxiomVerdict]:
    return [check_axiom1(f, trials, seed), check_axiom2(f, trials, seed),
            check_axiom3(f, trials, seed), check_axiom4(f, trials, seed),
            check_axiom5(f, trials, seed), check_axiom6(f)]


# -- verdict table ------------------------------------------------------------

@dataclass(frozen=True)
class VerdictTable:
    rows: dict[str, list[AxiomVerdict]] = field(default_factory=dict)
    seed: int = 42

    def symbols(self, name: str) -> str:
        return "".join("?" if (name, v.axiom_id) in NOT_ASSERTED else v.symbol
                       for v in self.rows[name])

    def mismatches(self, expected: dict[str, str] = REFERENCE_VERDICTS) -> list[tuple[str, str, str, str]]:
        out = []
        for name, verdicts in self.rows.items():
            if name not in expected:
                continue
            for v, want in zip(verdicts, expected[name]):
                if (name, v.axiom_id) in NOT_ASSERTED:
                    continue
                if v.symbol != want:
                    out.append((name, v.axiom_id, want, v.symbol))
        return out

    def render_text(self) -> str:
        if not self.rows:
            return ""
        width = max(len("Index/Axiom"), *(len(k) for k in self.rows))
        lines = [f"{'Index/Axiom':<{width}}  " + "  ".join(AXIOMS)]
        for name in self.rows:
            lines.append(f"{name:<{width}}  " + "  ".join(f"{s:<2}" for s in self.symbols(name)).rstrip())
        notes = []
        for name, verdicts in self.rows.items():
            for v in verdicts:
                if (name, v.axiom_id) in NOT_ASSERTED:
                    notes.append(f"{name}/{v.axiom_id}: not asserted (observed: {v.outcome})")
                if v.counterexample is not None:
                    notes.append(f"{name}/{v.axiom_id} counterexample: {v.counterexample.describe()}")
        return "\n".join(lines + ([""] + notes if notes else []))

    def to_json(self) -> dict:
        return {"seed": self.seed,
                "table": {k: self.symbols(k) for k in self.rows},
                "verdicts": {k: [v.to_json() for v in vs] for k, vs in self.rows.items()}}


def verdict_table(index_functions: Iterable[IndexFunction], seed: int = 42,
                  trials: int = DEFAULT_TRIALS) -> VerdictTable:
    return VerdictTable({f.name: check_all(f, trials, seed) for f in index_functions}, seed)


# -- random index -------------------------------------------------------------

@dataclass(frozen=True)
class RiEstimate:
    n: int
    mean_ci: float
    std_error: float
    samples: int
    seed: int
    skipped: int = 0


def estimate_ri(n: int, samples: int = 100_000, seed: int = 42, scale="saaty",
                chunk: int = 25_000) -> RiEstimate:
    """Mean C.I. of i.i.d. random reciprocal matrices of order n."""
    if n < 2:
        raise ValueError("order must be at least 2")
    if samples < 100:
        raise ValueError("need at least 100 samples")
    rng = np.random.default_rng([seed, n])
    m = n * (n - 1) // 2
    iu = upper_index(n)
    cis, skipped = [], 0
    for start in range(0, samples, chunk):
        size = min(chunk, samples - start)
        upper = _draw(scale, rng, (size, m))
        a = np.ones((size, n, n))
        a[:, iu[0], iu[1]] = upper
        a[:, iu[1], iu[0]] = 1.0 / upper
        lam, _, _, _, ok = power_iteration(a)
        skipped += int((~ok).sum())
        c = (lam[ok] - n) / (n - 1)
        c[np.abs(c) < indices.ZERO_CLAMP] = 0.0
        cis.append(c)
    if skipped > 0.001 * samples:
        raise ConvergenceError(skipped, float("nan"))
    c = np.concatenate(cis)
    se = float(c.std(ddof=1) / math.sqrt(c.size))
    return RiEstimate(n, float(c.mean()), se, int(c.size), seed, skipped)


def build_ri_table(n_range: Iterable[int], samples: int = 100_000, seed: int = 42,
                   scale="saaty") -> RiTable:
    ests = [estimate_ri(n, samples, seed, scale) for n in n_range]
    scale_name = scale if isinstance(scale, str) else f"loguniform[{scale.low},{scale.high}]"
    return RiTable({e.n: e.mean_ci for e in ests}, {
        "source": "monte-carlo",
        "scale": scale_name,
        "samples": samples,
        "seed": seed,
        "std_error": {str(e.n): e.std_error for e in ests},
    })


def ri_monotone(table: RiTable, z: float = 1.96) -> bool:
    """Nondecreasing in n, allowing each step to dip within z standard errors."""
    se = table.provenance.get("std_error", {})
    ns = sorted(table.values)
    for a, b in zip(ns, ns[1:]):
        slack = z * math.hypot(se.get(str(a), 0.0), se.get(str(b), 0.0))
        if table.values[b] < table.values[a] - slack:
            return False
    return True
