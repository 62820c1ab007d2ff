"""Reciprocal pairwise-comparison matrices.

Everything here is 0-based. Messages meant for people (validation reports,
parse errors) print cells 1-based, the way matrices are usually written.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

RECIPROCITY_TOL = 1e-6
CONSISTENCY_TOL = 1e-9


class MatrixError(ValueError):
    """Base class for invalid matrix input."""


class MatrixFormatError(MatrixError):
    """Malformed text: bad numbers, ragged rows, non-square."""


class ReciprocityError(MatrixError):
    """Entries break positivity, the unit diagonal or a_ij * a_ji = 1."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(report.describe())


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    kind: str  # "positivity" | "diagonal" | "reciprocity"
    value: float

    def __str__(self) -> str:
        cell = f"({self.i + 1},{self.j + 1})"
        if self.kind == "reciprocity":
            return f"{cell}/({self.j + 1},{self.i + 1}): a_ij*a_ji = {self.value:.6g}, expected 1"
        if self.kind == "diagonal":
            return f"{cell}: diagonal entry {self.value:.6g}, expected 1"
        return f"{cell}: entry {self.value:.6g} is not a positive finite number"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def cells(self) -> list[tuple[int, int]]:
        return [(v.i, v.j) for v in self.violations]

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return "invalid comparison matrix: " + "; ".join(str(v) for v in self.violations)


def validate(entries, tol: float = RECIPROCITY_TOL) -> ValidationReport:
    """Check positivity, unit diagonal and reciprocity of a square array.

    Reciprocity is judged by ``|a_ij * a_ji - 1| <= tol`` and each offending
    pair is reported once, at its upper-triangle cell.
    """
    a = np.asarray(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MatrixFormatError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    out: list[Violation] = []
    bad = ~(np.isfinite(a) & (a > 0))
    for i, j in zip(*np.nonzero(bad)):
        out.append(Violation(int(i), int(j), "positivity", float(a[i, j])))
    for i in range(n):
        if not bad[i, i] and abs(a[i, i] - 1.0) > tol:
            out.append(Violation(i, i, "diagonal", float(a[i, i])))
    with np.errstate(all="ignore"):
        prod = a * a.T
    for i, j in zip(*upper_index(n)):
        if bad[i, j] or bad[j, i]:
            continue
        if abs(prod[i, j] - 1.0) > tol:
            out.append(Violation(int(i), int(j), "reciprocity", float(prod[i, j])))
    return ValidationReport(tuple(out))


@lru_cache(maxsize=None)
def upper_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Cached ``np.triu_indices(n, 1)``."""
    iu = np.triu_indices(n, 1)
    for arr in iu:
        arr.setflags(write=False)
    return iu


def _rebuild(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    out = np.ones((n, n))
    iu = upper_index(n)
    out[iu] = a[iu]
    out.T[iu] = 1.0 / a[iu]
    return out


class ComparisonMatrix:
    """An immutable reciprocal pairwise-comparison matrix of order n >= 2.

    The upper triangle is authoritative: the lower triangle is always stored
    as ``1 / a_ij``, so a matrix that got past validation is reciprocal to
    the last bit regardless of how the input was rounded.
    """

    __slots__ = ("_a",)

    def __init__(self, entries, tol: float = RECIPROCITY_TOL):
        a = np.array(entries, dtype=float)
        report = validate(a, tol)
        if not report.ok:
            raise ReciprocityError(report)
        if a.shape[0] < 2:
            raise MatrixError("a comparison matrix needs order n >= 2")
        a = _rebuild(a)
        a.setflags(write=False)
        self._a = a

    @classmethod
    def _trusted(cls, a: np.ndarray) -> "ComparisonMatrix":
        # internal fast path for arrays built reciprocal by construction
        obj = object.__new__(cls)
        a = _rebuild(a)
        a.setflags(write=False)
        obj._a = a
        return obj

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._a

    def __array__(self, dtype=None, copy=None):
        if dtype is None or np.dtype(dtype) == self._a.dtype:
            return self._a if not copy else self._a.copy()
        return self._a.astype(dtype)

    def __getitem__(self, idx):
        return self._a[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComparisonMatrix):
            return NotImplemented
        return np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        return hash(self._a.tobytes())

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(f"{v:.6g}" for v in row) + "]" for row in self._a)
        return f"ComparisonMatrix([{rows}])"

    def tolist(self) -> list[list[float]]:
        return self._a.tolist()


@dataclass(frozen=True)
class Triad:
    i: int
    j: int
    k: int
    ratio: float  # a_ik / (a_ij * a_jk); exactly 1 on a consistent triple


@dataclass(frozen=True)
class CornerSpec:
    n: int
    x: float


def from_upper_triangle(n: int, upper: Sequence[float]) -> ComparisonMatrix:
    """Build a matrix from its strict upper triangle listed row by row."""
    upper = np.asarray(upper, dtype=float)
    m = n * (n - 1) // 2
    if n < 2:
        raise MatrixError("order must be at least 2")
    if upper.shape != (m,):
        raise MatrixError(f"order {n} needs {m} upper-triangle entries, got {upper.size}")
    if not np.all(np.isfinite(upper) & (upper > 0)):
        raise MatrixError("upper-triangle entries must be positive and finite")
    a = np.ones((n, n))
    a[upper_index(n)] = upper
    return ComparisonMatrix._trusted(a)


def corner(spec: CornerSpec | int, x: float | None = None) -> ComparisonMatrix:
    """All-ones matrix except a_1n = x and a_n1 = 1/x."""
    if not isinstance(spec, CornerSpec):
        spec = CornerSpec(int(spec), float(x))
    if spec.n < 3:
        raise MatrixError("corner matrices need n >= 3")
    if not (spec.x > 0 and math.isfinite(spec.x)):
        raise MatrixError("corner value x must be positive and finite")
    a = np.ones((spec.n, spec.n))
    a[0, -1] = spec.x
    return ComparisonMatrix._trusted(a)


def from_weights(w: Iterable[float]) -> ComparisonMatrix:
    """The consistent matrix a_ij = w_i / w_j."""
    w = np.asarray(list(w), dtype=float)
    if w.ndim != 1 or w.size < 2:
        raise MatrixError("need at least two weights")
    if not np.all(np.isfinite(w) & (w > 0)):
        raise MatrixError("weights must be positive and finite")
    return ComparisonMatrix._trusted(w[:, None] / w[None, :])


def permute(m: ComparisonMatrix, sigma: Sequence[int]) -> ComparisonMatrix:
    """Relabel alternatives: entry (i, j) of the result is a_{sigma(i) sigma(j)}."""
    sigma = np.asarray(sigma, dtype=int)
    if sorted(sigma.tolist()) != list(range(m.n)):
        raise MatrixError(f"{sigma.tolist()} is not a permutation of 0..{m.n - 1}")
    return ComparisonMatrix._trusted(m.entries[np.ix_(sigma, sigma)])


def elementwise_power(m: ComparisonMatrix, b: float) -> ComparisonMatrix:
    if not b > 0:
        raise MatrixError("exponent must be positive")
    return ComparisonMatrix._trusted(m.entries ** b)


def perturb_entry(m: ComparisonMatrix, i: int, j: int, delta: float) -> ComparisonMatrix:
    """Replace a_ij by a_ij ** delta (and a_ji by its reciprocal).

    Only defined for a consistent matrix and an entry that is not 1.
    """
    if i == j:
        raise MatrixError("cannot perturb a diagonal entry")
    if not delta > 0:
        raise MatrixError("delta must be positive")
    if not is_consistent(m):
        raise MatrixError("perturb_entry expects a consistent matrix")
    aij = m.entries[i, j]
    if abs(aij - 1.0) <= 1e-12:
        raise MatrixError(f"entry ({i + 1},{j + 1}) equals 1; choose an entry a_ij != 1")
    a = m.entries.copy()
    a[i, j] = aij ** delta
    a[j, i] = 1.0 / a[i, j]
    return ComparisonMatrix._trusted(a)


@lru_cache(maxsize=None)
def triad_index(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index arrays (i, j, k) over all i < j < k."""
    if n < 3:
        raise MatrixError("triads need n >= 3")
    idx = np.array(list(combinations(range(n), 3)), dtype=int)
    i, j, k = idx.T
    for arr in (i, j, k):
        arr.setflags(write=False)
    return i, j, k


def triad_ratios(m) -> np.ndarray:
    """Vector of a_ik / (a_ij a_jk) for every i < j < k, in lexicographic order."""
    a = np.asarray(m)
    i, j, k = triad_index(a.shape[0])
    return a[i, k] / (a[i, j] * a[j, k])


def triads(m: ComparisonMatrix) -> list[Triad]:
    i, j, k = triad_index(m.n)
    r = triad_ratios(m)
    return [Triad(int(a), int(b), int(c), float(x)) for a, b, c, x in zip(i, j, k, r)]


def is_consistent(m, tol: float = CONSISTENCY_TOL) -> bool:
    a = np.asarray(m)
    if a.shape[0] < 3:
        return True
    return bool(np.all(np.abs(triad_ratios(a) - 1.0) <= tol))


# -- text formats -------------------------------------------------------------

def parse(text: str, tol: float = RECIPROCITY_TOL) -> ComparisonMatrix:
    """Read a headerless n x n CSV matrix."""
    rows = []
    for lineno, line in enumerate(io.StringIO(text), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            rows.append([float(tok) for tok in line.split(",")])
        except ValueError:
            raise MatrixFormatError(f"line {lineno}: not a list of numbers: {line!r}") from None
    if not rows:
        raise MatrixFormatError("empty matrix file")
    n = len(rows)
    for lineno, row in enumerate(rows, start=1):
        if len(row) != n:
            raise MatrixFormatError(f"row {lineno} has {len(row)} entries; a {n}-row matrix must be square")
    if n < 2:
        raise MatrixFormatError("a comparison matrix needs order n >= 2")
    return ComparisonMatrix(rows, tol=tol)


def _fmt(v: float) -> str:
    # shortest text that reads back to the same double
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def serialize(m: ComparisonMatrix) -> str:
    return "\n".join(",".join(_fmt(v) for v in row) for row in m.entries)


def to_json(m: ComparisonMatrix) -> dict:
    return {"n": m.n, "rows": m.tolist()}


def from_json(obj: dict | str, tol: float = RECIPROCITY_TOL) -> ComparisonMatrix:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n, rows = int(obj["n"]), obj["rows"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"matrix JSON needs fields 'n' and 'rows': {exc}") from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise MatrixFormatError(f"'rows' is not {n} x {n}")
    return ComparisonMatrix(rows, tol=tol)
