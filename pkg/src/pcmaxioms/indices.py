"""Inconsistency indices of reciprocal pairwise-comparison matrices.

Triad-based indices (PLI, GCI, KII and their variants) need n >= 3.
GWI and GCI take a priority vector; when none is given they use the
geometric-mean weights.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping

import numpy as np

from .matrix import ComparisonMatrix, MatrixError, is_consistent, triad_ratios, upper_index
from .solvers import geometric_mean_weights, principal_eigen, weights

INDEX_NAMES = ("CI", "CR", "GWI", "PLI", "GCI", "KII", "RIC")
ZERO_CLAMP = 1e-9
SAATY_THRESHOLD = 0.10


def _need_triads(n: int, name: str) -> None:
    if n < 3:
        raise MatrixError(f"{name} is defined for n >= 3 only (got n={n})")


def _weights(m, w):
    if w is None:
        return geometric_mean_weights(m).w
    return np.asarray(w, dtype=float)


def ci_from_lambda(lambda_max: float, n: int) -> float:
    v = (lambda_max - n) / (n - 1)
    return 0.0 if abs(v) < ZERO_CLAMP else v


def ci(m: ComparisonMatrix) -> float:
    """Saaty's consistency index (lambda_max - n) / (n - 1)."""
    return ci_from_lambda(principal_eigen(m).lambda_max, m.n)


def cr(m: ComparisonMatrix, ri: "RiTable | None" = None) -> float:
    ri = ri or bundled_ri_table()
    r = ri[m.n]
    c = ci(m)
    if c == 0.0:
        return 0.0
    if not r > 0:
        raise MatrixError(f"R.I.({m.n}) = {r} is not positive; C.R. undefined")
    return c / r


def gwi(m: ComparisonMatrix, w=None) -> float:
    """Golden-Wang index: mean absolute gap between column-normalised A and w."""
    a = np.asarray(m)
    w = _weights(m, w)
    abar = a / a.sum(axis=0)
    return float(np.abs(abar - w[:, None]).sum() / a.shape[0])


def gwi_max(m: ComparisonMatrix, w=None) -> float:
    a = np.asarray(m)
    w = _weights(m, w)
    abar = a / a.sum(axis=0)
    return float(np.abs(abar - w[:, None]).max())


def _pli_terms(m) -> np.ndarray:
    r = triad_ratios(m)
    return r + 1.0 / r - 2.0


def pli(m: ComparisonMatrix) -> float:
    """Pelaez-Lamata index: mean over triads of r + 1/r - 2."""
    _need_triads(m.n, "PLI")
    return float(_pli_terms(m).mean())


def pli_max(m: ComparisonMatrix) -> float:
    _need_triads(m.n, "PLI")
    return float(_pli_terms(m).max())


def gci(m: ComparisonMatrix, w=None) -> float:
    """Geometric consistency index."""
    n = m.n
    _need_triads(n, "GCI")
    a = np.asarray(m)
    lw = np.log(_weights(m, w))
    iu = upper_index(n)
    e = np.log(a[iu]) + lw[iu[1]] - lw[iu[0]]
    return float(2.0 / ((n - 1) * (n - 2)) * np.sum(e * e))


def kii(m: ComparisonMatrix) -> float:
    """Koczkodaj's index: worst triad, scored min(|1 - r|, |1 - 1/r|)."""
    _need_triads(m.n, "KII")
    r = triad_ratios(m)
    return float(np.max(np.minimum(np.abs(1.0 - r), np.abs(1.0 - 1.0 / r))))


def row_cosines(m: ComparisonMatrix) -> np.ndarray:
    """Cosines between every pair of rows i < j."""
    a = np.asarray(m)
    # rows scaled by their max first so squares cannot overflow
    a = a / a.max(axis=1, keepdims=True)
    u = a / np.linalg.norm(a, axis=1, keepdims=True)
    c = u @ u.T
    return np.clip(c[upper_index(a.shape[0])], 0.0, 1.0)


def ric_from_cosines(cosines) -> float:
    """One minus the mean of the pairwise row cosines."""
    c = np.asarray(cosines, dtype=float)
    return float(max(0.0, 1.0 - c.mean()))


def ric(m: ComparisonMatrix) -> float:
    """Row inconsistency index."""
    return ric_from_cosines(row_cosines(m))


def compromise(mean_value: float, extreme_value: float, lam: float) -> float:
    """Convex blend: lam = 1 gives the mean-based value, lam = 0 the extreme one."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    return lam * mean_value + (1.0 - lam) * extreme_value


# -- random index tables ------------------------------------------------------

@dataclass(frozen=True)
class RiTable:
    values: Mapping[int, float]
    provenance: Mapping[str, object] = field(default_factory=dict)

    def __getitem__(self, n: int) -> float:
        try:
            return self.values[n]
        except KeyError:
            raise MatrixError(f"R.I. table has no entry for n={n} "
                              f"(covers {sorted(self.values)})") from None

    def __contains__(self, n: int) -> bool:
        return n in self.values

    def to_json(self) -> dict:
        return {"values": {str(k): v for k, v in sorted(self.values.items())},
                "provenance": dict(self.provenance)}

    @classmethod
    def from_json(cls, obj: dict | str) -> "RiTable":
        if isinstance(obj, str):
            obj = json.loads(obj)
        vals = obj.get("values", obj)
        values = {int(k): float(v) for k, v in vals.items()}
        return cls(values, dict(obj.get("provenance", {})))


_BUNDLED: RiTable | None = None


def bundled_ri_table() -> RiTable:
    """R.I. values estimated by this package's own Monte Carlo run."""
    global _BUNDLED
    if _BUNDLED is None:
        text = resources.files(__package__).joinpath("data/ri_table.json").read_text()
        _BUNDLED = RiTable.from_json(text)
    return _BUNDLED


# -- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class IndexReport:
    n: int
    values: Mapping[str, float]
    lambda_max: float
    weight_method: str
    ri_used: float | None
    consistent: bool

    @property
    def saaty_acceptable(self) -> bool | None:
        """Informational only: C.R. <= 0.10."""
        if "CR" not in self.values:
            return None
        return self.values["CR"] <= SAATY_THRESHOLD

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lambda_max": self.lambda_max,
            "weight_method": self.weight_method,
            "indices": {k: self.values[k] for k in INDEX_NAMES if k in self.values},
            "ri_used": self.ri_used,
            "consistent": self.consistent,
        }


def report(m: ComparisonMatrix, ri: RiTable | None = None, method: str = "GM") -> IndexReport:
    ri = ri or bundled_ri_table()
    method = method.upper()
    eig = principal_eigen(m)
    c = ci_from_lambda(eig.lambda_max, m.n)
    w = eig.vector.w if method == "EM" else weights(m, method).w
    values: dict[str, float] = {"CI": c}
    ri_used = None
    if m.n in ri:
        ri_used = ri[m.n]
        values["CR"] = 0.0 if c == 0.0 else c / ri_used
    values["GWI"] = gwi(m, w)
    if m.n >= 3:
        values["PLI"] = pli(m)
        values["GCI"] = gci(m, w)
        values["KII"] = kii(m)
    values["RIC"] = ric(m)
    if m.n == 2:
        # every 2x2 reciprocal matrix is consistent; only CI, CR and RIC apply
        values.pop("GWI")
    return IndexReport(m.n, values, eig.lambda_max, method, ri_used, is_consistent(m))
