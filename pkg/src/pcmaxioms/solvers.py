"""Priority vectors: eigenvalue method (power iteration) and geometric mean."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .matrix import ComparisonMatrix

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10_000
SHIFT = 0.5
_EPS = np.finfo(float).eps


class ConvergenceError(RuntimeError):
    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(f"power iteration did not converge in {iterations} iterations "
                         f"(last relative residual {residual:.3g})")


@dataclass(frozen=True)
class PriorityVector:
    w: np.ndarray
    method: str  # "EM" | "GM"

    def __post_init__(self):
        self.w.setflags(write=False)

    def __array__(self, dtype=None, copy=None):
        return self.w if dtype is None else self.w.astype(dtype)

    def __len__(self) -> int:
        return self.w.size


@dataclass(frozen=True)
class EigenResult:
    lambda_max: float
    vector: PriorityVector
    iterations: int
    residual: float  # ||A w - lambda w||_inf / lambda


def power_iteration(a: np.ndarray, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER):
    """Perron root and vector of a stack of positive matrices, shape (..., n, n).

    Each step multiplies by ``A + (lam_k / 2) I`` where ``lam_k`` is the
    current estimate ``sum(A v) / sum(v)``. The shift leaves eigenvectors
    alone and pulls the complex pair of a corner-type matrix away from the
    Perron root, which otherwise has nearly the same modulus and stalls
    plain iteration.

    Stops once every component of the sum-normalised iterate moves by at
    most ``tol`` relative to itself and the relative residual is within ``tol`` plus the rounding floor of
    the matrix-vector product. Returns ``(lam, w, iterations, residual,
    converged)``, all batched.
    """
    a = np.asarray(a, dtype=float)
    batch = a.shape[:-2]
    n = a.shape[-1]
    a = a.reshape(-1, n, n)
    m = a.shape[0]
    v = np.full((m, n), 1.0 / n)
    lam = np.zeros(m)
    res = np.full(m, np.inf)
    its = np.zeros(m, dtype=int)
    done = np.zeros(m, dtype=bool)
    active = np.arange(m)
    av, vv = a, v.copy()
    y = (av @ vv[:, :, None])[:, :, 0]
    for k in range(1, max_iter + 1):
        lam_k = y.sum(axis=1) / vv.sum(axis=1)
        z = y + (SHIFT * lam_k)[:, None] * vv
        z /= z.sum(axis=1, keepdims=True)
        step = np.max(np.abs(z - vv) / z, axis=1)
        az = (av @ z[:, :, None])[:, :, 0]
        lam_z = az.sum(axis=1)  # z sums to 1
        r = np.max(np.abs(az - lam_z[:, None] * z), axis=1) / lam_z
        ok = (step <= tol) & (r <= tol)
        near = ~ok & (step <= tol)
        if near.any():
            # residual may sit on the rounding floor of the matvec
            floor = 4 * n * _EPS * np.max(av[near] * z[near][:, None, :], axis=(1, 2)) / lam_z[near]
            ok[near] = r[near] <= tol + floor
        vv, y = z, az
        if ok.any() or k == max_iter:
            v[active], lam[active], res[active], its[active] = z, lam_z, r, k
            done[active[ok]] = True
            keep = ~ok
            active, av, vv, y = active[keep], av[keep], vv[keep], y[keep]
            if active.size == 0:
                break
    return (lam.reshape(batch), v.reshape(batch + (n,)), its.reshape(batch),
            res.reshape(batch), done.reshape(batch))


@njit(cache=True)
def _power_single(a, tol, max_iter):
    # same iteration as power_iteration, one matrix, written out for numba
    n = a.shape[0]
    v = np.full(n, 1.0 / n)
    y = a @ v
    z = np.empty(n)
    for k in range(1, max_iter + 1):
        s = y.sum()
        for i in range(n):
            z[i] = y[i] + SHIFT * s * v[i]  # v sums to 1
        z /= z.sum()
        step = (np.abs(z - v) / z).max()
        y = a @ z
        v[:] = z
        if step <= tol:
            lam = y.sum()
            r = np.abs(y - lam * v).max() / lam
            floor = 0.0
            for i in range(n):
                for j in range(n):
                    floor = max(floor, a[i, j] * v[j])
            if r <= tol + 4 * n * _EPS * floor / lam:
                return lam, v, k, r, True
    lam = y.sum()
    return lam, v, max_iter, np.abs(y - lam * v).max() / lam, False


def principal_eigen(m: ComparisonMatrix, tol: float = DEFAULT_TOL,
                    max_iter: int = DEFAULT_MAX_ITER) -> EigenResult:
    """Perron root and normalised Perron vector by shifted power iteration."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    lam, w, its, res, ok = _power_single(np.ascontiguousarray(m, dtype=float), float(tol), int(max_iter))
    if not ok:
        raise ConvergenceError(int(its), float(res))
    return EigenResult(float(lam), PriorityVector(w, "EM"), int(its), float(res))


def eigen_weights(m: ComparisonMatrix) -> PriorityVector:
    return principal_eigen(m).vector


def geometric_mean_weights(m: ComparisonMatrix) -> PriorityVector:
    """Row geometric means, normalised to sum 1 (computed in log space)."""
    logs = np.log(np.asarray(m)).mean(axis=1)
    g = np.exp(logs - logs.max())
    return PriorityVector(g / g.sum(), "GM")


def weights(m: ComparisonMatrix, method: str = "GM") -> PriorityVector:
    method = method.upper()
    if method == "GM":
        return geometric_mean_weights(m)
    if method == "EM":
        return eigen_weights(m)
    raise ValueError(f"unknown weight method {method!r}; use 'GM' or 'EM'")
