"""Distance spectral radius, distance Perron vector and related sums."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-10
MAX_ITER = 1_000_000
SHIFT = 1.0


def default_tol() -> float:
    """Tolerance from ``DIST_SPECTRA_TOL`` if set, else DEFAULT_TOL."""
    raw = os.environ.get("DIST_SPECTRA_TOL")
    if raw is None:
        return DEFAULT_TOL
    tol = float(raw)
    if not tol > 0:
        raise ValueError(f"DIST_SPECTRA_TOL must be positive, got {raw!r}")
    return tol


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    perron: np.ndarray
    residual: float
    iterations: int = 0

    @property
    def guard(self) -> float:
        """Band below which a strict inequality is not certified.

        Ten times the residual, floored at the rounding level of a
        length-n dot product so an exactly converged vector still gets a
        nonzero band.
        """
        n = len(self.perron)
        floor = n * np.finfo(float).eps * max(1.0, self.rho)
        return 10.0 * max(self.residual, floor)


def spectral_radius(D, tol: float | None = None, max_iter: int = MAX_ITER) -> SpectralResult:
    """Perron root and unit positive eigenvector of a distance matrix.

    Power iteration on ``D + I``; the shift makes the matrix primitive so the
    iteration converges even when ``D`` alone is periodic (e.g. P_2). Stops
    once successive Rayleigh quotients agree to ``tol * max(1, rho)`` and the
    max-norm residual ``|D x - rho x|`` is below the same bound.
    """
    if tol is None:
        tol = default_tol()
    if not tol > 0:
        raise ValueError("tol must be positive")
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return SpectralResult(0.0, np.ones(1), 0.0, 0)
    A = D + SHIFT * np.eye(n)
    x = np.full(n, 1.0 / np.sqrt(n))
    y = A @ x
    lam = float(x @ y)
    for it in range(1, max_iter + 1):
        x = y / np.linalg.norm(y)
        y = A @ x
        new = float(x @ y)
        rho = new - SHIFT
        bound = tol * max(1.0, rho)
        if abs(new - lam) < bound:
            residual = float(np.max(np.abs(D @ x - rho * x)))
            if residual <= bound:
                if np.any(x <= 0):
                    raise ConvergenceError("Perron vector has a non-positive entry; is the source connected?")
                return SpectralResult(rho, x, residual, it)
        lam = new
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps")


def rayleigh(D, x) -> float:
    """x^T D x for a unit non-negative vector x."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or not np.any(x > 0):
        raise ValueError("vector must be non-negative with a nonzero entry")
    if abs(np.linalg.norm(x) - 1.0) > 1e-9:
        raise ValueError("vector must have unit Euclidean norm")
    D = np.asarray(D, dtype=float)
    return float(x @ D @ x)


def eigenequation_residual(D, rho: float, x, u: int) -> float:
    """|sum_v d(u, v) x_v - rho x_u|."""
    D = np.asarray(D, dtype=float)
    x = np.asarray(x, dtype=float)
    return float(abs(D[u] @ x - rho * x[u]))


def sigma(x, S) -> float:
    """Sum of the entries of ``x`` over the vertex set ``S``."""
    x = np.asarray(x, dtype=float)
    idx = sorted(set(S))
    if idx and not (0 <= idx[0] and idx[-1] < len(x)):
        raise IndexError(f"vertex set {idx} outside 0..{len(x) - 1}")
    return float(x[idx].sum()) if idx else 0.0


def status(D, u: int) -> int:
    """Transmission of ``u``: its row sum in the distance matrix."""
    return int(np.asarray(D)[u].sum())


def statuses(D) -> list[int]:
    return [int(s) for s in np.asarray(D).sum(axis=1)]


def min_status(D) -> int:
    return min(statuses(D))
