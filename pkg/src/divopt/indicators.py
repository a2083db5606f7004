"""The four set-diversity indicators evaluated on distance-matrix subsets.

Riesz s-energy uses the ordered-pair convention: every unordered pair with
nonzero distance contributes twice.  Solow-Polasky returns ``None`` when the
similarity system sim . w = 1 is inconsistent (magnitude undefined).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .spaces import DistanceMatrix

MAXIMIZE = 1
MINIMIZE = -1

# Residual inf-norm below which a least-squares solution of a singular
# similarity system counts as a genuine weighting.
SP_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class MaxMin:
    name = "maxmin"
    orientation = MAXIMIZE

    def evaluate(self, dm, X):
        return max_min(dm, X)


@dataclass(frozen=True)
class RieszEnergy:
    s: float = 2.0
    name = "riesz"
    orientation = MINIMIZE

    def __post_init__(self):
        if self.s <= 0:
            raise ValueError("Riesz exponent s must be positive")

    def evaluate(self, dm, X):
        return riesz_energy(dm, X, self.s)


@dataclass(frozen=True)
class SolowPolasky:
    theta: float = 1.0
    name = "sp"
    orientation = MAXIMIZE

    def __post_init__(self):
        if self.theta <= 0:
            raise ValueError("Solow-Polasky decay theta must be positive")

    def evaluate(self, dm, X):
        return solow_polasky(dm, X, self.theta)


@dataclass(frozen=True)
class SumIndicator:
    name = "sum"
    orientation = MAXIMIZE

    def evaluate(self, dm, X):
        return sum_indicator(dm, X)


Indicator = MaxMin | RieszEnergy | SolowPolasky | SumIndicator


def max_min(dm: DistanceMatrix, X) -> float:
    """Smallest pairwise distance within X (|X| >= 2).

    Zero-distance pairs (duplicates) are skipped, mirroring the Riesz
    convention; this makes twinning exact: appending a duplicate introduces
    no new nonzero distance, so the minimum is unchanged.  A set whose
    pairwise distances are all zero has diversity 0.
    """
    idx = list(X)
    if len(idx) < 2:
        raise ValueError("max_min is undefined for sets with fewer than 2 points")
    sub = dm.submatrix(idx)
    d = sub[np.triu_indices(len(idx), k=1)]
    positive = d[d > dm.zero_tol]
    if positive.size == 0:
        return 0.0
    return float(positive.min())


def riesz_energy(dm: DistanceMatrix, X, s: float) -> float:
    """Sum of 1/d^s over ordered pairs with nonzero distance; 0 if none."""
    if s <= 0:
        raise ValueError("Riesz exponent s must be positive")
    idx = list(X)
    if len(idx) < 2:
        return 0.0
    sub = dm.submatrix(idx)
    d = sub[np.triu_indices(len(idx), k=1)]
    d = d[d > dm.zero_tol]
    if d.size == 0:
        return 0.0
    return float(2.0 * np.sum(d ** (-s)))


def similarity_matrix(dm: DistanceMatrix, X, theta: float) -> np.ndarray:
    """Entrywise exp(-theta * d) on the subset; symmetric with unit diagonal."""
    if theta <= 0:
        raise ValueError("theta must be positive")
    return np.exp(-theta * dm.submatrix(list(X)))


def solow_polasky(dm: DistanceMatrix, X, theta: float) -> float | None:
    """Magnitude of the similarity matrix: component sum of a weighting.

    Returns ``None`` when no weighting exists (inconsistent system).  For a
    singular but consistent system the least-norm weighting is used; its
    component sum is the same for every weighting of a symmetric matrix.
    """
    idx = list(X)
    if len(idx) < 1:
        return 0.0
    sim = similarity_matrix(dm, idx, theta)
    ones = np.ones(len(idx))
    try:
        w = scipy.linalg.solve(sim, ones, assume_a="sym")
        if not np.all(np.isfinite(w)):
            raise np.linalg.LinAlgError
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError, ValueError):
        w = None
    if w is not None and np.max(np.abs(sim @ w - ones)) < SP_RESIDUAL_TOL:
        return float(w.sum())
    w, *_ = np.linalg.lstsq(sim, ones, rcond=None)
    if np.max(np.abs(sim @ w - ones)) < SP_RESIDUAL_TOL:
        return float(w.sum())
    return None


def sum_indicator(dm: DistanceMatrix, X) -> float:
    """Sum of pairwise distances over unordered pairs (|X| >= 2)."""
    idx = list(X)
    if len(idx) < 2:
        raise ValueError("sum_indicator is undefined for sets with fewer than 2 points")
    sub = dm.submatrix(idx)
    return float(sub[np.triu_indices(len(idx), k=1)].sum())


def evaluate(ind: Indicator, dm: DistanceMatrix, X) -> float | None:
    return ind.evaluate(dm, X)


def oriented(ind: Indicator, value: float) -> float:
    """Map a raw indicator value onto a larger-is-better scale."""
    return ind.orientation * value


def parse_indicator(name: str, s: float = 2.0, theta: float = 1.0) -> Indicator:
    key = name.lower().replace("-", "").replace("_", "")
    if key in ("maxmin", "maxmindiversity"):
        return MaxMin()
    if key in ("riesz", "rieszenergy", "energy", "senergy"):
        return RieszEnergy(s=s)
    if key in ("sp", "solowpolasky"):
        return SolowPolasky(theta=theta)
    if key in ("sum", "totaldistance"):
        return SumIndicator()
    raise ValueError(f"unknown indicator {name!r}")
