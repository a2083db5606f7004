"""Single-point contributions and fast all-contributions vectors.

The contribution of x with respect to X is D(X u {x}) - D(X \\ {x}); for
x in X the first term is just D(X).  The two-evaluation form is the oracle
every fast path must match.
"""

from __future__ import annotations

import numpy as np

from .indicators import (
    Indicator,
    MaxMin,
    RieszEnergy,
    SolowPolasky,
    evaluate,
    max_min,
    solow_polasky,
)
from .spaces import DistanceMatrix


class UndefinedTermError(ValueError):
    """A contribution term D(.) is undefined for the given subset."""


def contribution(ind: Indicator, dm: DistanceMatrix, X, x: int) -> float | None:
    """Two-evaluation contribution; the oracle for the fast paths below."""
    base = set(X)
    with_x = sorted(base | {x})
    without_x = sorted(base - {x})
    try:
        d_with = evaluate(ind, dm, with_x)
    except ValueError as e:
        raise UndefinedTermError(f"D(X u {{{x}}}) undefined: {e}") from e
    try:
        d_without = evaluate(ind, dm, without_x)
    except ValueError as e:
        raise UndefinedTermError(f"D(X \\ {{{x}}}) undefined: {e}") from e
    if d_with is None or d_without is None:
        return None
    return d_with - d_without


def all_contributions_oracle(ind: Indicator, dm: DistanceMatrix, X) -> list:
    return [contribution(ind, dm, X, x) for x in list(X)]


def all_contributions_riesz(dm: DistanceMatrix, X, s: float) -> np.ndarray:
    """Theta(n^2) contributions: row sums of the inverse-power matrix, doubled."""
    if s <= 0:
        raise ValueError("s must be positive")
    idx = list(X)
    sub = dm.submatrix(idx)
    mask = sub > dm.zero_tol
    terms = np.zeros_like(sub)
    terms[mask] = sub[mask] ** (-s)
    return 2.0 * terms.sum(axis=1)


def all_contributions_maxmin(dm: DistanceMatrix, X) -> np.ndarray:
    """Minimal-pair case analysis for Max-Min contributions.

    Only elements appearing in every minimal pair can have a nonzero
    contribution: a unique minimal pair gives two such elements, a star of
    minimal pairs gives one (the center), and any other configuration
    (minimal triangle, disjoint minimal pairs) gives none.  For those
    elements the contribution is d_min - d_min', where d_min' is the
    smallest distance after deleting the element's row and column.
    """
    idx = list(X)
    n = len(idx)
    if n < 3:
        raise ValueError("all_contributions_maxmin needs |X| >= 3")
    sub = dm.submatrix(idx)
    iu = np.triu_indices(n, k=1)
    dvals = sub[iu]
    # Zero-distance (duplicate) pairs are skipped, as in max_min itself.
    positive = dvals[dvals > dm.zero_tol]
    out = np.zeros(n)
    if positive.size == 0:
        return out
    d_min = positive.min()
    # Equality tolerance: exact for table matrices, 1e-12 for computed ones.
    tol = dm.zero_tol
    pairs = [
        (int(i), int(j))
        for i, j, d in zip(iu[0], iu[1], dvals)
        if dm.zero_tol < d <= d_min + tol
    ]
    # Elements covering every minimal pair.
    cover = set(pairs[0])
    for p in pairs[1:]:
        cover &= set(p)
    for i in sorted(cover):
        keep = [idx[k] for k in range(n) if k != i]
        d_min_prime = max_min(dm, keep)
        out[i] = d_min - d_min_prime
    return out


def all_contributions_sp(dm: DistanceMatrix, X, theta: float) -> list:
    """SP(X) - SP(X \\ {x}) per element via leave-one-out solves.

    Entries are ``None`` where either magnitude is undefined.
    """
    idx = list(X)
    full = solow_polasky(dm, idx, theta)
    out = []
    for pos in range(len(idx)):
        rest = idx[:pos] + idx[pos + 1 :]
        loo = solow_polasky(dm, rest, theta)
        if full is None or loo is None:
            out.append(None)
        else:
            out.append(full - loo)
    return out


def all_contributions(ind: Indicator, dm: DistanceMatrix, X) -> list:
    if isinstance(ind, RieszEnergy):
        return list(all_contributions_riesz(dm, X, ind.s))
    if isinstance(ind, MaxMin):
        return list(all_contributions_maxmin(dm, X))
    if isinstance(ind, SolowPolasky):
        return all_contributions_sp(dm, X, ind.theta)
    return all_contributions_oracle(ind, dm, X)
