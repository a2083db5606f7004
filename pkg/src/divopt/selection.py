"""Exact and greedy k-subset selection, plus the clique/energy reduction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .contributions import all_contributions_riesz, all_contributions_sp
from .indicators import (
    Indicator,
    MaxMin,
    RieszEnergy,
    SolowPolasky,
    evaluate,
    parse_indicator,
    riesz_energy,
)
from .spaces import DistanceMatrix, Graph, build_distance_matrix, graph_metric

BRUTE_FORCE_CAP = 20

# Graph-metric energies are sums of dyadic rationals, so this is generous.
CLIQUE_BOUND_TOL = 1e-9


@dataclass(frozen=True)
class SelectionResult:
    subset: tuple
    value: float
    method: str
    evaluations: int


@dataclass(frozen=True)
class CliqueInstance:
    graph: Graph
    k: int
    s: float = 1.0

    def __post_init__(self):
        if not (2 <= self.k <= self.graph.n_vertices):
            raise ValueError("k must satisfy 2 <= k <= n_vertices")
        if self.s <= 0:
            raise ValueError("s must be positive")


@dataclass(frozen=True)
class CliqueResult:
    has_clique: bool
    witness: tuple | None
    energy: float
    lower_bound: float
    upper_bound: float


def brute_force_select(ind: Indicator, dm: DistanceMatrix, k: int, cap: int = BRUTE_FORCE_CAP) -> SelectionResult:
    """Enumerate all k-subsets; ties broken by lexicographically smallest subset."""
    n = dm.n
    if not (2 <= k <= n):
        raise ValueError("k must satisfy 2 <= k <= n")
    if n > cap:
        raise ValueError(f"brute force is capped at n <= {cap} points (got n={n})")
    best_subset = None
    best = -np.inf
    evaluations = 0
    for subset in itertools.combinations(range(n), k):
        value = evaluate(ind, dm, subset)
        evaluations += 1
        if value is None:
            continue
        score = ind.orientation * value
        if score > best:  # lexicographic enumeration + strict improvement
            best = score
            best_subset = subset
    if best_subset is None:
        raise ValueError("indicator was undefined on every k-subset")
    return SelectionResult(best_subset, ind.orientation * best, "BruteForce", evaluations)


def greedy_select(ind: Indicator, dm: DistanceMatrix, k: int) -> SelectionResult:
    """Deterministic greedy rules, one per indicator.

    Max-Min grows from the farthest pair by max-min-distance insertion;
    Riesz and SP shrink from the full set by dropping the worst contributor.
    These rules are this library's own; quality is bounded empirically
    against brute force in the tests.
    """
    n = dm.n
    if not (2 <= k <= n):
        raise ValueError("k must satisfy 2 <= k <= n")
    evaluations = 0
    if isinstance(ind, RieszEnergy):
        chosen = list(range(n))
        while len(chosen) > k:
            contribs = all_contributions_riesz(dm, chosen, ind.s)
            evaluations += 1
            worst = int(np.argmax(contribs))  # largest energy contribution
            chosen.pop(worst)
        subset = tuple(chosen)
    elif isinstance(ind, SolowPolasky):
        chosen = list(range(n))
        while len(chosen) > k:
            contribs = all_contributions_sp(dm, chosen, ind.theta)
            evaluations += len(chosen) + 1
            if any(c is None for c in contribs):
                raise ValueError(
                    f"Solow-Polasky undefined during greedy selection on subset {tuple(chosen)}"
                )
            worst = int(np.argmin(contribs))  # smallest SP contribution
            chosen.pop(worst)
        subset = tuple(chosen)
    else:
        # Max-Min (and Sum): seed with the global farthest pair, then add the
        # point with the largest distance to the chosen set.
        a = dm.entries
        iu = np.triu_indices(n, k=1)
        flat = int(np.argmax(a[iu]))
        chosen = [int(iu[0][flat]), int(iu[1][flat])]
        remaining = [i for i in range(n) if i not in chosen]
        while len(chosen) < k:
            dists = [a[i, chosen].min() for i in remaining]
            evaluations += len(remaining)
            nxt = remaining[int(np.argmax(dists))]
            chosen.append(nxt)
            remaining.remove(nxt)
        subset = tuple(sorted(chosen))
    value = evaluate(ind, dm, subset)
    evaluations += 1
    return SelectionResult(subset, value, "Greedy", evaluations)


def energy_bounds(k: int, s: float) -> tuple:
    """Riesz energy range [k(k-1)/2^s, k(k-1)] of any k-subset of a graph metric."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if s <= 0:
        raise ValueError("s must be positive")
    return k * (k - 1) / 2.0**s, float(k * (k - 1))


def clique_via_energy(inst: CliqueInstance, cap: int = BRUTE_FORCE_CAP) -> CliqueResult:
    """Decide k-clique by minimizing Riesz energy over the graph metric.

    The subset is a k-clique exactly when its energy attains the lower
    bound k(k-1)/2^s.
    """
    dm = graph_metric(inst.graph)
    result = brute_force_select(RieszEnergy(s=inst.s), dm, inst.k, cap=cap)
    lower, upper = energy_bounds(inst.k, inst.s)
    is_clique = abs(result.value - lower) < CLIQUE_BOUND_TOL
    return CliqueResult(
        has_clique=is_clique,
        witness=result.subset if is_clique else None,
        energy=result.value,
        lower_bound=lower,
        upper_bound=upper,
    )


def has_clique_brute_force(g: Graph, k: int) -> tuple | None:
    """Direct k-clique search; independent cross-check for clique_via_energy."""
    for subset in itertools.combinations(range(g.n_vertices), k):
        if all(g.has_edge(i, j) for i, j in itertools.combinations(subset, 2)):
            return subset
    return None


class DiverseSubsetSelector(BaseEstimator, TransformerMixin):
    """Pick k diverse rows of X under a diversity indicator.

    Parameters follow the library's CLI vocabulary: ``indicator`` is one of
    ``maxmin``, ``riesz``, ``sp``, ``sum``; ``metric`` is ``l1``/``l2``/``linf``
    or ``precomputed`` when X already is a distance matrix.
    """

    def __init__(self, k=2, indicator="maxmin", method="greedy", s=2.0, theta=1.0, metric="l2"):
        self.k = k
        self.indicator = indicator
        self.method = method
        self.s = s
        self.theta = theta
        self.metric = metric

    def _distance_matrix(self, X):
        if self.metric == "precomputed":
            return DistanceMatrix(np.asarray(X, dtype=float), zero_tol=1e-12)
        return build_distance_matrix(np.asarray(X, dtype=float), norm=self.metric)

    def fit(self, X, y=None):
        X = np.asarray(X, dtype=float)
        dm = self._distance_matrix(X)
        ind = parse_indicator(self.indicator, s=self.s, theta=self.theta)
        if self.method == "brute":
            result = brute_force_select(ind, dm, self.k)
        elif self.method == "greedy":
            result = greedy_select(ind, dm, self.k)
        else:
            raise ValueError(f"unknown method {self.method!r}; expected 'brute' or 'greedy'")
        self.selected_indices_ = np.array(result.subset, dtype=int)
        self.selection_value_ = result.value
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        X = np.asarray(X, dtype=float)
        return X[self.selected_indices_]
