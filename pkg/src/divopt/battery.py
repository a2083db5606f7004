"""Standard instance battery: the printed counterexamples plus generated spaces.

The battery backs the property checkers and the property-table regeneration.
Matrices are defined in code; the same matrices ship as CSV fixture files
under ``divopt/data`` for the file-based interface.
"""

from __future__ import annotations

from importlib import resources
from math import sqrt

import numpy as np

from .spaces import DistanceMatrix, Graph, build_distance_matrix, graph_metric

# Four collinear configurations: (A) and (B) share the same nearest-neighbor
# gaps while every other distance differs; (C) is evenly spread.
STRETCH_CONFIGS = {
    "A": [0.0, 0.2, 1.8, 2.0],
    "B": [0.0, 0.2, 1.0, 1.2],
    "C": [0.0, 2.0 / 3.0, 4.0 / 3.0, 2.0],
}

# Two vertical columns of three points, columns 4 apart with spacing 1;
# the classic Max-Min non-submodularity configuration (points a..f).
TWO_COLUMNS_POINTS = np.array(
    [(0.0, 0.0), (0.0, 1.0), (0.0, 2.0), (4.0, 0.0), (4.0, 1.0), (4.0, 2.0)]
)

# The S/T pair witnessing that Max-Min is not submodular: indices of
# {a,b,c,e} and {d,e,f,b}.
TWO_COLUMNS_WITNESS_S = (0, 1, 2, 4)
TWO_COLUMNS_WITNESS_T = (3, 4, 5, 1)

# Planar quadruple on which Solow-Polasky fails submodularity.
HUNTSMAN_POINTS = np.array([(-1.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 1.0)])

UNIT_SQUARE_POINTS = np.array([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)])

# Three-point space where a point outside a set is at distance zero from it:
# valid similarity space, not a metric space.
ZERO_PAIR_SPACE = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])

# Graph-derived space (entries in {1, 2}) on which increasing one distance
# strictly decreases Solow-Polasky diversity at theta = 0.3; found by seeded
# search over random graph metrics, frozen here.  The perturbed matrix is a
# similarity space (the bumped entry breaks the triangle inequality).
SP_STRICT_WITNESS = {
    "matrix": np.array(
        [
            [0.0, 2.0, 2.0, 2.0, 1.0, 1.0],
            [2.0, 0.0, 1.0, 1.0, 1.0, 2.0],
            [2.0, 1.0, 0.0, 2.0, 1.0, 1.0],
            [2.0, 1.0, 2.0, 0.0, 1.0, 1.0],
            [1.0, 1.0, 1.0, 1.0, 0.0, 1.0],
            [1.0, 2.0, 1.0, 1.0, 1.0, 0.0],
        ]
    ),
    "entry": (0, 1),
    "bump": 0.1,
    "theta": 0.3,
}


def stretch_matrix(label: str) -> DistanceMatrix:
    return build_distance_matrix(STRETCH_CONFIGS[label])


def two_columns_matrix() -> DistanceMatrix:
    """The table-defined 6-point matrix (a..f); zero_tol 0, exact entries."""
    s17, s20 = sqrt(17.0), sqrt(20.0)
    m = np.array(
        [
            [0, 1, 2, 4, s17, s20],
            [1, 0, 1, s17, 4, s17],
            [2, 1, 0, s20, s17, 4],
            [4, s17, s20, 0, 1, 2],
            [s17, 4, s17, 1, 0, 1],
            [s20, s17, 4, 2, 1, 0],
        ],
        dtype=float,
    )
    return DistanceMatrix(m)


def huntsman_matrix() -> DistanceMatrix:
    """Squared Euclidean distances of the Huntsman quadruple.

    The published non-submodularity value for Solow-Polasky on these points
    is reproduced under squared-Euclidean dissimilarity (a valid similarity
    space), not under plain Euclidean distance; see
    ``huntsman_theta_determination``.
    """
    diff = HUNTSMAN_POINTS[:, None, :] - HUNTSMAN_POINTS[None, :, :]
    return DistanceMatrix((diff**2).sum(axis=2))


def unit_square_matrix() -> DistanceMatrix:
    return build_distance_matrix(UNIT_SQUARE_POINTS)


def zero_pair_space() -> DistanceMatrix:
    return DistanceMatrix(ZERO_PAIR_SPACE)


def random_euclidean(seed: int, n: int, dim: int = 2, scale: float = 10.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, scale, size=(n, dim))


def random_graph(seed: int, n: int, p: float = 0.5) -> Graph:
    rng = np.random.default_rng(seed)
    edges = {
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    }
    return Graph(n, frozenset(edges))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def euclidean_battery() -> dict:
    """Euclidean point sets (name -> coordinate array) for geometric checks."""
    out = {
        "stretch_a": np.array(STRETCH_CONFIGS["A"])[:, None],
        "stretch_b": np.array(STRETCH_CONFIGS["B"])[:, None],
        "stretch_c": np.array(STRETCH_CONFIGS["C"])[:, None],
        "two_columns": TWO_COLUMNS_POINTS,
        "huntsman": HUNTSMAN_POINTS,
        "unit_square": UNIT_SQUARE_POINTS,
    }
    for seed, n in [(11, 5), (12, 6), (13, 8)]:
        out[f"random_{seed}"] = random_euclidean(seed, n)
    return out


def matrix_battery() -> dict:
    """Distance matrices (name -> DistanceMatrix) for indicator-level checks."""
    out = {name: build_distance_matrix(pts) for name, pts in euclidean_battery().items()}
    out["two_columns_table"] = two_columns_matrix()
    out["huntsman_sq"] = huntsman_matrix()
    out["zero_pair"] = zero_pair_space()
    out["graph_path3"] = graph_metric(path_graph(3))
    out["graph_k3"] = graph_metric(complete_graph(3))
    out["graph_c5"] = graph_metric(cycle_graph(5))
    out["graph_random"] = graph_metric(random_graph(7, 6))
    out["sp_strict_witness"] = DistanceMatrix(SP_STRICT_WITNESS["matrix"])
    return out


def fixture_path(name: str):
    """Path to a shipped CSV fixture (matrix format of the loader)."""
    return resources.files("divopt.data").joinpath(name)
