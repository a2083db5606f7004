"""Finite similarity spaces: distance matrices, duplicates, graph metrics."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

# Tolerance for the triangle-inequality check on computed (floating point)
# matrices.  Table-defined matrices are checked exactly.
TRIANGLE_TOL = 1e-9

# Zero-distance tolerance assigned to matrices built from coordinates.
COMPUTED_ZERO_TOL = 1e-12


class SpaceKind(enum.Enum):
    SIMILARITY = "similarity"
    METRIC = "metric"


class DistanceMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric non-negative matrix with zero diagonal.

    ``zero_tol`` is the threshold below which an off-diagonal entry counts
    as a zero distance (duplicate detection, Riesz zero-pair skipping).
    It is 0 for table-defined matrices and 1e-12 for matrices computed
    from coordinates.
    """

    entries: np.ndarray
    zero_tol: float = 0.0

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DistanceMatrixError(f"expected a square matrix, got shape {a.shape}")
        if not np.allclose(a, a.T, rtol=0.0, atol=0.0):
            raise DistanceMatrixError("matrix is not symmetric")
        if np.any(np.diag(a) != 0.0):
            raise DistanceMatrixError("diagonal entries must be zero")
        if np.any(a < 0.0):
            raise DistanceMatrixError("entries must be non-negative")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def submatrix(self, indices) -> np.ndarray:
        idx = list(indices)
        return self.entries[np.ix_(idx, idx)]

    def extend(self, row) -> "DistanceMatrix":
        """Append one point given its distances to the existing points."""
        row = np.asarray(row, dtype=float)
        if row.shape != (self.n,):
            raise DistanceMatrixError(f"row must have length {self.n}")
        out = np.zeros((self.n + 1, self.n + 1))
        out[: self.n, : self.n] = self.entries
        out[-1, : self.n] = row
        out[: self.n, -1] = row
        return DistanceMatrix(out, zero_tol=self.zero_tol)


@dataclass(frozen=True)
class Graph:
    """Undirected graph without self-loops; edges stored as sorted pairs."""

    n_vertices: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n_vertices and 0 <= j < self.n_vertices):
                raise ValueError(f"edge ({i}, {j}) out of range")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges


@dataclass
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""


@dataclass
class ValidationReport:
    kind: SpaceKind
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


_NORMS = {"l1": 1, "l2": 2, "linf": np.inf}


def build_distance_matrix(points, norm: str = "l2") -> DistanceMatrix:
    """Pairwise distances of equal-dimension point vectors under L1/L2/Linf."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[1] < 1:
        raise DistanceMatrixError("points must be a list of equal-length vectors")
    key = norm.lower()
    if key not in _NORMS:
        raise DistanceMatrixError(f"unknown norm {norm!r}; expected one of {sorted(_NORMS)}")
    diff = pts[:, None, :] - pts[None, :, :]
    ord_ = _NORMS[key]
    dm = np.linalg.norm(diff, ord=ord_, axis=2)
    # Enforce exact symmetry and zero diagonal against rounding noise.
    dm = (dm + dm.T) / 2.0
    np.fill_diagonal(dm, 0.0)
    return DistanceMatrix(dm, zero_tol=COMPUTED_ZERO_TOL)


def validate(dm: DistanceMatrix, kind: SpaceKind) -> ValidationReport:
    """Report every violated axiom of the requested space kind."""
    a = dm.entries
    n = dm.n
    violations = []
    for i in range(n):
        if a[i, i] != 0.0:
            violations.append(Violation("zero-diagonal", (i,), f"d({i},{i})={a[i, i]}"))
    for i in range(n):
        for j in range(i + 1, n):
            if a[i, j] < 0.0:
                violations.append(Violation("non-negativity", (i, j), f"d({i},{j})={a[i, j]}"))
            if a[i, j] != a[j, i]:
                violations.append(Violation("symmetry", (i, j), f"{a[i, j]} != {a[j, i]}"))
    if kind is SpaceKind.METRIC:
        for i in range(n):
            for j in range(i + 1, n):
                if a[i, j] <= dm.zero_tol:
                    violations.append(
                        Violation("positivity", (i, j), f"d({i},{j})={a[i, j]} for distinct points")
                    )
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for k in range(n):
                    if k == i or k == j:
                        continue
                    if a[i, j] > a[i, k] + a[k, j] + TRIANGLE_TOL:
                        violations.append(
                            Violation(
                                "triangle",
                                (i, j, k),
                                f"d({i},{j})={a[i, j]} > d({i},{k})+d({k},{j})={a[i, k] + a[k, j]}",
                            )
                        )
    return ValidationReport(kind=kind, violations=violations)


def dist_to_set(dm: DistanceMatrix, s: int, X) -> float:
    """Minimum distance from point ``s`` to the non-empty index set ``X``."""
    idx = list(X)
    if not idx:
        raise ValueError("X must be non-empty")
    return float(dm.entries[s, idx].min())


def is_duplicate(dm: DistanceMatrix, x: int, X) -> bool:
    """True iff some y in X is at zero distance from x and equidistant to all of X."""
    idx = list(X)
    a = dm.entries
    tol = dm.zero_tol
    for y in idx:
        if a[x, y] <= tol and np.all(np.abs(a[x, idx] - a[y, idx]) <= tol):
            return True
    return False


def graph_metric(g: Graph) -> DistanceMatrix:
    """Metric with d=2 on edges, d=1 on distinct non-edges, 0 on the diagonal."""
    if g.n_vertices < 2:
        raise ValueError("graph must have at least 2 vertices")
    n = g.n_vertices
    dm = np.ones((n, n))
    np.fill_diagonal(dm, 0.0)
    for i, j in g.edges:
        dm[i, j] = dm[j, i] = 2.0
    return DistanceMatrix(dm)


def load_matrix_csv(path) -> DistanceMatrix:
    """Headerless CSV of n rows of n comma-separated decimals."""
    a = np.loadtxt(path, delimiter=",", ndmin=2)
    try:
        return DistanceMatrix(a)
    except DistanceMatrixError as e:
        raise DistanceMatrixError(f"{path}: {e}") from e


def save_matrix_csv(dm: DistanceMatrix, path) -> None:
    np.savetxt(path, dm.entries, delimiter=",", fmt="%.17g")


def load_graph(path) -> Graph:
    """First line ``n m``, then m lines ``i j`` with 0-based vertex indices."""
    lines = Path(path).read_text().split("\n")
    lines = [ln for ln in (l.strip() for l in lines) if ln]
    n, m = (int(t) for t in lines[0].split())
    if len(lines) - 1 != m:
        raise ValueError(f"{path}: expected {m} edge lines, found {len(lines) - 1}")
    edges = set()
    for ln in lines[1:]:
        i, j = (int(t) for t in ln.split())
        edges.add((i, j))
    return Graph(n, frozenset(edges))
