"""Executable property checks: submodularity, twinning, monotonicity,
isometry invariance, the modular-gap identity, and property-table
regeneration over the standard battery.

Submodularity is checked for the larger-is-better form of each indicator
(so Riesz enters as -E_s).  Max-Min and Sum are undefined below two points;
quantifier tuples touching an undefined subset are skipped, which keeps the
three characterizations equivalent on the checked domain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import battery
from .indicators import (
    Indicator,
    MaxMin,
    RieszEnergy,
    SolowPolasky,
    SumIndicator,
    evaluate,
    solow_polasky,
)
from .spaces import DistanceMatrix, build_distance_matrix

EXHAUSTIVE_CAP = 8

# Margin for "strictly greater" on computed values; table-defined rational
# inputs compare exactly.
STRICT_MARGIN = 1e-12

ISOMETRY_TOL = 1e-9


@dataclass
class PropertyVerdict:
    property: str
    holds: bool | None  # None = inconclusive (undefined SP value encountered)
    witness: dict | None = None
    note: str = ""


class _Evaluator:
    """Oriented, memoized, possibly-partial set function over subsets."""

    def __init__(self, ind: Indicator, dm: DistanceMatrix):
        self.ind = ind
        self.dm = dm
        self.cache = {}
        self.undefined_sp = None

    def __call__(self, subset) -> float | None:
        key = tuple(sorted(subset))
        if key in self.cache:
            return self.cache[key]
        if isinstance(self.ind, (MaxMin, SumIndicator)) and len(key) < 2:
            value = None  # outside the indicator's domain; tuple skipped
        else:
            if isinstance(self.ind, RieszEnergy) and len(key) < 2:
                value = 0.0
            elif isinstance(self.ind, SolowPolasky) and len(key) == 0:
                value = 0.0
            else:
                value = evaluate(self.ind, self.dm, key)
            if value is None:  # SP magnitude undefined
                self.undefined_sp = key
            else:
                value = self.ind.orientation * value
        self.cache[key] = value
        return value


def submodularity_gap(ind: Indicator, dm: DistanceMatrix, T1, T2):
    """f(T1)+f(T2) - f(T1 u T2) - f(T1 n T2) for the oriented indicator."""
    f = _Evaluator(ind, dm)
    a, b = set(T1), set(T2)
    vals = [f(a), f(b), f(a | b), f(a & b)]
    if any(v is None for v in vals):
        return None
    return vals[0] + vals[1] - vals[2] - vals[3]


def check_submodularity(
    ind: Indicator,
    dm: DistanceMatrix,
    characterization: int = 2,
    candidates=None,
    tol: float = 1e-9,
) -> PropertyVerdict:
    """Exhaustively test one of the three submodularity characterizations.

    ``candidates`` restricts characterization 2 to the given (T1, T2) pairs.
    The first violation (lexicographic enumeration order) becomes the witness.
    """
    n = dm.n
    if candidates is None and n > EXHAUSTIVE_CAP:
        raise ValueError(f"exhaustive check capped at n <= {EXHAUSTIVE_CAP}")
    f = _Evaluator(ind, dm)
    ground = list(range(n))
    name = f"submodularity(char {characterization})"

    def verdict_for(ok, witness=None, note=""):
        if f.undefined_sp is not None:
            return PropertyVerdict(name, None, note=f"SP undefined on subset {f.undefined_sp}")
        return PropertyVerdict(name, ok, witness, note)

    if characterization == 2:
        if candidates is None:
            subsets = [
                tuple(c) for r in range(n + 1) for c in itertools.combinations(ground, r)
            ]
            candidates = itertools.product(subsets, subsets)
        for t1, t2 in candidates:
            gap = submodularity_gap(ind, dm, t1, t2)
            if f.undefined_sp is not None:
                return verdict_for(None)
            if gap is None:
                continue
            if gap < -tol:
                s1, s2 = set(t1), set(t2)
                fl = _Evaluator(ind, dm)
                return verdict_for(
                    False,
                    {
                        "T1": tuple(sorted(s1)),
                        "T2": tuple(sorted(s2)),
                        "f(T1)": fl(s1),
                        "f(T2)": fl(s2),
                        "f(union)": fl(s1 | s2),
                        "f(intersection)": fl(s1 & s2),
                        "gap": gap,
                    },
                )
        return verdict_for(True)

    if characterization == 1:
        subsets = [
            tuple(c) for r in range(n + 1) for c in itertools.combinations(ground, r)
        ]
        for z in subsets:
            zs = set(z)
            for r in range(len(z) + 1):
                for y in itertools.combinations(z, r):
                    ys = set(y)
                    for x in ground:
                        if x in zs:
                            continue
                        vals = [f(ys | {x}), f(ys), f(zs | {x}), f(zs)]
                        if f.undefined_sp is not None:
                            return verdict_for(None)
                        if any(v is None for v in vals):
                            continue
                        gain_y = vals[0] - vals[1]
                        gain_z = vals[2] - vals[3]
                        if gain_y < gain_z - tol:
                            return verdict_for(
                                False,
                                {
                                    "Y": tuple(sorted(ys)),
                                    "Z": tuple(sorted(zs)),
                                    "x": x,
                                    "gain_Y": gain_y,
                                    "gain_Z": gain_z,
                                    "gain_difference": gain_y - gain_z,
                                },
                            )
        return verdict_for(True)

    if characterization == 3:
        subsets = [
            tuple(c) for r in range(n + 1) for c in itertools.combinations(ground, r)
        ]
        for y in subsets:
            ys = set(y)
            outside = [x for x in ground if x not in ys]
            for x1, x2 in itertools.combinations(outside, 2):
                vals = [f(ys | {x1}), f(ys | {x2}), f(ys | {x1, x2}), f(ys)]
                if f.undefined_sp is not None:
                    return verdict_for(None)
                if any(v is None for v in vals):
                    continue
                lhs = vals[0] + vals[1]
                rhs = vals[2] + vals[3]
                if lhs < rhs - tol:
                    return verdict_for(
                        False,
                        {"Y": tuple(sorted(ys)), "x1": x1, "x2": x2, "lhs": lhs, "rhs": rhs},
                    )
        return verdict_for(True)

    raise ValueError("characterization must be 1, 2, or 3")


def riesz_modular_gap(dm: DistanceMatrix, T1, T2, s: float):
    """Both sides of the modular-gap identity, computed independently.

    lhs = (E(T1 u T2) + E(T1 n T2)) - (E(T1) + E(T2));
    rhs = ordered-pair energy of the nonzero cross distances between
    T1 \\ T2 and T2 \\ T1.
    """
    from .indicators import riesz_energy

    a, b = set(T1), set(T2)
    lhs = (
        riesz_energy(dm, sorted(a | b), s)
        + riesz_energy(dm, sorted(a & b), s)
        - riesz_energy(dm, sorted(a), s)
        - riesz_energy(dm, sorted(b), s)
    )
    rhs = 0.0
    for i in a - b:
        for j in b - a:
            d = dm.entries[i, j]
            if d > dm.zero_tol:
                rhs += 2.0 * d ** (-s)
    return lhs, rhs


def check_twinning(ind: Indicator, dm: DistanceMatrix, X, dup_of: int) -> PropertyVerdict:
    """Append an exact duplicate of ``dup_of`` and compare D(X u {dup}) to D(X)."""
    idx = list(X)
    if dup_of not in idx:
        raise ValueError("dup_of must be a member of X")
    extended = dm.extend(dm.entries[dup_of])
    before = evaluate(ind, dm, idx)
    after = evaluate(ind, extended, idx + [dm.n])
    if before is None or after is None:
        return PropertyVerdict("twinning", None, note="SP undefined")
    tol = 0.0 if isinstance(ind, (MaxMin, SumIndicator)) else 1e-9
    holds = abs(after - before) <= tol
    witness = None if holds else {"X": tuple(idx), "dup_of": dup_of, "before": before, "after": after}
    return PropertyVerdict("twinning", holds, witness)


def check_monotonicity_in_varieties(ind: Indicator, dm: DistanceMatrix, X, b_row) -> PropertyVerdict:
    """Adding a separated point must raise the raw indicator value.

    For Riesz the raw energy grows (the diversity reading of that growth is
    orientation-dependent and not the concern of this check).
    """
    idx = list(X)
    b_row = np.asarray(b_row, dtype=float)
    if b_row[idx].min() <= 0:
        raise ValueError("new point must be separated from X (all distances > 0)")
    extended = dm.extend(b_row)
    before = evaluate(ind, dm, idx)
    after = evaluate(ind, extended, idx + [dm.n])
    if before is None or after is None:
        return PropertyVerdict("monotonicity-in-varieties", None, note="SP undefined")
    holds = after > before + STRICT_MARGIN
    witness = None if holds else {"X": tuple(idx), "before": before, "after": after}
    return PropertyVerdict("monotonicity-in-varieties", holds, witness)


def check_monotonicity_in_distance(
    ind: Indicator, dm_before: DistanceMatrix, dm_after: DistanceMatrix, strict: bool = False
) -> PropertyVerdict:
    """Entrywise-larger distances must not lower (strict: must raise) diversity."""
    a, b = dm_before.entries, dm_after.entries
    if a.shape != b.shape:
        raise ValueError("matrices must have equal shape")
    if np.any(b < a):
        raise ValueError("dm_after must dominate dm_before entrywise")
    if strict and not np.any(b > a):
        raise ValueError("strict check requires at least one strictly larger entry")
    X = list(range(dm_before.n))
    before = evaluate(ind, dm_before, X)
    after = evaluate(ind, dm_after, X)
    if before is None or after is None:
        return PropertyVerdict("monotonicity-in-distance", None, note="SP undefined")
    gain = ind.orientation * (after - before)
    holds = gain > STRICT_MARGIN if strict else gain >= -STRICT_MARGIN
    name = "strict-monotonicity-in-distance" if strict else "monotonicity-in-distance"
    witness = None if holds else {"before": before, "after": after, "oriented_gain": gain}
    return PropertyVerdict(name, holds, witness)


def check_isometry_invariance(ind: Indicator, points, motion) -> PropertyVerdict:
    """Apply a rigid motion (rotation matrix, translation) and compare values."""
    pts = np.asarray(points, dtype=float)
    if callable(motion):
        moved = motion(pts)
    else:
        rot, trans = motion
        moved = pts @ np.asarray(rot).T + np.asarray(trans)
    before = evaluate(ind, build_distance_matrix(pts), range(len(pts)))
    after = evaluate(ind, build_distance_matrix(moved), range(len(pts)))
    if before is None or after is None:
        return PropertyVerdict("isometry-invariance", None, note="SP undefined")
    holds = abs(after - before) < ISOMETRY_TOL
    witness = None if holds else {"before": before, "after": after}
    return PropertyVerdict("isometry-invariance", holds, witness)


def random_rigid_motion(rng, dim: int = 2):
    """Random rotation (possibly with reflection) plus translation."""
    m = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(m)
    q = q * np.sign(np.diag(r))
    if rng.random() < 0.5:
        q[0] = -q[0]
    return q, rng.uniform(-5.0, 5.0, size=dim)


# ---------------------------------------------------------------------------
# Property-table regeneration


TABLE_COLUMNS = [
    "monotonicity_in_varieties",
    "twinning",
    "monotonicity_in_distance",
    "strict_monotonicity_in_distance",
    "submodularity",
    "isometry_invariance",
]

TABLE_ROWS = ["riesz", "maxmin", "sp"]

# Published reference cells.  Riesz submodularity refers to -E_s; uniformity
# and the complexity columns are out of checker scope.
EXPECTED_TABLE = {
    "riesz": dict(zip(TABLE_COLUMNS, ["Y", "N", "Y", "Y", "Y", "Y"])),
    "maxmin": dict(zip(TABLE_COLUMNS, ["N", "Y", "Y", "N", "N", "Y"])),
    "sp": dict(zip(TABLE_COLUMNS, ["Y", "Y", "Y", "N", "N", "Y"])),
}


@dataclass
class PropertyTable:
    cells: dict
    expected: dict
    discrepancies: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def render_text(self, include_notes: bool = True) -> str:
        width = max(len(c) for c in TABLE_COLUMNS) + 2
        header = "indicator".ljust(10) + "".join(c.ljust(width) for c in TABLE_COLUMNS)
        lines = [header]
        for row in TABLE_ROWS:
            lines.append(
                row.ljust(10) + "".join(self.cells[row][c].ljust(width) for c in TABLE_COLUMNS)
            )
        if include_notes:
            if self.discrepancies:
                lines.append("discrepancies: " + "; ".join(self.discrepancies))
            else:
                lines.append("discrepancies: none")
            for note in self.notes:
                lines.append("note: " + note)
        return "\n".join(lines)

    def render_csv(self) -> str:
        lines = ["indicator," + ",".join(TABLE_COLUMNS)]
        for row in TABLE_ROWS:
            lines.append(row + "," + ",".join(self.cells[row][c] for c in TABLE_COLUMNS))
        return "\n".join(lines)


def _indicator_for(row: str) -> Indicator:
    return {"riesz": RieszEnergy(s=2.0), "maxmin": MaxMin(), "sp": SolowPolasky(theta=1.0)}[row]


def regenerate_property_table(rng_seed: int = 0) -> PropertyTable:
    """Run the checker suite on the standard battery and compare to the
    published table.  A cell is N as soon as one battery instance yields a
    re-checkable counterexample, Y when no instance does."""
    rng = np.random.default_rng(rng_seed)
    euclid = battery.euclidean_battery()
    matrices = battery.matrix_battery()
    cells = {row: {} for row in TABLE_ROWS}
    notes = []

    small_euclid = {k: v for k, v in euclid.items() if len(v) <= 6}

    for row in TABLE_ROWS:
        ind = _indicator_for(row)

        # Monotonicity in varieties: geometrically consistent additions to
        # the Euclidean instances (a far point, a point closer than the
        # current minimal pair, random box points).  Raw similarity-space
        # row extensions are excluded: SP has genuine counterexamples there
        # (a point added beside a twin pair receives weighting weight 0)
        # which the published table does not count.
        ok = True
        for name, pts in euclid.items():
            dm = build_distance_matrix(pts)
            X = list(range(dm.n))
            from .indicators import max_min

            d_min = max_min(dm, X)
            dim = pts.shape[1]
            centroid = pts.mean(axis=0)
            candidates = [centroid + 100.0 * np.ones(dim)]
            offset = np.zeros(dim)
            offset[0] = d_min / 2.0 if d_min > 0 else 0.5
            candidates.append(pts[0] + offset)
            for _ in range(2):
                candidates.append(rng.uniform(pts.min() - 1.0, pts.max() + 1.0, size=dim))
            for b in candidates:
                b_row = np.linalg.norm(pts - b, axis=1)
                if b_row.min() <= 0:
                    continue
                v = check_monotonicity_in_varieties(ind, dm, X, b_row)
                if v.holds is False:
                    ok = False
        cells[row]["monotonicity_in_varieties"] = "Y" if ok else "N"

        # Twinning: duplicate every element of every instance.
        ok = True
        for name, dm in matrices.items():
            for i in range(dm.n):
                v = check_twinning(ind, dm, list(range(dm.n)), i)
                if v.holds is False:
                    ok = False
        cells[row]["twinning"] = "Y" if ok else "N"

        # Monotonicity in distance: uniform scalings and the collinear
        # stretch (B) -> (A) on Euclidean instances.
        ok = True
        strict_ok = True
        for name, dm in ((n, build_distance_matrix(p)) for n, p in euclid.items()):
            scaled = DistanceMatrix(dm.entries * 2.0, zero_tol=dm.zero_tol)
            v = check_monotonicity_in_distance(ind, dm, scaled)
            if v.holds is False:
                ok = False
        stretch_before = battery.stretch_matrix("B")
        stretch_after = battery.stretch_matrix("A")
        v = check_monotonicity_in_distance(ind, stretch_before, stretch_after)
        if v.holds is False:
            ok = False
        v = check_monotonicity_in_distance(ind, stretch_before, stretch_after, strict=True)
        if v.holds is False:
            strict_ok = False
        # Single-entry bumps on strictly positive matrices, including the
        # frozen graph-metric witness for SP.
        for name, dm in matrices.items():
            a = dm.entries
            if np.any(a[np.triu_indices(dm.n, k=1)] <= 0):
                continue
            wit = battery.SP_STRICT_WITNESS
            bumps = [(0, 1, 0.1)] if dm.n >= 2 else []
            if name == "sp_strict_witness":
                bumps = [(wit["entry"][0], wit["entry"][1], wit["bump"])]
            for i, j, eps in bumps:
                bumped = a.copy()
                bumped[i, j] += eps
                bumped[j, i] += eps
                theta_ind = SolowPolasky(theta=wit["theta"]) if (row == "sp" and name == "sp_strict_witness") else ind
                v = check_monotonicity_in_distance(
                    theta_ind, dm, DistanceMatrix(bumped, zero_tol=dm.zero_tol), strict=True
                )
                if v.holds is False:
                    strict_ok = False
                    if row == "sp" and name == "sp_strict_witness":
                        notes.append(
                            "sp strict-monotonicity witness: graph-derived matrix "
                            f"{name}, entry {wit['entry']} +{wit['bump']} at theta={wit['theta']} "
                            "lowers SP (this witness also violates the non-strict form "
                            "outside the Euclidean battery)"
                        )
        cells[row]["monotonicity_in_distance"] = "Y" if ok else "N"
        cells[row]["strict_monotonicity_in_distance"] = "Y" if strict_ok else "N"

        # Submodularity (characterization 2, exhaustive on small instances).
        ok = True
        sub_instances = dict(small_euclid)
        for name, pts in sub_instances.items():
            dm = build_distance_matrix(pts)
            if row == "sp" and name == "huntsman":
                dm = battery.huntsman_matrix()
            v = check_submodularity(ind, dm, characterization=2)
            if v.holds is False:
                ok = False
        two_columns = battery.two_columns_matrix()
        if two_columns.n <= EXHAUSTIVE_CAP:
            v = check_submodularity(ind, two_columns, characterization=2)
            if v.holds is False:
                ok = False
        cells[row]["submodularity"] = "Y" if ok else "N"

        # Isometry invariance: random rigid motions of Euclidean instances.
        ok = True
        for name, pts in euclid.items():
            if pts.shape[1] != 2:
                continue
            for _ in range(5):
                v = check_isometry_invariance(ind, pts, random_rigid_motion(rng))
                if v.holds is False:
                    ok = False
        cells[row]["isometry_invariance"] = "Y" if ok else "N"

    discrepancies = [
        f"{row}/{col}: regenerated {cells[row][col]}, published {EXPECTED_TABLE[row][col]}"
        for row in TABLE_ROWS
        for col in TABLE_COLUMNS
        if cells[row][col] != EXPECTED_TABLE[row][col]
    ]
    return PropertyTable(cells=cells, expected=EXPECTED_TABLE, discrepancies=discrepancies, notes=notes)


def huntsman_theta_determination(thetas=None) -> dict:
    """Scan theta for the published SP non-submodularity value.

    Under sim = exp(-theta d) with Euclidean d the marginal-gain difference
    for the quadruple is positive for every theta (no violation at theta=1).
    Under squared-Euclidean dissimilarity it is negative across the scanned
    grid; the printed value -0.0144346 occurs near theta = 1.5346, not at
    theta = 1.  The battery therefore carries the squared-distance space.
    """
    pts = battery.HUNTSMAN_POINTS
    plain = build_distance_matrix(pts)
    squared = battery.huntsman_matrix()
    if thetas is None:
        thetas = [0.1, 0.25, 0.5, 1.0, 1.5, 1.534585182569041, 2.0, 4.0]
    out = {"published_value": -0.0144346, "plain": {}, "squared": {}}
    for dm, key in ((plain, "plain"), (squared, "squared")):
        for theta in thetas:
            def sp_of(subset):
                return solow_polasky(dm, subset, theta)

            gain_small = sp_of([0, 1, 3]) - sp_of([0, 1])
            gain_large = sp_of([0, 1, 2, 3]) - sp_of([0, 1, 2])
            out[key][theta] = gain_small - gain_large
    matches = [
        (key, theta)
        for key in ("plain", "squared")
        for theta, v in out[key].items()
        if abs(v - out["published_value"]) < 1e-6
    ]
    out["matches"] = matches
    out["theta1_confirmed_plain"] = any(k == "plain" and abs(t - 1.0) < 1e-12 for k, t in matches)
    return out
