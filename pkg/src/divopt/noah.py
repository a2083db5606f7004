"""NOAH-style diversity optimizer: NSGA-II objective phases alternating with
barrier lowering and indicator-driven diversity phases.

A run is strictly sequential and deterministic for a given seed: one RNG
stream, fixed draw order (mutation draws step length before angle; tournament
draws both competitor indices in one call).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .contributions import all_contributions_maxmin
from .indicators import (
    Indicator,
    MaxMin,
    RieszEnergy,
    SolowPolasky,
    evaluate,
    parse_indicator,
)
from .spaces import build_distance_matrix


@dataclass
class NoahConfig:
    pop_size: int = 20
    box_size: float = 10.0
    mutation_rate: float = 10.0
    c: int = 3  # diversity-phase patience (generations without improvement)
    max_mutation_attempts: int = 100
    indicator: str = "maxmin"
    s: float = 2.0
    theta: float = 1.0
    parent_selection_prob: float = 0.9
    rng_seed: int = 0
    iteration_budget: int = 10
    nsga_generations: int = 20
    initial_barrier: tuple | None = None

    def __post_init__(self):
        if self.pop_size <= 0 or self.box_size <= 0:
            raise ValueError("pop_size and box_size must be positive")
        if not (0.0 <= self.parent_selection_prob <= 1.0):
            raise ValueError("parent_selection_prob must lie in [0, 1]")
        if self.mutation_rate < 0 or self.c < 0 or self.iteration_budget < 0:
            raise ValueError("rates, patience, and budgets must be non-negative")

    def make_indicator(self) -> Indicator:
        return parse_indicator(self.indicator, s=self.s, theta=self.theta)


_CONFIG_FIELDS = {f.name: f for f in dataclasses.fields(NoahConfig)}


def parse_config_file(path) -> NoahConfig:
    """Flat ``key = value`` file, keys exactly matching NoahConfig fields."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, _, text = (t.strip() for t in line.partition("="))
            if key not in _CONFIG_FIELDS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            ftype = _CONFIG_FIELDS[key].type
            if key == "initial_barrier":
                values[key] = tuple(float(t) for t in text.split(","))
            elif ftype == "int":
                values[key] = int(text)
            elif ftype == "float":
                values[key] = float(text)
            else:
                values[key] = text
    return NoahConfig(**values)


@dataclass
class Population:
    x: np.ndarray  # (n, 2) decision vectors
    f: np.ndarray  # (n, n_objectives) cached objective vectors

    def copy(self) -> "Population":
        return Population(self.x.copy(), self.f.copy())

    def __len__(self):
        return len(self.x)


@dataclass
class TraceRecord:
    iteration: int
    phase: str
    maxmin: float
    riesz_energy: float
    solow_polasky: float
    hausdorff: float  # nan when no reference set is given
    barrier: tuple
    population: np.ndarray


@dataclass
class RunTrace:
    config: NoahConfig
    records: list = field(default_factory=list)

    def to_csv(self, path) -> None:
        n_obj = len(self.records[0].barrier) if self.records else 2
        barrier_cols = ",".join(f"barrier_{i}" for i in range(n_obj))
        lines = [f"iteration,phase,maxmin,riesz_energy,solow_polasky,hausdorff,{barrier_cols}"]
        for r in self.records:
            barrier = ",".join(f"{b:.17g}" for b in r.barrier)
            lines.append(
                f"{r.iteration},{r.phase},{r.maxmin:.17g},{r.riesz_energy:.17g},"
                f"{r.solow_polasky:.17g},{r.hausdorff:.17g},{barrier}"
            )
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")

    def populations_to_csv(self, path) -> None:
        lines = ["iteration,phase,member,x,y"]
        for r in self.records:
            for m, (x, y) in enumerate(r.population):
                lines.append(f"{r.iteration},{r.phase},{m},{x:.17g},{y:.17g}")
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")


def mutate(point: np.ndarray, rate: float, box_size: float, rng) -> np.ndarray:
    """Uniform-length jump in a uniform direction, reflected into the box."""
    u = rng.random()
    phi = rng.uniform(0.0, 2.0 * math.pi)
    out = point + rate * u * np.array([math.cos(phi), math.sin(phi)])
    return reflect_into_box(out, box_size)


def reflect_into_box(point: np.ndarray, box_size: float) -> np.ndarray:
    out = point.copy()
    for i in range(len(out)):
        v = out[i]
        while v < 0.0 or v > box_size:
            if v < 0.0:
                v = -v
            if v > box_size:
                v = 2.0 * box_size - v
        out[i] = v
    return out


def epsilon_dominates(f1, f2, eps: float) -> bool:
    """Additive epsilon-dominance: every component of f1 <= f2 - eps."""
    f1 = np.asarray(f1, dtype=float)
    f2 = np.asarray(f2, dtype=float)
    if f1.shape != f2.shape:
        raise ValueError("objective vectors must have equal length")
    return bool(np.all(f1 <= f2 - eps))


def _dominates(f1, f2) -> bool:
    f1 = np.asarray(f1, dtype=float)
    f2 = np.asarray(f2, dtype=float)
    return bool(np.all(f1 <= f2) and np.any(f1 < f2))


def _barrier_feasible(f, barrier) -> bool:
    return bool(np.all(np.asarray(f, dtype=float) <= barrier))


def _barrier_violation(f, barrier) -> float:
    return float(np.maximum(np.asarray(f, dtype=float) - barrier, 0.0).sum())


def constrained_dominates(f1, f2, barrier) -> bool:
    """NSGA-II constraint-domination with the barrier as the constraint."""
    feas1, feas2 = _barrier_feasible(f1, barrier), _barrier_feasible(f2, barrier)
    if feas1 and not feas2:
        return True
    if feas2 and not feas1:
        return False
    if not feas1 and not feas2:
        return _barrier_violation(f1, barrier) < _barrier_violation(f2, barrier)
    return _dominates(f1, f2)


def non_dominated_sort(F: np.ndarray, barrier) -> np.ndarray:
    n = len(F)
    ranks = np.zeros(n, dtype=int)
    dominated_by = [[] for _ in range(n)]
    counts = np.zeros(n, dtype=int)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if constrained_dominates(F[i], F[j], barrier):
                dominated_by[i].append(j)
            elif constrained_dominates(F[j], F[i], barrier):
                counts[i] += 1
    front = [i for i in range(n) if counts[i] == 0]
    rank = 0
    while front:
        nxt = []
        for i in front:
            ranks[i] = rank
            for j in dominated_by[i]:
                counts[j] -= 1
                if counts[j] == 0:
                    nxt.append(j)
        front = sorted(nxt)
        rank += 1
    return ranks


def crowding_distance(F: np.ndarray, members) -> np.ndarray:
    members = np.asarray(members, dtype=int)
    dist = np.zeros(len(members))
    if len(members) <= 2:
        dist[:] = np.inf
        return dist
    for m in range(F.shape[1]):
        vals = F[members, m]
        order = np.argsort(vals, kind="stable")
        dist[order[0]] = dist[order[-1]] = np.inf
        span = vals[order[-1]] - vals[order[0]]
        if span <= 0:
            continue
        for pos in range(1, len(members) - 1):
            dist[order[pos]] += (vals[order[pos + 1]] - vals[order[pos - 1]]) / span
    return dist


def nsga2_phase(pop: Population, barrier, generations: int, rng, objectives, cfg: NoahConfig) -> Population:
    """Mutation-only NSGA-II with barrier feasibility as constraint domination."""
    pop = pop.copy()
    n = len(pop)
    barrier = np.asarray(barrier, dtype=float)
    for _ in range(generations):
        ranks = non_dominated_sort(pop.f, barrier)
        crowd = np.zeros(n)
        for r in np.unique(ranks):
            members = np.flatnonzero(ranks == r)
            crowd[members] = crowding_distance(pop.f, members)
        children_x = np.empty_like(pop.x)
        for k in range(n):
            a, b = rng.integers(0, n, size=2)
            if (ranks[a], -crowd[a], a) <= (ranks[b], -crowd[b], b):
                parent = a
            else:
                parent = b
            children_x[k] = mutate(pop.x[parent], cfg.mutation_rate, cfg.box_size, rng)
        children_f = np.array([objectives(x) for x in children_x])
        all_x = np.vstack([pop.x, children_x])
        all_f = np.vstack([pop.f, children_f])
        ranks = non_dominated_sort(all_f, barrier)
        crowd = np.zeros(len(all_f))
        for r in np.unique(ranks):
            members = np.flatnonzero(ranks == r)
            crowd[members] = crowding_distance(all_f, members)
        priority = sorted(range(len(all_f)), key=lambda i: (ranks[i], -crowd[i], i))
        # Exact duplicates (mutation-rate 0, repeated offspring) never displace
        # a distinct survivor; parents precede their copies in the priority
        # order, so a zero-rate generation leaves the population unchanged.
        chosen, skipped = [], []
        seen = set()
        for i in priority:
            key = all_x[i].tobytes()
            if key in seen:
                skipped.append(i)
                continue
            seen.add(key)
            chosen.append(i)
            if len(chosen) == n:
                break
        for i in skipped:
            if len(chosen) == n:
                break
            chosen.append(i)
        chosen = np.array(chosen[:n], dtype=int)
        pop = Population(all_x[chosen], all_f[chosen])
    return pop


def lower_barrier(b, pop: Population, rng) -> np.ndarray:
    """Lower one random component halfway toward the population's best value."""
    b = np.asarray(b, dtype=float).copy()
    comp = int(rng.integers(0, len(b)))
    best = float(pop.f[:, comp].min())
    target = max(best, 0.5 * (b[comp] + best))
    b[comp] = min(b[comp], target)  # never raise the barrier
    return b


def population_diversity(ind: Indicator, points: np.ndarray) -> float | None:
    return evaluate(ind, build_distance_matrix(points), range(len(points)))


def maxmin_parent_selection(points: np.ndarray, prob: float, rng) -> int:
    """With probability ``prob`` pick among nonzero Max-Min contributors."""
    r = rng.random()
    idx = int(rng.integers(0, len(points)))
    if r >= prob:
        return idx
    contribs = all_contributions_maxmin(build_distance_matrix(points), range(len(points)))
    nonzero = np.flatnonzero(np.abs(contribs) > 0.0)
    if len(nonzero) == 0:
        return idx
    return int(nonzero[int(rng.integers(0, len(nonzero)))])


def diversity_phase(pop: Population, barrier, ind: Indicator, cfg: NoahConfig, rng, objectives) -> Population:
    """Replace-one hill climbing on population diversity under the barrier.

    An offspring replaces its parent only if it is barrier-feasible and the
    population diversity does not get worse (orientation-adjusted, ties
    accepted).  The phase stops after ``cfg.c`` consecutive generations
    without strict improvement.
    """
    pop = pop.copy()
    barrier = np.asarray(barrier, dtype=float)
    orient = ind.orientation
    current = population_diversity(ind, pop.x)
    if current is None:
        return pop
    best = orient * current
    no_improve = 0
    generations = 0
    while no_improve < cfg.c and generations < 10_000:  # safety cap
        generations += 1
        for _ in range(cfg.max_mutation_attempts):
            if isinstance(ind, MaxMin):
                parent = maxmin_parent_selection(pop.x, cfg.parent_selection_prob, rng)
            else:
                parent = int(rng.integers(0, len(pop)))
            child = mutate(pop.x[parent], cfg.mutation_rate, cfg.box_size, rng)
            f_child = np.asarray(objectives(child), dtype=float)
            if not _barrier_feasible(f_child, barrier):
                continue
            candidate = pop.x.copy()
            candidate[parent] = child
            div = population_diversity(ind, candidate)
            if div is None:
                continue
            if orient * div >= orient * current:
                pop.x[parent] = child
                pop.f[parent] = f_child
                current = div
                break
        # else: no offspring formed this generation
        if orient * current > best:
            best = orient * current
            no_improve = 0
        else:
            no_improve += 1
    return pop


def run_noah(cfg: NoahConfig, objectives, reference_set=None) -> RunTrace:
    """Iterate objective optimization, barrier lowering, and diversity
    optimization, recording all three diversity values after every phase."""
    from .bench import hausdorff  # local import to avoid a module cycle

    rng = np.random.default_rng(cfg.rng_seed)
    ind = cfg.make_indicator()
    x0 = rng.uniform(0.0, cfg.box_size, size=(cfg.pop_size, 2))
    f0 = np.array([objectives(x) for x in x0])
    pop = Population(x0, f0)
    if cfg.initial_barrier is not None:
        barrier = np.asarray(cfg.initial_barrier, dtype=float)
    else:
        barrier = pop.f.max(axis=0)

    trace = RunTrace(config=cfg)

    def record(iteration, phase, with_hausdorff):
        hd = math.nan
        if with_hausdorff and reference_set is not None:
            hd = hausdorff(pop.x, reference_set)
        mm = population_diversity(MaxMin(), pop.x)
        re_ = population_diversity(RieszEnergy(s=cfg.s), pop.x)
        sp = population_diversity(SolowPolasky(theta=cfg.theta), pop.x)
        trace.records.append(
            TraceRecord(
                iteration=iteration,
                phase=phase,
                maxmin=mm,
                riesz_energy=re_,
                solow_polasky=math.nan if sp is None else sp,
                hausdorff=hd,
                barrier=tuple(float(v) for v in barrier),
                population=pop.x.copy(),
            )
        )

    record(0, "Init", with_hausdorff=True)
    for iteration in range(1, cfg.iteration_budget + 1):
        pop = nsga2_phase(pop, barrier, cfg.nsga_generations, rng, objectives, cfg)
        record(iteration, "ObjectiveOpt", with_hausdorff=True)
        barrier = lower_barrier(barrier, pop, rng)
        record(iteration, "BarrierLower", with_hausdorff=False)
        pop = diversity_phase(pop, barrier, ind, cfg, rng, objectives)
        record(iteration, "DiversityOpt", with_hausdorff=True)
    return trace
