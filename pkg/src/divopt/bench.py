"""Case-study reproduction: objectives, efficient-set grid, Hausdorff
distance, replicate statistics, the two-sample t-test, and the modified
Max-Min parent-selection experiment."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
import scipy.ndimage
import scipy.special
from scipy.spatial.distance import cdist

from .contributions import all_contributions_maxmin
from .indicators import MaxMin, RieszEnergy, SolowPolasky
from .noah import NoahConfig, mutate, population_diversity, run_noah
from .spaces import build_distance_matrix
from .svgplot import line_chart


def objectives(x: float, y: float) -> tuple:
    """Shifted Himmelblau paired with a paraboloid in x; both minimized."""
    f1 = ((x - 5.0) ** 2 + (y - 5.0) - 11.0) ** 2 + ((x - 5.0) + (y - 5.0) ** 2 - 7.0) ** 2
    f2 = (x - 5.0) ** 2
    return f1, f2


def objective_vector(point) -> np.ndarray:
    return np.array(objectives(point[0], point[1]))


@dataclass
class EfficientSetGrid:
    resolution: int
    eps: float
    box_size: float
    xs: np.ndarray
    ys: np.ndarray
    mask: np.ndarray  # (resolution, resolution) membership, indexed [ix, iy]

    @property
    def members(self) -> np.ndarray:
        ii, jj = np.nonzero(self.mask)
        return np.column_stack([self.xs[ii], self.ys[jj]])

    def connected_components(self) -> int:
        _, count = scipy.ndimage.label(self.mask)  # 4-neighborhood adjacency
        return int(count)


def efficient_set(resolution: int = 100, eps: float = 1.0, box_size: float = 10.0) -> EfficientSetGrid:
    """Grid points not additively eps-dominated by any other grid point."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if eps < 0:
        raise ValueError("eps must be non-negative")
    xs = np.linspace(0.0, box_size, resolution)
    ys = np.linspace(0.0, box_size, resolution)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    f1 = ((gx - 5.0) ** 2 + (gy - 5.0) - 11.0) ** 2 + ((gx - 5.0) + (gy - 5.0) ** 2 - 7.0) ** 2
    f2 = (gx - 5.0) ** 2
    f1 = f1.ravel()
    f2 = f2.ravel()
    n = f1.size
    dominated = np.zeros(n, dtype=bool)
    chunk = 512
    for start in range(0, n, chunk):
        end = min(start + chunk, n)
        dom = (f1[None, :] <= f1[start:end, None] - eps) & (
            f2[None, :] <= f2[start:end, None] - eps
        )
        # A point never dominates itself (relevant only at eps = 0).
        dom[np.arange(end - start), np.arange(start, end)] = False
        dominated[start:end] = dom.any(axis=1)
    mask = (~dominated).reshape(resolution, resolution)
    return EfficientSetGrid(resolution, eps, box_size, xs, ys, mask)


def hausdorff(A, B) -> float:
    """max of the two directed farthest-nearest-neighbor distances (L2)."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if len(A) == 0 or len(B) == 0:
        raise ValueError("hausdorff requires two non-empty point sets")
    d = cdist(A, B)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


@dataclass
class TTestResult:
    t: float
    p: float
    df: float
    welch: bool = False

    @property
    def undefined(self) -> bool:
        return math.isnan(self.t)


def two_sample_ttest(sample_a, sample_b, welch: bool = False) -> TTestResult:
    """Independent two-sample t-test; pooled-variance Student form by default.

    The two-sided p-value comes from the regularized incomplete beta form of
    the t CDF.  Zero variance in both samples with equal means leaves t
    undefined (NaN).
    """
    a = np.asarray(sample_a, dtype=float)
    b = np.asarray(sample_b, dtype=float)
    n1, n2 = len(a), len(b)
    if n1 < 2 or n2 < 2:
        raise ValueError("each sample needs at least 2 observations")
    v1, v2 = a.var(ddof=1), b.var(ddof=1)
    diff = a.mean() - b.mean()
    if welch:
        se2 = v1 / n1 + v2 / n2
        if se2 == 0.0:
            return TTestResult(math.nan, math.nan, math.nan, welch=True)
        df = se2**2 / ((v1 / n1) ** 2 / (n1 - 1) + (v2 / n2) ** 2 / (n2 - 1))
    else:
        sp2 = ((n1 - 1) * v1 + (n2 - 1) * v2) / (n1 + n2 - 2)
        se2 = sp2 * (1.0 / n1 + 1.0 / n2)
        df = n1 + n2 - 2
        if se2 == 0.0:
            return TTestResult(math.nan, math.nan, float(df))
    t = diff / math.sqrt(se2)
    # P(T > |t|) = I_{df/(df+t^2)}(df/2, 1/2) / 2 for the t distribution.
    p = float(scipy.special.betainc(df / 2.0, 0.5, df / (df + t * t)))
    return TTestResult(float(t), p, float(df), welch=welch)


# ---------------------------------------------------------------------------
# Replicate experiment


MEASURES = ["maxmin", "riesz_energy", "solow_polasky", "hausdorff"]


@dataclass
class ReplicateStats:
    indicator: str
    R: int
    keys: list  # (iteration, phase) in trace order
    mean: dict  # measure -> array aligned with keys
    sem: dict

    def to_csv(self, path) -> None:
        header = "iteration,phase," + ",".join(
            f"{m}_{stat}" for m in MEASURES for stat in ("mean", "sem")
        )
        lines = [header]
        for k, (iteration, phase) in enumerate(self.keys):
            cells = [str(iteration), phase]
            for m in MEASURES:
                cells.append(f"{self.mean[m][k]:.17g}")
                cells.append(f"{self.sem[m][k]:.17g}")
            lines.append(",".join(cells))
        Path(path).write_text("\n".join(lines) + "\n")


def _trace_measures(trace) -> dict:
    out = {m: [] for m in MEASURES}
    for r in trace.records:
        out["maxmin"].append(r.maxmin)
        out["riesz_energy"].append(r.riesz_energy)
        out["solow_polasky"].append(r.solow_polasky)
        out["hausdorff"].append(r.hausdorff)
    return {m: np.array(v) for m, v in out.items()}


def diversity_slopes(stats: ReplicateStats) -> dict:
    """Least-squares slope of each mean series over DiversityOpt records."""
    idx = [k for k, (_, phase) in enumerate(stats.keys) if phase == "DiversityOpt"]
    slopes = {}
    for m in MEASURES:
        ys = stats.mean[m][idx]
        keep = ~np.isnan(ys)
        if keep.sum() < 2:
            slopes[m] = math.nan
            continue
        xs = np.arange(len(ys), dtype=float)[keep]
        slopes[m] = float(np.polyfit(xs, ys[keep], 1)[0])
    return slopes


def run_experiment(
    cfg: NoahConfig,
    R: int,
    out_dir=None,
    indicators=("maxmin", "riesz", "sp"),
    reference_set=None,
    base_seed: int = 1000,
) -> dict:
    """R independently seeded NOAH runs per indicator variant.

    Returns indicator -> ReplicateStats; per-run traces, stats.csv, a plain
    text trend report, and SVG plots go to ``out_dir`` when given.
    """
    if R < 2:
        raise ValueError("R must be >= 2")
    if reference_set is None:
        reference_set = efficient_set().members
    results = {}
    for name in indicators:
        traces = []
        for i in range(R):
            run_cfg = replace(cfg, indicator=name, rng_seed=base_seed + i)
            trace = run_noah(run_cfg, objective_vector, reference_set=reference_set)
            traces.append(trace)
            if out_dir is not None:
                d = Path(out_dir) / name
                d.mkdir(parents=True, exist_ok=True)
                trace.to_csv(d / f"trace_{run_cfg.rng_seed}.csv")
                trace.populations_to_csv(d / f"populations_{run_cfg.rng_seed}.csv")
        keys = [(r.iteration, r.phase) for r in traces[0].records]
        per_run = [_trace_measures(t) for t in traces]
        # Aggregate in sorted-seed order so reductions are order-independent.
        mean, sem = {}, {}
        for m in MEASURES:
            data = np.vstack([pr[m] for pr in per_run])
            mean[m] = data.mean(axis=0)
            sem[m] = data.std(axis=0, ddof=1) / math.sqrt(R)
        stats = ReplicateStats(indicator=name, R=R, keys=keys, mean=mean, sem=sem)
        results[name] = stats
        if out_dir is not None:
            d = Path(out_dir) / name
            stats.to_csv(d / "stats.csv")
            plot_dir = d / "plots"
            plot_dir.mkdir(exist_ok=True)
            idx = [k for k, (_, ph) in enumerate(keys) if ph == "DiversityOpt"]
            for m in MEASURES:
                xs = np.arange(len(idx), dtype=float)
                line_chart(
                    plot_dir / f"{m}.svg",
                    title=f"{m} (driving indicator: {name}, mean of {R} runs)",
                    x=xs,
                    series={m: (mean[m][idx], sem[m][idx])},
                    x_label="iteration",
                    y_label=m,
                )
    if out_dir is not None:
        Path(out_dir, "report.txt").write_text(trend_report(results))
    return results


def trend_report(results: dict) -> str:
    """Slope signs plus the cross-indicator ranking claims, for manual
    comparison with the published run plots (not hard-asserted)."""
    lines = []
    for name, stats in results.items():
        slopes = diversity_slopes(stats)
        lines.append(f"[{name}] slopes over DiversityOpt iterations:")
        for m in MEASURES:
            lines.append(f"    {m}: {slopes[m]:+.6g}")
    # Deterioration rates: oriented slope (negative = getting worse).
    deterioration = {}
    final_hausdorff = {}
    for name, stats in results.items():
        slopes = diversity_slopes(stats)
        deterioration[name] = {
            "maxmin": slopes["maxmin"],
            "riesz_energy": -slopes["riesz_energy"],
            "solow_polasky": slopes["solow_polasky"],
        }
        hd = stats.mean["hausdorff"]
        keep = ~np.isnan(hd)
        final_hausdorff[name] = float(hd[keep][-1]) if keep.any() else math.nan
    slowest = {}
    for m in ("maxmin", "riesz_energy", "solow_polasky"):
        rates = {n: deterioration[n][m] for n in results}
        slowest[m] = max(rates, key=lambda n: rates[n])  # least negative
    lines.append("slowest deterioration per measure (expected maxmin): " + str(slowest))
    lines.append("final mean Hausdorff per driving indicator (expected sp worst): " + str(final_hausdorff))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Modified Max-Min parent-selection experiment


@dataclass
class GenerationCounts:
    generations: np.ndarray  # first generation reaching the target, per run
    censored: int  # runs that hit the cap before the target

    @property
    def reached(self) -> np.ndarray:
        return self.generations[np.isfinite(self.generations)]


@dataclass
class ModifiedMaxMinReport:
    target: float
    R: int
    modified: GenerationCounts
    original: GenerationCounts
    modified_mean: float
    modified_sd: float
    original_mean: float
    original_sd: float
    ttest: TTestResult

    def summary(self) -> str:
        return (
            f"generations to Max-Min >= {self.target} over {self.R} runs\n"
            f"  modified (prob=0.9): mean {self.modified_mean:.2f} sd {self.modified_sd:.2f}"
            f" (censored {self.modified.censored})\n"
            f"  original (prob=0):   mean {self.original_mean:.2f} sd {self.original_sd:.2f}"
            f" (censored {self.original.censored})\n"
            f"  t = {self.ttest.t:.4f}, p = {self.ttest.p:.4f}\n"
            "  published comparison point: means 31.84 / 32.24\n"
        )


def _generations_to_target(
    prob: float, seed: int, target: float, cfg: NoahConfig, gen_cap: int
) -> float:
    """Diversity-only Max-Min optimization; count generations until the
    population Max-Min reaches the target.

    The published setup names a barrier of [3, 3], but the case-study
    objectives have an empty feasible region under it, so the barrier cannot
    have constrained offspring acceptance; this loop runs unconstrained.
    """
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, cfg.box_size, size=(cfg.pop_size, 2))
    d = cdist(pts, pts)
    np.fill_diagonal(d, np.inf)
    current = d.min()
    if current >= target:
        return 0.0
    for gen in range(1, gen_cap + 1):
        for _ in range(cfg.max_mutation_attempts):
            r = rng.random()
            parent = int(rng.integers(0, cfg.pop_size))
            if r < prob:
                contribs = all_contributions_maxmin(
                    build_distance_matrix(pts), range(cfg.pop_size)
                )
                nonzero = np.flatnonzero(np.abs(contribs) > 0.0)
                if len(nonzero):
                    parent = int(nonzero[int(rng.integers(0, len(nonzero)))])
            child = mutate(pts[parent], cfg.mutation_rate, cfg.box_size, rng)
            row = np.sqrt(((pts - child) ** 2).sum(axis=1))
            row[parent] = np.inf
            trial = d.copy()
            trial[parent, :] = row
            trial[:, parent] = row
            if trial.min() >= current:
                pts[parent] = child
                d = trial
                current = d.min()
                break
        if current >= target:
            return float(gen)
    return math.inf  # censored at the generation cap


def run_modified_maxmin_experiment(
    R: int,
    target: float = 1.9,
    cfg: NoahConfig | None = None,
    gen_cap: int = 2000,
    base_seed: int = 5000,
) -> ModifiedMaxMinReport:
    """Compare generations-to-target with and without the contributor-biased
    parent selection (prob = 0.9 versus plain uniform)."""
    if target <= 0:
        raise ValueError("target must be positive")
    if cfg is None:
        cfg = NoahConfig(c=20, mutation_rate=10.0, parent_selection_prob=0.9)
    counts = {}
    for label, prob, offset in (("modified", cfg.parent_selection_prob, 0), ("original", 0.0, R)):
        gens = np.array(
            [
                _generations_to_target(prob, base_seed + offset + i, target, cfg, gen_cap)
                for i in range(R)
            ]
        )
        counts[label] = GenerationCounts(
            generations=gens, censored=int(np.sum(~np.isfinite(gens)))
        )
    mod, orig = counts["modified"].reached, counts["original"].reached
    if len(mod) >= 2 and len(orig) >= 2:
        ttest = two_sample_ttest(mod, orig)
    else:
        ttest = TTestResult(math.nan, math.nan, math.nan)

    def _stats(x):
        if len(x) == 0:
            return math.nan, math.nan
        return float(x.mean()), float(x.std(ddof=1)) if len(x) > 1 else math.nan

    mod_mean, mod_sd = _stats(mod)
    orig_mean, orig_sd = _stats(orig)
    return ModifiedMaxMinReport(
        target=target,
        R=R,
        modified=counts["modified"],
        original=counts["original"],
        modified_mean=mod_mean,
        modified_sd=mod_sd,
        original_mean=orig_mean,
        original_sd=orig_sd,
        ttest=ttest,
    )
