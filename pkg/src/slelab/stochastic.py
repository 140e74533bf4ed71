"""Subordinators and correlated Brownian ingredients of the dimension checks.

Three samplers live here: the index-1/2 subordinator read off a single
Brownian path as a family of first-passage times, the general one-sided
alpha-stable subordinator with exact increments, and the correlated planar
Brownian motion whose ancestor-free times carry the kappa/8 dimension.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .boxcount import BoxCountResult, WindowPolicy, box_dimension_1d, degenerate_result
from .cantor import CantorSpec, discretize
from .errors import DomainError, HorizonError
from .formulas import peanosphere_correlation, validate_kappa

__all__ = [
    "SubordinatorPath",
    "CorrelatedBM",
    "hitting_time_subordinator",
    "stable_subordinator",
    "standard_stable_increments",
    "image_dimension",
    "sample_correlated_bm",
    "ancestor_free_times",
    "save_times_csv",
]


@dataclass(frozen=True)
class SubordinatorPath:
    """Nondecreasing path S(r) sampled on an increasing local-time grid."""

    alpha: float
    grid: np.ndarray
    values: np.ndarray
    seed: int

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.shape != values.shape or grid.ndim != 1:
            raise DomainError("grid and values must be equal-length 1d arrays")
        if np.any(np.diff(grid) <= 0):
            raise DomainError("grid must be strictly increasing")
        if np.any(np.diff(values) < 0):
            raise DomainError("subordinator values must be nondecreasing")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __call__(self, r) -> np.ndarray:
        """Right-continuous step evaluation at points within the grid range."""
        r = np.asarray(r, dtype=float)
        if np.any(r < self.grid[0]) or np.any(r > self.grid[-1]):
            raise DomainError("evaluation points must lie within the sampled grid")
        idx = np.searchsorted(self.grid, r, side="right") - 1
        return self.values[idx]

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["r", "value"])
            for r, v in zip(self.grid, self.values):
                writer.writerow([repr(float(r)), repr(float(v))])


def _validate_grid(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size < 1:
        raise DomainError("grid must be nonempty")
    if grid[0] < 0 or np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be nonnegative and strictly increasing")
    return grid


#: chunk size for streaming Brownian path generation
_CHUNK = 1 << 20


def hitting_time_subordinator(
    grid,
    seed: int,
    dt: float = 1e-5,
    max_time: float | None = None,
) -> SubordinatorPath:
    """First-passage times S(r) = inf{t : B_t = -r} read off one Brownian path.

    The path is simulated at resolution ``dt`` in streaming chunks and
    extended until the deepest level is hit or ``max_time`` is exceeded
    (default 6400 * r_max^2, which leaves about a 1% chance of a horizon
    error for a fresh seed).  The resulting path is an index-1/2 stable
    subordinator up to discretization of the level-crossing times.
    """
    grid = _validate_grid(grid)
    levels = grid.copy()
    r_max = levels[-1]
    if r_max <= 0:
        raise DomainError("the deepest level must be positive")
    if max_time is None:
        max_time = 6400.0 * r_max * r_max
    rng = np.random.default_rng(seed)
    sqrt_dt = math.sqrt(dt)
    hit = np.zeros(levels.size)
    n_hit = 1 if levels[0] == 0.0 else 0  # S(0) = 0
    current = 0.0
    running_min = 0.0
    steps_done = 0
    max_steps = int(max_time / dt)
    while n_hit < levels.size:
        if steps_done >= max_steps:
            raise HorizonError(
                f"Brownian path reached t = {steps_done * dt:.1f} without hitting "
                f"-{levels[n_hit]:.4g}; raise max_time to extend"
            )
        m = min(_CHUNK, max_steps - steps_done)
        chunk = current + np.cumsum(rng.standard_normal(m) * sqrt_dt)
        cummin = np.minimum.accumulate(chunk)
        depth = -min(running_min, cummin[-1])
        # levels newly reached within this chunk, located by first crossing
        while n_hit < levels.size and levels[n_hit] <= depth:
            idx = np.searchsorted(-cummin, levels[n_hit], side="left")
            hit[n_hit] = (steps_done + idx + 1) * dt
            n_hit += 1
        running_min = min(running_min, cummin[-1])
        current = chunk[-1]
        steps_done += m
    return SubordinatorPath(alpha=0.5, grid=grid, values=hit, seed=seed)


def standard_stable_increments(alpha: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """One-sided standard alpha-stable variates with Laplace transform exp(-s^alpha).

    Kanter's representation: X = (A(U)/W)^((1-alpha)/alpha) with U uniform
    on (0, pi), W unit exponential, and
    A(u) = [sin(alpha u)/sin(u)]^(alpha/(1-alpha)) * sin((1-alpha) u)/sin(u).
    Evaluated in log space so the heavy tail cannot overflow for alpha
    near 1.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    u = rng.uniform(0.0, math.pi, size)
    w = rng.standard_exponential(size)
    log_sin_u = np.log(np.sin(u))
    log_a = (alpha * np.log(np.sin(alpha * u)) + (1.0 - alpha) * np.log(np.sin((1.0 - alpha) * u))
             - log_sin_u) / (1.0 - alpha)
    return np.exp(((1.0 - alpha) / alpha) * (log_a - np.log(w)))


def stable_subordinator(
    alpha: float,
    grid,
    seed: int,
    scale: float = 1.0,
) -> SubordinatorPath:
    """Exact one-sided alpha-stable subordinator on an arbitrary grid.

    Increment over a gap of length dr is (scale * dr)^(1/alpha) times a
    standard variate, giving E[exp(-s S(r))] = exp(-scale * r * s^alpha)
    and the self-similarity S(c r) ~ c^(1/alpha) S(r) in law.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    grid = _validate_grid(grid)
    rng = np.random.default_rng(seed)
    gaps = np.diff(np.concatenate([[0.0], grid]))
    keep = gaps > 0
    increments = np.zeros(grid.size)
    xs = standard_stable_increments(alpha, int(keep.sum()), rng)
    increments[keep] = (scale * gaps[keep]) ** (1.0 / alpha) * xs
    return SubordinatorPath(alpha=alpha, grid=grid, values=np.cumsum(increments), seed=seed)


def image_dimension(
    path: SubordinatorPath,
    spec: CantorSpec,
    depth: int | None = None,
    window_policy: WindowPolicy | None = None,
) -> BoxCountResult:
    """Box dimension of the subordinator image of a digit-restriction set."""
    ys = discretize(spec, depth)
    images = np.unique(path(ys))
    if images.size < 2:
        return degenerate_result(window_policy)
    return box_dimension_1d(images, window_policy=window_policy)


@dataclass(frozen=True)
class CorrelatedBM:
    """Planar Brownian pair (L, R) with correlated increments."""

    correlation: float
    times: np.ndarray
    left: np.ndarray
    right: np.ndarray
    seed: int

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["t", "left", "right"])
            for t, l, r in zip(self.times, self.left, self.right):
                writer.writerow([repr(float(t)), repr(float(l)), repr(float(r))])


def sample_correlated_bm(
    correlation: float,
    t_final: float,
    n_steps: int,
    seed: int,
) -> CorrelatedBM:
    """Uniform-grid planar Brownian motion with the given increment correlation."""
    if not -1.0 < correlation < 1.0:
        raise DomainError(f"correlation must lie in (-1, 1), got {correlation}")
    if n_steps < 1 or not t_final > 0:
        raise DomainError("need n_steps >= 1 and t_final > 0")
    rng = np.random.default_rng(seed)
    dt = t_final / n_steps
    z1 = rng.standard_normal(n_steps)
    z2 = rng.standard_normal(n_steps)
    root = math.sqrt(1.0 - correlation * correlation)
    left = np.concatenate([[0.0], np.cumsum(z1) * math.sqrt(dt)])
    right = np.concatenate([[0.0], np.cumsum(correlation * z1 + root * z2) * math.sqrt(dt)])
    times = np.linspace(0.0, t_final, n_steps + 1)
    return CorrelatedBM(correlation=correlation, times=times, left=left, right=right, seed=seed)


def save_times_csv(times, path: str | Path) -> None:
    """Write a set of times (e.g. ancestor-free times) as a one-column CSV."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["t"])
        for t in np.asarray(times, dtype=float).ravel():
            writer.writerow([repr(float(t))])


MIN_ANCESTOR_STEPS = 10**5


def ancestor_free_times(
    kappa: float,
    n_steps: int,
    seed: int,
    t_final: float = 1.0,
    candidate_stride: int = 1,
) -> np.ndarray:
    """Grid times of a correlated Brownian pair with no earlier simultaneous infimum.

    The pair has correlation -cos(4 pi / kappa), kappa in (4, 8); a grid time
    is kept when no earlier candidate time attains the running infimum of
    both coordinates over the intervening window (exact comparisons at grid
    resolution, earlier meaning strictly earlier).  ``candidate_stride``
    restricts the candidate ancestors to every stride-th grid point; the
    returned set can only grow as candidates are thinned.
    """
    kappa = validate_kappa(kappa)
    if not 4.0 < kappa < 8.0:
        raise DomainError(f"ancestor-free times require kappa in (4, 8), got {kappa}")
    if n_steps < MIN_ANCESTOR_STEPS:
        raise DomainError(f"n_steps must be >= {MIN_ANCESTOR_STEPS} for a usable estimate")
    if candidate_stride < 1:
        raise DomainError("candidate_stride must be >= 1")
    rho = peanosphere_correlation(kappa)
    bm = sample_correlated_bm(rho, t_final, n_steps, seed)
    mask = _kernels.ancestor_free_mask(bm.left, bm.right, candidate_stride)
    return bm.times[mask]
