"""Discretized chordal Loewner evolution driven by sqrt(kappa) Brownian motion.

A driving path is discretized into a chain of elementary centered slit maps
(piecewise-constant driving, one vertical slit per step).  Composing the
chain forward realizes the centered hull map; composing the elementary
inverses tip-first realizes its inverse, which lifts ("zips") an interval
of the real line onto the curve.  The curve itself is recovered by zipping
the origin through every prefix of the chain.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import DomainError, SwallowedPointError
from .formulas import validate_kappa

__all__ = [
    "DrivingPath",
    "SlitChain",
    "TraceCloud",
    "ZipResult",
    "sample_driving",
    "forward_map",
    "reverse_map",
    "reverse_zip",
    "trace",
    "zip_set",
    "densify_polyline",
    "zipped_window_right_endpoint",
]


@dataclass(frozen=True)
class DrivingPath:
    """Driving function samples W_{t_k} on an increasing capacity-time grid."""

    times: np.ndarray
    values: np.ndarray
    kappa: float
    seed: int

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if times.shape != values.shape or times.ndim != 1 or times.size < 2:
            raise DomainError("times and values must be equal-length 1d arrays (>= 2 entries)")
        if times[0] != 0.0 or values[0] != 0.0:
            raise DomainError("driving paths start at (t, W) = (0, 0)")
        if np.any(np.diff(times) <= 0):
            raise DomainError("times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @property
    def t_final(self) -> float:
        return float(self.times[-1])

    @property
    def n_steps(self) -> int:
        return self.times.size - 1

    def metadata_json(self) -> str:
        return json.dumps(
            {
                "kappa": self.kappa,
                "t_final": self.t_final,
                "n_steps": self.n_steps,
                "seed": self.seed,
            }
        )


def sample_driving(kappa: float, t_final: float, n_steps: int, seed: int) -> DrivingPath:
    """Sample W = sqrt(kappa) B on a uniform grid of n_steps steps over [0, t_final]."""
    kappa = validate_kappa(kappa)
    if n_steps < 1:
        raise DomainError(f"n_steps must be >= 1, got {n_steps}")
    if not t_final > 0:
        raise DomainError(f"t_final must be positive, got {t_final}")
    rng = np.random.default_rng(seed)
    dt = t_final / n_steps
    increments = rng.standard_normal(n_steps) * math.sqrt(kappa * dt)
    values = np.concatenate([[0.0], np.cumsum(increments)])
    times = np.linspace(0.0, t_final, n_steps + 1)
    return DrivingPath(times=times, values=values, kappa=kappa, seed=seed)


@dataclass(frozen=True)
class SlitChain:
    """Ordered elementary slit steps (capacity increment, driving increment).

    Steps are stored in forward (capacity-time) order; the reverse
    operations apply the elementary inverses tip-first.  ``orientation``
    records the intended use of the chain.
    """

    dt: np.ndarray
    ddriving: np.ndarray
    kappa: float
    orientation: str = "forward"

    def __post_init__(self):
        dt = np.ascontiguousarray(self.dt, dtype=float)
        dd = np.ascontiguousarray(self.ddriving, dtype=float)
        if dt.shape != dd.shape or dt.ndim != 1:
            raise DomainError("dt and ddriving must be equal-length 1d arrays")
        if np.any(dt <= 0):
            raise DomainError("capacity increments must be positive")
        if self.orientation not in ("forward", "reverse"):
            raise DomainError(f"orientation must be forward|reverse, got {self.orientation}")
        object.__setattr__(self, "dt", dt)
        object.__setattr__(self, "ddriving", dd)

    @classmethod
    def from_driving(cls, path: DrivingPath, orientation: str = "forward") -> "SlitChain":
        return cls(
            dt=np.diff(path.times),
            ddriving=np.diff(path.values),
            kappa=path.kappa,
            orientation=orientation,
        )

    @property
    def n_steps(self) -> int:
        return self.dt.size

    @property
    def t_final(self) -> float:
        return float(self.dt.sum())


@dataclass(frozen=True)
class TraceCloud:
    """Finite cloud of upper half plane points with their source labels."""

    points: np.ndarray   # complex
    labels: np.ndarray   # capacity time or boundary coordinate per point
    status: np.ndarray   # "zipped" or "boundary" per point

    def __post_init__(self):
        if np.any(np.asarray(self.points).imag < 0):
            raise DomainError("trace cloud points must have nonnegative imaginary part")

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["label", "re", "im", "status"])
            for lab, pt, st in zip(self.labels, self.points, self.status):
                writer.writerow([repr(float(lab)), repr(float(pt.real)), repr(float(pt.imag)), st])

    @classmethod
    def from_csv(cls, path: str | Path) -> "TraceCloud":
        labels, points, status = [], [], []
        with open(path, newline="") as f:
            reader = csv.reader(f)
            next(reader)
            for lab, re_, im_, st in reader:
                labels.append(float(lab))
                points.append(complex(float(re_), float(im_)))
                status.append(st)
        return cls(
            points=np.asarray(points, dtype=complex),
            labels=np.asarray(labels, dtype=float),
            status=np.asarray(status, dtype=object),
        )


@dataclass(frozen=True)
class ZipResult:
    """Images of boundary points under the inverse chain, with zip status."""

    images: np.ndarray    # complex
    zipped: np.ndarray    # bool: lifted off the boundary
    lifted_at: np.ndarray  # step index where the point zipped, -1 if never


def _as_points(z) -> tuple[np.ndarray, np.ndarray, bool]:
    scalar = np.isscalar(z) or np.ndim(z) == 0
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    return np.ascontiguousarray(arr.real), np.ascontiguousarray(arr.imag), scalar


def forward_map(chain: SlitChain, z, on_swallowed: str = "raise"):
    """Composed forward slit map applied to points of the closed half plane.

    Real points that enter the open window of width 4 sqrt(dt_k) around a
    step's driving position would have been absorbed by the continuum flow;
    they are reported via ``SwallowedPointError`` (or flagged as nan with
    ``on_swallowed="nan"``).
    """
    if np.any(np.asarray(z).imag < 0):
        raise DomainError("forward_map expects points of the closed upper half plane")
    zr, zi, scalar = _as_points(z)
    out, swallowed = _kernels.push_forward(zr, zi, chain.dt, chain.ddriving)
    if swallowed.any():
        if on_swallowed == "raise":
            raise SwallowedPointError(
                f"{int(swallowed.sum())} point(s) entered a slit base during composition"
            )
        out = out.copy()
        out[swallowed] = complex(np.nan, np.nan)
    return out[0] if scalar else out


def reverse_map(chain: SlitChain, z):
    """Composed inverse chain applied to interior points (tip first)."""
    zr, zi, scalar = _as_points(z)
    if np.any(zi <= 0):
        raise DomainError("reverse_map expects interior points; use reverse_zip for reals")
    out = _kernels.reverse_interior(zr, zi, chain.dt, chain.ddriving)
    return out[0] if scalar else out


def reverse_zip(chain: SlitChain, x) -> ZipResult:
    """Zip real boundary points through the full inverse chain.

    A point acquires status "zipped" at the first (tip-most) step whose open
    window contains it, after which it evolves as an interior point; window
    endpoints count as not zipped.  Unzipped points stay on the real line.
    """
    xs = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=float)))
    prefix = np.full(xs.size, chain.n_steps, dtype=np.int64)
    images, lifted = _kernels.zip_points(xs, prefix, chain.dt, chain.ddriving)
    return ZipResult(images=images, zipped=lifted >= 0, lifted_at=lifted)


def trace(chain: SlitChain, resolution: int | None = None) -> TraceCloud:
    """Approximate the curve by zipping the origin through chain prefixes.

    ``resolution`` prefixes are selected uniformly (the full chain tip is
    always included); one cloud point per prefix, labeled by capacity time.
    """
    n = chain.n_steps
    resolution = n if resolution is None else int(resolution)
    if not 1 <= resolution <= n:
        raise DomainError(f"resolution must lie in [1, {n}], got {resolution}")
    # spanned from the tip so resolution=1 yields the full-chain endpoint
    prefixes = np.unique(np.linspace(n, 1, resolution).round().astype(np.int64))
    xs = np.zeros(prefixes.size)
    images, _ = _kernels.zip_points(xs, prefixes, chain.dt, chain.ddriving)
    times = np.cumsum(chain.dt)[prefixes - 1]
    return TraceCloud(
        points=images,
        labels=times,
        status=np.asarray(["zipped"] * prefixes.size, dtype=object),
    )


def zip_set(chain: SlitChain, ys) -> TraceCloud:
    """Images of the zipped subset of a finite boundary set.

    Points that never enter a window are dropped; labels retain the original
    boundary coordinates of the surviving points.
    """
    ys = np.ascontiguousarray(np.atleast_1d(np.asarray(ys, dtype=float)))
    result = reverse_zip(chain, ys)
    keep = result.zipped
    return TraceCloud(
        points=result.images[keep],
        labels=ys[keep],
        status=np.asarray(["zipped"] * int(keep.sum()), dtype=object),
    )


def densify_polyline(points: np.ndarray, max_gap: float) -> np.ndarray:
    """Insert chord points so consecutive gaps along a polyline are <= max_gap.

    Capacity-time sampling leaves uneven gaps along the trace; box counts of
    the bare point cloud undercount wherever the curve sprints between
    samples.  Chord interpolation restores the covering at scales above
    ``max_gap`` (below it the polyline is an artifact, so keep the counting
    window above).
    """
    points = np.asarray(points, dtype=complex)
    if points.size < 2 or not max_gap > 0:
        return points
    gaps = np.abs(np.diff(points))
    pieces = [points[:1]]
    for i, gap in enumerate(gaps):
        if gap > max_gap:
            k = int(math.ceil(gap / max_gap))
            frac = np.arange(1, k + 1) / k
            pieces.append(points[i] + (points[i + 1] - points[i]) * frac)
        else:
            pieces.append(points[i + 1 : i + 2])
    return np.concatenate(pieces)


def zipped_window_right_endpoint(chain: SlitChain, rtol: float = 1e-4) -> float:
    """Right endpoint of the interval of reals zipped by the full inverse chain.

    The zipped set is an interval around 0 (the per-step window is an
    interval and the real dynamics preserves order), so the endpoint is
    found by doubling then bisection.
    """
    hi = 2.0 * math.sqrt(max(chain.t_final, chain.dt[-1]))
    while reverse_zip(chain, hi).zipped[0]:
        hi *= 2.0
        if hi > 1e12:
            raise RuntimeError("zipped window unexpectedly unbounded")
    lo = 0.0
    while hi - lo > rtol * hi + 1e-15:
        mid = 0.5 * (lo + hi)
        if reverse_zip(chain, mid).zipped[0]:
            lo = mid
        else:
            hi = mid
    return lo
