"""Box-counting dimension estimation for point clouds on the line and the plane.

Counts occupied boxes on a dyadic ladder of scales anchored at the cloud
minimum, then regresses log N(eps) on log(1/eps).  The dyadic ladder makes
the counts exactly monotone (each fine box nests in one coarse box), and
anchoring at the minimum makes the whole estimate invariant under affine
rescaling of the data.  Also hosts the monotone mass profile used to read
sets off in measure ("quantum") coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import DomainError, InsufficientScalesError

MIN_POINTS = 100


@dataclass(frozen=True)
class WindowPolicy:
    """How the box-counting scale window is chosen from the data.

    max_fraction: eps_max = largest axis extent * max_fraction
    floor_percentile: eps_min = this percentile of positive nearest-neighbor
        spacings (box sizes below the sampling resolution only count points)
    sat_fraction: scales whose counts exceed this fraction of the cloud size
        are excluded from the regression window; 1.0 disables the cut.
        Statistical samples of a continuum set flatten as counts approach
        the sample size, so Monte Carlo estimates should trim; exact sets
        (lattices, endpoint families) track the scaling law all the way to
        their spacing floor and should not.
    min_decades: minimum log10 span of the regression window to accept;
        below this the estimate is refused as unsupported
    """

    max_fraction: float = 0.125
    floor_percentile: float = 1.0
    sat_fraction: float = 1.0
    min_decades: float = 1.5

    @classmethod
    def for_samples(cls) -> "WindowPolicy":
        """Policy for Monte Carlo sample clouds: drop the saturated tail."""
        return cls(sat_fraction=0.4)

    def to_dict(self) -> dict:
        return {
            "max_fraction": self.max_fraction,
            "floor_percentile": self.floor_percentile,
            "sat_fraction": self.sat_fraction,
            "min_decades": self.min_decades,
        }


@dataclass(frozen=True)
class BoxCountResult:
    """Scales, occupied-box counts, and the regression estimate they support."""

    scales: np.ndarray          # decreasing eps values
    counts: np.ndarray          # occupied boxes per scale (nondecreasing)
    slope: float                # dimension estimate
    stderr: float               # OLS standard error of the slope
    window: tuple[int, int]     # index range of scales used in the regression
    policy: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "scales": list(map(float, self.scales)),
                "counts": list(map(int, self.counts)),
                "slope": self.slope,
                "stderr": self.stderr,
                "window": list(self.window),
                "policy": self.policy,
            }
        )


def degenerate_result(policy: WindowPolicy | None = None) -> BoxCountResult:
    """Zero-dimension result for clouds with no extent (or a single point)."""
    policy = policy or WindowPolicy()
    return BoxCountResult(
        scales=np.empty(0),
        counts=np.empty(0, dtype=np.int64),
        slope=0.0,
        stderr=0.0,
        window=(0, 0),
        policy=policy.to_dict(),
    )


def _scale_ladder(
    coords: np.ndarray,
    extent: float,
    scale_range: tuple[float, float] | None,
    policy: WindowPolicy,
) -> np.ndarray:
    """Dyadic eps ladder from eps_max down to the spacing floor."""
    if scale_range is not None:
        eps_min, eps_max = float(scale_range[0]), float(scale_range[1])
        if not 0 < eps_min < eps_max:
            raise DomainError(f"scale_range must satisfy 0 < min < max, got {scale_range}")
    else:
        eps_max = extent * policy.max_fraction
        if coords.shape[1] == 1:
            gaps = np.diff(np.sort(coords[:, 0]))
            positive = gaps[gaps > 0]
        else:
            dists = _nn_distances(coords)
            positive = dists[(dists > 0) & np.isfinite(dists)]
        if positive.size == 0:
            return np.empty(0)
        eps_min = float(np.percentile(positive, policy.floor_percentile))
        eps_min = max(eps_min, extent * 1e-14)
    if eps_min >= eps_max:
        return np.empty(0)
    n = int(np.floor(np.log2(eps_max / eps_min))) + 1
    return eps_max / np.exp2(np.arange(n))


def _box_indices(shifted: np.ndarray, extent: float, eps: float) -> np.ndarray:
    """Half-open box index per coordinate, with the supremum clipped inward.

    Covering [0, extent] by width-eps boxes takes ceil(extent/eps) boxes;
    assigning the maximum point to the last box avoids counting a spurious
    extra box when extent/eps is integral.
    """
    last = max(int(np.ceil(extent / eps)), 1) - 1
    return np.minimum(np.floor(shifted / eps), last)


def _nn_distances(coords: np.ndarray) -> np.ndarray:
    """Euclidean nearest-neighbor distance per point (sort-based sweep)."""
    order = np.lexsort((coords[:, 1], coords[:, 0]))
    pts = coords[order]
    n = len(pts)
    best = np.full(n, np.inf)
    # points nearby in the sorted order are nearby in the plane often enough
    # for a percentile-grade floor; exactness is not needed here
    for off in range(1, min(8, n)):
        d = np.hypot(pts[off:, 0] - pts[:-off, 0], pts[off:, 1] - pts[:-off, 1])
        best[off:] = np.minimum(best[off:], d)
        best[:-off] = np.minimum(best[:-off], d)
    return best


def _regress(
    scales: np.ndarray,
    counts: np.ndarray,
    n_points: int,
    policy: WindowPolicy,
    clipped: bool,
) -> BoxCountResult:
    """OLS fit of log N against log(1/eps) over the unsaturated window."""
    if clipped:
        cap = policy.sat_fraction * n_points
        inside = np.nonzero(counts <= cap)[0]
        hi = int(inside[-1]) + 1 if inside.size else 0
    else:
        hi = len(scales)
    if hi < 3:
        raise InsufficientScalesError(
            "fewer than 3 unsaturated box scales; cloud too small for its extent"
        )
    span = np.log10(scales[0] / scales[hi - 1])
    needed = policy.min_decades if clipped else 0.0
    if span < needed:
        raise InsufficientScalesError(
            f"unsaturated scale span {span:.2f} decades < required {needed:.2f}"
        )
    logi = np.log(1.0 / scales[:hi])
    logn = np.log(counts[:hi].astype(float))
    fit = stats.linregress(logi, logn)
    return BoxCountResult(
        scales=scales,
        counts=counts,
        slope=float(fit.slope),
        stderr=float(fit.stderr),
        window=(0, hi),
        policy=policy.to_dict(),
    )


def box_dimension_1d(
    points,
    scale_range: tuple[float, float] | None = None,
    window_policy: WindowPolicy | None = None,
) -> BoxCountResult:
    """Box-counting dimension of a finite set of reals.

    Boxes are half-open intervals of width eps anchored at the minimum point;
    counts are taken on a dyadic ladder of scales and the slope of
    log N(eps) against log(1/eps) is returned with its OLS standard error.
    """
    policy = window_policy or WindowPolicy()
    pts = np.asarray(points, dtype=float).ravel()
    if pts.size < MIN_POINTS:
        raise DomainError(f"need at least {MIN_POINTS} points, got {pts.size}")
    lo, hi = float(pts.min()), float(pts.max())
    extent = hi - lo
    if extent == 0.0:
        return degenerate_result(policy)
    scales = _scale_ladder(pts[:, None], extent, scale_range, policy)
    if scales.size < 3:
        raise InsufficientScalesError("cloud supports fewer than 3 box scales")
    shifted = pts - lo
    counts = []
    for eps in scales:
        counts.append(np.unique(_box_indices(shifted, extent, eps)).size)
    return _regress(
        scales, np.asarray(counts, dtype=np.int64), pts.size, policy, scale_range is None
    )


def box_dimension_2d(
    points,
    scale_range: tuple[float, float] | None = None,
    window_policy: WindowPolicy | None = None,
) -> BoxCountResult:
    """Box-counting dimension of a finite planar cloud.

    ``points`` may be complex or an (n, 2) real array.  Square boxes of side
    eps are anchored at the componentwise minimum.
    """
    policy = window_policy or WindowPolicy()
    arr = np.asarray(points)
    if np.iscomplexobj(arr):
        coords = np.column_stack([arr.real.ravel(), arr.imag.ravel()])
    else:
        coords = np.asarray(arr, dtype=float).reshape(-1, 2)
    if coords.shape[0] < MIN_POINTS:
        raise DomainError(f"need at least {MIN_POINTS} points, got {coords.shape[0]}")
    mins = coords.min(axis=0)
    extents = coords.max(axis=0) - mins
    extent = float(extents.max())
    if extent == 0.0:
        return degenerate_result(policy)
    scales = _scale_ladder(coords, extent, scale_range, policy)
    if scales.size < 3:
        raise InsufficientScalesError("cloud supports fewer than 3 box scales")
    shifted = coords - mins
    counts = []
    for eps in scales:
        ix = _box_indices(shifted[:, 0], float(extents[0]), eps)
        iy = _box_indices(shifted[:, 1], float(extents[1]), eps)
        # integer pairs encoded as complex for a fast exact unique
        counts.append(np.unique(ix + 1j * iy).size)
    return _regress(
        scales, np.asarray(counts, dtype=np.int64), coords.shape[0], policy, scale_range is None
    )


@dataclass(frozen=True)
class MeasureGrid:
    """Discretized nondecreasing mass profile y -> nu([0, y]).

    knots: increasing reals; mass: the cumulative measure at each knot.
    """

    knots: np.ndarray
    mass: np.ndarray

    def __post_init__(self):
        knots = np.asarray(self.knots, dtype=float)
        mass = np.asarray(self.mass, dtype=float)
        if knots.ndim != 1 or knots.shape != mass.shape:
            raise DomainError("knots and mass must be 1d arrays of equal length")
        if np.any(np.diff(knots) <= 0):
            raise DomainError("knots must be strictly increasing")
        if np.any(np.diff(mass) < 0):
            raise DomainError("mass must be nondecreasing")
        if not np.isfinite(mass[-1]):
            raise DomainError("total mass must be finite")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "mass", mass)

    @property
    def total_mass(self) -> float:
        return float(self.mass[-1] - self.mass[0])


def pushforward_set(grid: MeasureGrid, points) -> np.ndarray:
    """Image {nu([0, y]) : y in points} of a set under the mass profile.

    Monotone linear interpolation between knots; result is the sorted,
    deduplicated set of mass coordinates.  Points outside the knot range
    are refused.
    """
    ys = np.asarray(points, dtype=float).ravel()
    if ys.size and (ys.min() < grid.knots[0] or ys.max() > grid.knots[-1]):
        raise DomainError(
            f"points must lie within the knot range "
            f"[{grid.knots[0]}, {grid.knots[-1]}]"
        )
    vals = np.interp(ys, grid.knots, grid.mass)
    return np.unique(vals)
