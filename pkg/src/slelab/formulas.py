"""Closed-form dimension-transformation formulas for SLE/LQG.

Everything here is exact double-precision algebra: the quadratic boundary
KPZ function ``psi`` and its inverse, the planar transformation ``phi`` with
its kappa <-> 16/kappa duality, the quantum-length and quantum-natural-time
KPZ polynomials, the peanosphere Brownian correlation, and the table of
known SLE dimension constants.  No randomness, no estimation; this module
is the oracle the Monte Carlo experiments are checked against.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = [
    "validate_kappa",
    "validate_gamma",
    "gamma_for_kappa",
    "coupling_q",
    "phi",
    "psi",
    "psi_inverse",
    "phi_via_psi",
    "length_kpz",
    "natural_time_kpz",
    "peanosphere_correlation",
    "curve_dimension",
    "boundary_intersection_dimension",
    "double_point_dimension",
    "cut_point_dimension",
    "dual_boundary_hit_dimension",
    "ancestor_free_dimension",
    "known_dimensions",
]


def validate_kappa(kappa: float) -> float:
    """Check kappa > 0, kappa != 4 and return it as a float.

    kappa = 4 is excluded outright rather than treated as a limit: the
    formulas below are not established there.
    """
    kappa = float(kappa)
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa}")
    if kappa == 4.0:
        raise DomainError("kappa = 4 is excluded")
    return kappa


def validate_gamma(gamma: float) -> float:
    """Check 0 < gamma < 2 and return it as a float."""
    gamma = float(gamma)
    if not 0.0 < gamma < 2.0:
        raise DomainError(f"gamma must lie in (0, 2), got {gamma}")
    return gamma


def gamma_for_kappa(kappa: float) -> float:
    """Coupling constant for a given kappa: sqrt(kappa) below 4, 4/sqrt(kappa) above."""
    kappa = validate_kappa(kappa)
    return math.sqrt(kappa) if kappa < 4.0 else 4.0 / math.sqrt(kappa)


def coupling_q(gamma: float) -> float:
    """Coordinate-change constant Q = 2/gamma + gamma/2."""
    gamma = validate_gamma(gamma)
    return 2.0 / gamma + gamma / 2.0


#: slack for values that are in [0, 1] up to rounding of an upstream formula
_EDGE_TOL = 1e-12


def _check_unit_interval(d, name: str = "d"):
    arr = np.asarray(d, dtype=float)
    if np.any(arr < -_EDGE_TOL) or np.any(arr > 1.0 + _EDGE_TOL):
        raise DomainError(f"{name} must lie in [0, 1], got {d}")
    return np.clip(arr, 0.0, 1.0)


def phi(kappa: float, d):
    """Planar dimension of a boundary set of dimension ``d`` zipped into an SLE_kappa curve.

    Evaluates (1/(32k)) (4 + k - s)(12 + 3k + s) with s = sqrt((4+k)^2 - 16kd),
    rewritten as d (12 + 3k + s) / (2 (4 + k + s)) to avoid the square-root
    cancellation near d = 0.  Accepts scalar or array ``d`` in [0, 1];
    satisfies phi(kappa, .) == phi(16/kappa, .).
    """
    kappa = validate_kappa(kappa)
    arr = _check_unit_interval(d)
    s = np.sqrt((4.0 + kappa) ** 2 - 16.0 * kappa * arr)
    out = arr * (12.0 + 3.0 * kappa + s) / (2.0 * (4.0 + kappa + s))
    return float(out) if np.isscalar(d) or np.ndim(d) == 0 else out


def psi(gamma: float, d):
    """One-dimensional boundary KPZ polynomial (1 + g^2/4) d - (g^2/4) d^2."""
    gamma = validate_gamma(gamma)
    arr = _check_unit_interval(d)
    q = gamma * gamma / 4.0
    out = (1.0 + q) * arr - q * arr * arr
    return float(out) if np.isscalar(d) or np.ndim(d) == 0 else out


def psi_inverse(gamma: float, d):
    """Inverse of ``psi`` on [0, 1] (the smaller quadratic root).

    The root above the parabola's vertex is rejected; only the branch taking
    values in [0, 1] inverts the boundary KPZ relation.  Uses the conjugate
    form 2d / (a + sqrt(a^2 - g^2 d)) which is stable for small gamma.
    """
    gamma = validate_gamma(gamma)
    arr = _check_unit_interval(d)
    a = 1.0 + gamma * gamma / 4.0
    out = 2.0 * arr / (a + np.sqrt(a * a - gamma * gamma * arr))
    return float(out) if np.isscalar(d) or np.ndim(d) == 0 else out


def phi_via_psi(kappa: float, d):
    """``phi`` computed through the composition 2 psi(psi_inverse(d)/2).

    Independent route to the same function, used to cross-check ``phi``:
    gamma is derived from kappa, the boundary dimension is pulled back to
    the quantum side, halved, and pushed forward again with a factor 2.
    """
    gamma = gamma_for_kappa(kappa)
    x = psi_inverse(gamma, d)
    half = np.multiply(x, 0.5)
    out = np.multiply(psi(gamma, half), 2.0)
    return float(out) if np.isscalar(d) or np.ndim(d) == 0 else out


def length_kpz(gamma: float, d_time):
    """Euclidean dimension of a curve subset from its quantum-length time dimension.

    (1 + g^2/4) t - (g^2/8) t^2, i.e. 2 psi(gamma, t/2).  Intended for
    gamma = sqrt(kappa) with kappa in (0, 4).
    """
    gamma = validate_gamma(gamma)
    arr = _check_unit_interval(d_time, "d_time")
    q = gamma * gamma
    out = (1.0 + q / 4.0) * arr - (q / 8.0) * arr * arr
    return float(out) if np.isscalar(d_time) or np.ndim(d_time) == 0 else out


def natural_time_kpz(gamma: float, d_time):
    """Euclidean dimension of a curve subset from its quantum-natural-time dimension.

    (1 + 4/g^2) t - (2/g^2) t^2, intended for gamma = 4/sqrt(kappa) with
    kappa in (4, 8).  Returns the raw polynomial value even when it exceeds
    2; clamping is the caller's business and would hide bugs here.
    """
    gamma = validate_gamma(gamma)
    arr = _check_unit_interval(d_time, "d_time")
    q = gamma * gamma
    out = (1.0 + 4.0 / q) * arr - (2.0 / q) * arr * arr
    return float(out) if np.isscalar(d_time) or np.ndim(d_time) == 0 else out


def peanosphere_correlation(kappa: float) -> float:
    """Correlation -cos(4 pi / kappa) of the boundary-length Brownian pair, kappa > 4."""
    kappa = validate_kappa(kappa)
    if kappa <= 4.0:
        raise DomainError(f"peanosphere correlation requires kappa > 4, got {kappa}")
    return -math.cos(4.0 * math.pi / kappa)


def _require_range(kappa: float, lo: float, hi: float, name: str) -> float:
    kappa = validate_kappa(kappa)
    if not lo < kappa < hi:
        raise DomainError(f"{name} is only defined for kappa in ({lo}, {hi}), got {kappa}")
    return kappa


def curve_dimension(kappa: float) -> float:
    """Hausdorff dimension (1 + kappa/8) ^ 2-cap of the SLE_kappa trace."""
    kappa = validate_kappa(kappa)
    return min(1.0 + kappa / 8.0, 2.0)


def boundary_intersection_dimension(kappa: float) -> float:
    """Dimension 2 - 8/kappa of the curve's intersection with the boundary, kappa in (4, 8)."""
    kappa = _require_range(kappa, 4.0, 8.0, "boundary intersection dimension")
    return 2.0 - 8.0 / kappa


def double_point_dimension(kappa: float) -> float:
    """Dimension 2 - (12 - kappa)(4 + kappa)/(8 kappa) of double points, kappa in (4, 8)."""
    kappa = _require_range(kappa, 4.0, 8.0, "double point dimension")
    return 2.0 - (12.0 - kappa) * (4.0 + kappa) / (8.0 * kappa)


def cut_point_dimension(kappa: float) -> float:
    """Dimension 3 - 3 kappa / 8 of cut points, kappa in (4, 8)."""
    kappa = _require_range(kappa, 4.0, 8.0, "cut point dimension")
    return 3.0 - 3.0 * kappa / 8.0


def dual_boundary_hit_dimension(kappa: float) -> float:
    """Dimension 5 - 8/kappa - kappa/2 of the dual curve's boundary hits, kappa in (4, 8).

    This is the positive-half-line intersection dimension of the dual
    SLE_{16/kappa} left-boundary process; phi maps it exactly onto the cut
    point dimension.  (The sign of the kappa/2 term matters: with +kappa/2
    the value leaves [0, 1] and phi's square root turns imaginary.)
    """
    kappa = _require_range(kappa, 4.0, 8.0, "dual boundary hit dimension")
    return 5.0 - 8.0 / kappa - kappa / 2.0


def ancestor_free_dimension(kappa: float) -> float:
    """Dimension kappa/8 of the ancestor-free times of the peanosphere pair, kappa in (4, 8)."""
    kappa = _require_range(kappa, 4.0, 8.0, "ancestor free dimension")
    return kappa / 8.0


_KNOWN = {
    "curve_dim": curve_dimension,
    "boundary_intersection": boundary_intersection_dimension,
    "double_points": double_point_dimension,
    "cut_points": cut_point_dimension,
    "dual_boundary_hit": dual_boundary_hit_dimension,
    "ancestor_free": ancestor_free_dimension,
}


def known_dimensions(kappa: float) -> dict[str, float]:
    """Table of the named dimension constants valid at this kappa.

    Entries whose validity range excludes ``kappa`` are omitted; use the
    individual accessor functions to get a per-entry domain error instead.
    """
    validate_kappa(kappa)
    table = {}
    for name, fn in _KNOWN.items():
        try:
            table[name] = fn(kappa)
        except DomainError:
            continue
    return table
