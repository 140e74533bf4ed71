"""Theoretical predictions for each experiment kind.

Deliberately imports only the closed-form formula layer (plus the exact
Cantor dimension): predictions must stay structurally independent of every
estimator module so a reported prediction can never leak information from
the Monte Carlo side.
"""

from __future__ import annotations

from .cantor import CantorSpec, exact_dimension
from .errors import ConfigError
from .formulas import ancestor_free_dimension, curve_dimension, phi, psi_inverse


def predict(
    experiment: str,
    kappa: float | None = None,
    gamma: float | None = None,
    alpha: float | None = None,
    spec: CantorSpec | None = None,
) -> float:
    """Closed-form target value for an experiment's dimension estimate."""
    if experiment == "formula-identities":
        return 0.0
    if experiment == "zip-cantor":
        return phi(kappa, exact_dimension(spec))
    if experiment == "trace-dim":
        return curve_dimension(kappa)
    if experiment == "gmc-kpz":
        return psi_inverse(gamma, exact_dimension(spec))
    if experiment == "subordinator":
        return alpha * exact_dimension(spec)
    if experiment == "ancestor-free":
        return ancestor_free_dimension(kappa)
    raise ConfigError(f"experiment: unknown kind {experiment!r}")
