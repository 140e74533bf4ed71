"""1D log-correlated field and its boundary multiplicative chaos measure.

The field is a dyadic multiplicative cascade: independent N(0, log 2)
coefficients per dyadic cell, summed down L levels, giving covariance
approximately -log|x - y| up to a bounded error.  Exponentiating gamma/2
times the field with per-level expectation normalization produces a random
mass profile on [0, 1] whose cell masses have mean exactly 2^-L, i.e. unit
expected total mass.  Used to verify the one-dimensional boundary KPZ
relation against digit-restriction test sets.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .boxcount import MeasureGrid, WindowPolicy, box_dimension_1d, pushforward_set
from .cantor import CantorSpec, discretize, exact_dimension
from .errors import BudgetError, DomainError
from .formulas import psi_inverse, validate_gamma

__all__ = [
    "LogField",
    "ChaosProfile",
    "sample_log_field",
    "chaos_profile",
    "verify_psi",
]

MIN_LEVELS = 4
MAX_LEVELS = 24

#: per-level coefficient variance; makes Var[h] = L log 2 and
#: Cov[h(x), h(y)] ~ -log|x - y|
LEVEL_VARIANCE = math.log(2.0)


@dataclass(frozen=True)
class LogField:
    """Hierarchical log-correlated Gaussian field on a dyadic grid of [0, 1]."""

    levels: int
    coefficients: tuple[np.ndarray, ...]  # level ell has 2^ell entries
    values: np.ndarray                    # field value per finest cell (2^L,)
    seed: int

    @property
    def grid(self) -> np.ndarray:
        """Cell midpoints of the finest dyadic partition."""
        n = 1 << self.levels
        return (np.arange(n) + 0.5) / n


def sample_log_field(levels: int, seed: int) -> LogField:
    """Draw the cascade coefficients and synthesize the field on the finest grid."""
    if not MIN_LEVELS <= levels <= MAX_LEVELS:
        raise BudgetError(f"levels must lie in [{MIN_LEVELS}, {MAX_LEVELS}], got {levels}")
    rng = np.random.default_rng(seed)
    sigma = math.sqrt(LEVEL_VARIANCE)
    coeffs = []
    values = np.zeros(1 << levels)
    for ell in range(1, levels + 1):
        c = rng.standard_normal(1 << ell) * sigma
        coeffs.append(c)
        values += np.repeat(c, 1 << (levels - ell))
    return LogField(levels=levels, coefficients=tuple(coeffs), values=values, seed=seed)


class ChaosProfile(MeasureGrid):
    """Mass profile of the boundary chaos measure, with its sampling metadata."""

    def __init__(self, knots, mass, gamma: float, level: int, seed: int):
        super().__init__(knots=knots, mass=mass)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "seed", seed)

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["knot", "mass"])
            for k, m in zip(self.knots, self.mass):
                writer.writerow([repr(float(k)), repr(float(m))])


def chaos_profile(field: LogField, gamma: float) -> ChaosProfile:
    """Cumulative mass profile y -> nu([0, y]) of the normalized chaos measure.

    Cell mass = 2^-L exp((gamma/2) h - (gamma^2/8) L log 2); the subtraction
    cancels E[exp((gamma/2) h)] level by level, so each cell has expected
    mass equal to its length and the profile is an unbiased distortion of
    the identity.
    """
    gamma = validate_gamma(gamma)
    n = 1 << field.levels
    log_mass = (gamma / 2.0) * field.values \
        - field.levels * (gamma * gamma / 8.0) * LEVEL_VARIANCE - math.log(n)
    cell_mass = np.exp(log_mass)
    knots = np.linspace(0.0, 1.0, n + 1)
    mass = np.concatenate([[0.0], np.cumsum(cell_mass)])
    return ChaosProfile(knots=knots, mass=mass, gamma=gamma, level=field.levels, seed=field.seed)


def verify_psi(
    spec: CantorSpec,
    gamma: float,
    replicas: int = 50,
    levels: int = 16,
    seed: int = 0,
    depth: int | None = None,
    window_policy: WindowPolicy | None = None,
) -> dict:
    """Monte Carlo check of the boundary KPZ relation on a digit-restriction set.

    Per replica: sample a field, push the test set through its mass profile,
    and box-count the image.  The estimate is compared against the
    closed-form prediction psi_inverse(gamma, dim Y); the prediction is
    computed before any sampling and never touches the estimates.
    """
    gamma = validate_gamma(gamma)
    if replicas < 1:
        raise DomainError(f"replicas must be >= 1, got {replicas}")
    euclidean = exact_dimension(spec)
    prediction = psi_inverse(gamma, euclidean)
    ys = discretize(spec, depth)
    policy = window_policy or WindowPolicy.for_samples()
    estimates = []
    for r in range(replicas):
        field = sample_log_field(levels, seed + r)
        profile = chaos_profile(field, gamma)
        image = pushforward_set(profile, ys)
        estimates.append(box_dimension_1d(image, window_policy=policy).slope)
    estimates = np.asarray(estimates)
    stderr = float(estimates.std(ddof=1) / math.sqrt(replicas)) if replicas > 1 else 0.0
    return {
        "gamma": gamma,
        "spec": json.loads(spec.to_json()),
        "replicas": replicas,
        "L": levels,
        "euclidean_dim": euclidean,
        "quantum_dim_estimate": float(estimates.mean()),
        "psi_prediction": prediction,
        "stderr": stderr,
        "estimates": [float(e) for e in estimates],
    }
