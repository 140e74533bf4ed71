"""Digit-restriction Cantor sets: deterministic subsets of [0,1] with known dimension.

A spec (base b, kept digit set K) describes the reals whose base-b expansion
uses only digits from K; the exact Hausdorff dimension log|K|/log b makes
these the ground-truth test sets for every dimension experiment in the lab.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, DomainError

#: hard cap on the number of points a discretization may produce
MAX_POINTS = 10**7


@dataclass(frozen=True)
class CantorSpec:
    """Self-similar digit-restriction subset of [0, 1].

    base: expansion base b >= 2
    digits: kept digits, a nonempty subset of {0, ..., b-1}
    depth: default recursion depth for :func:`discretize`
    """

    base: int
    digits: tuple[int, ...]
    depth: int = 10

    def __post_init__(self):
        if self.base < 2:
            raise DomainError(f"base must be >= 2, got {self.base}")
        digits = tuple(sorted(set(int(d) for d in self.digits)))
        if not digits:
            raise DomainError("digit set must be nonempty")
        if digits[0] < 0 or digits[-1] >= self.base:
            raise DomainError(f"digits must lie in [0, {self.base - 1}], got {digits}")
        if self.depth < 1:
            raise DomainError(f"depth must be >= 1, got {self.depth}")
        object.__setattr__(self, "digits", digits)

    @property
    def n_digits(self) -> int:
        return len(self.digits)

    def to_json(self) -> str:
        return json.dumps({"b": self.base, "K": list(self.digits), "depth": self.depth})

    @classmethod
    def from_json(cls, text: str) -> "CantorSpec":
        obj = json.loads(text)
        return cls(base=obj["b"], digits=tuple(obj["K"]), depth=obj.get("depth", 10))


def middle_thirds(depth: int = 10) -> CantorSpec:
    """The classical middle-thirds set: base 3, digits {0, 2}, dimension log2/log3."""
    return CantorSpec(base=3, digits=(0, 2), depth=depth)


def exact_dimension(spec: CantorSpec) -> float:
    """Exact (Hausdorff = box) dimension log m / log b of the limit set."""
    return math.log(spec.n_digits) / math.log(spec.base)


def discretize(spec: CantorSpec, depth: int | None = None) -> np.ndarray:
    """Left endpoints of the depth-n cylinder intervals, sorted ascending.

    Returns m^n points, each a left endpoint of one surviving interval of
    length b^-n; left endpoints belong to the limit set itself.  Digits are
    accumulated in integer arithmetic, so each value is the correctly
    rounded m / b^n and depth-nesting is exact on the integer side.
    """
    n = spec.depth if depth is None else int(depth)
    if n < 1:
        raise DomainError(f"depth must be >= 1, got {n}")
    m = spec.n_digits
    if m**n > MAX_POINTS:
        raise BudgetError(f"m^depth = {m}**{n} exceeds the {MAX_POINTS:.0e} point budget")
    if n * math.log2(spec.base) > 53:
        raise BudgetError(f"b^depth = {spec.base}**{n} is not exactly representable")
    digits = np.asarray(spec.digits, dtype=np.int64)
    acc = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        acc = (acc[:, None] * spec.base + digits[None, :]).ravel()
    return acc.astype(float) / float(spec.base) ** n
