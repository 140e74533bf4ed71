"""Digit-restriction sets: exact dimensions, discretization, nesting."""

import math

import numpy as np
import pytest

from slelab.boxcount import box_dimension_1d
from slelab.cantor import CantorSpec, discretize, exact_dimension, middle_thirds
from slelab.errors import BudgetError, DomainError

LOG23 = math.log(2.0) / math.log(3.0)


def test_exact_dimensions():
    assert exact_dimension(middle_thirds()) == pytest.approx(LOG23)
    assert exact_dimension(CantorSpec(2, (0, 1))) == pytest.approx(1.0)
    assert exact_dimension(CantorSpec(4, (0,))) == 0.0


def test_spec_validation():
    with pytest.raises(DomainError):
        CantorSpec(1, (0,))
    with pytest.raises(DomainError):
        CantorSpec(3, ())
    with pytest.raises(DomainError):
        CantorSpec(3, (0, 3))
    with pytest.raises(DomainError):
        CantorSpec(3, (0, 2), depth=0)


def test_discretize_depth_one_and_two():
    spec = middle_thirds()
    np.testing.assert_allclose(discretize(spec, 1), [0.0, 2.0 / 3.0])
    np.testing.assert_allclose(discretize(spec, 2), [0.0, 2.0 / 9.0, 2.0 / 3.0, 8.0 / 9.0])


def test_cardinality_and_sorted():
    spec = CantorSpec(5, (0, 2, 4))
    for depth in (1, 3, 5):
        pts = discretize(spec, depth)
        assert pts.size == 3**depth
        assert np.all(np.diff(pts) > 0)


def test_nesting():
    spec = middle_thirds()
    for depth in (3, 7):
        fine = discretize(spec, depth + 1)
        coarse = discretize(spec, depth)
        # exact integer digits: m/3^(n+1) recovers m, truncation drops a digit
        fine_ints = np.rint(fine * 3.0 ** (depth + 1)).astype(np.int64)
        coarse_ints = np.rint(coarse * 3.0**depth).astype(np.int64)
        np.testing.assert_array_equal(np.unique(fine_ints // 3), coarse_ints)


def test_budget_guard():
    with pytest.raises(BudgetError):
        discretize(middle_thirds(), 24)  # 2^24 > 1e7
    with pytest.raises(BudgetError):
        discretize(CantorSpec(10, (0,)), 20)  # 10^20 not exactly representable


def test_dimension_recovery():
    # box-count estimate converges once the set has >= 1e4 points
    spec = middle_thirds()
    result = box_dimension_1d(discretize(spec, 14))
    assert abs(result.slope - exact_dimension(spec)) < 0.02


def test_json_roundtrip():
    spec = CantorSpec(base=3, digits=(0, 2), depth=12)
    again = CantorSpec.from_json(spec.to_json())
    assert again == spec
