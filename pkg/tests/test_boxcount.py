"""Box-counting estimator: exact fixtures, invariants, windows, mass profiles."""

import json
import math

import numpy as np
import pytest

from slelab.boxcount import (
    MeasureGrid,
    WindowPolicy,
    box_dimension_1d,
    box_dimension_2d,
    pushforward_set,
)
from slelab.cantor import discretize, middle_thirds
from slelab.errors import DomainError, InsufficientScalesError


class TestFixtures1d:
    def test_uniform_interval(self):
        result = box_dimension_1d(np.linspace(0.0, 1.0, 10_001))
        assert abs(result.slope - 1.0) < 0.02

    def test_single_point_repeated(self):
        result = box_dimension_1d(np.zeros(500))
        assert result.slope == 0.0

    def test_middle_thirds_endpoints(self):
        result = box_dimension_1d(discretize(middle_thirds(), 10))
        assert abs(result.slope - math.log(2) / math.log(3)) < 0.02

    def test_too_few_points(self):
        with pytest.raises(DomainError):
            box_dimension_1d(np.linspace(0, 1, 50))


class TestFixtures2d:
    def test_segment(self):
        pts = np.linspace(0.0, 1.0, 10_000) + 0.5j
        result = box_dimension_2d(pts)
        assert abs(result.slope - 1.0) < 0.03

    def test_filled_square(self):
        g = np.linspace(0.0, 1.0, 300)
        xy = np.stack(np.meshgrid(g, g), axis=-1).reshape(-1, 2)
        result = box_dimension_2d(xy)
        assert abs(result.slope - 2.0) < 0.03

    def test_accepts_complex_and_real_pairs(self):
        pts = np.linspace(0.0, 1.0, 5000) + 1j * np.linspace(0.0, 1.0, 5000)
        as_pairs = np.column_stack([pts.real, pts.imag])
        a = box_dimension_2d(pts)
        b = box_dimension_2d(as_pairs)
        assert a.slope == b.slope


class TestInvariants:
    def test_exact_scale_invariance(self):
        ys = discretize(middle_thirds(), 9)
        base = box_dimension_1d(ys)
        moved = box_dimension_1d(4.0 * ys + 0.5)  # exact float scaling
        np.testing.assert_array_equal(base.counts, moved.counts)
        assert moved.slope == pytest.approx(base.slope, abs=1e-12)

    def test_monotone_coupling(self):
        rng = np.random.default_rng(3)
        pts = np.sort(rng.uniform(0.0, 1.0, 500))
        pts[0], pts[-1] = 0.0, 1.0  # pin the anchor and extent
        extra = np.concatenate([pts, rng.uniform(0.2, 0.8, 300)])
        scales = (1e-3, 0.125)
        a = box_dimension_1d(pts, scale_range=scales)
        b = box_dimension_1d(extra, scale_range=scales)
        assert np.all(b.counts >= a.counts)

    def test_counts_monotone_along_ladder(self):
        rng = np.random.default_rng(11)
        result = box_dimension_1d(rng.beta(0.5, 0.5, 2000))
        assert np.all(np.diff(result.counts) >= 0)
        result2 = box_dimension_2d(rng.normal(size=(2000, 2)))
        assert np.all(np.diff(result2.counts) >= 0)

    def test_stderr_shrinks_with_wider_window(self):
        ys = discretize(middle_thirds(), 13)
        narrow = box_dimension_1d(ys, scale_range=(1e-2, 0.125))
        wide = box_dimension_1d(ys, scale_range=(1e-4, 0.125))
        assert wide.stderr < narrow.stderr

    def test_insufficient_scales(self):
        # 150 evenly spaced points support well under 1.5 decades
        with pytest.raises(InsufficientScalesError):
            box_dimension_1d(np.linspace(0.0, 1.0, 150))

    def test_saturation_trim_recorded_in_window(self):
        rng = np.random.default_rng(5)
        pts = rng.uniform(size=5000)
        policy = WindowPolicy(sat_fraction=0.3, floor_percentile=50.0)
        result = box_dimension_1d(pts, window_policy=policy)
        lo, hi = result.window
        assert lo == 0
        assert hi <= len(result.scales)
        assert np.all(result.counts[:hi] <= 0.3 * pts.size)
        assert result.policy["sat_fraction"] == 0.3

    def test_result_json(self):
        result = box_dimension_1d(np.linspace(0, 1, 500))
        obj = json.loads(result.to_json())
        assert set(obj) == {"scales", "counts", "slope", "stderr", "window", "policy"}
        assert len(obj["scales"]) == len(obj["counts"])


class TestMeasureGrid:
    def test_validation(self):
        with pytest.raises(DomainError):
            MeasureGrid(knots=[0.0, 0.0, 1.0], mass=[0.0, 0.5, 1.0])
        with pytest.raises(DomainError):
            MeasureGrid(knots=[0.0, 0.5, 1.0], mass=[0.0, 0.6, 0.5])

    def test_pushforward_identity(self):
        grid = MeasureGrid(knots=np.linspace(0, 1, 101), mass=np.linspace(0, 1, 101))
        ys = np.array([0.05, 0.25, 0.8])
        np.testing.assert_allclose(pushforward_set(grid, ys), ys, atol=1e-15)

    def test_pushforward_plateau_collapses(self):
        knots = np.array([0.0, 0.2, 0.8, 1.0])
        mass = np.array([0.0, 0.5, 0.5, 1.0])
        grid = MeasureGrid(knots=knots, mass=mass)
        out = pushforward_set(grid, np.linspace(0.25, 0.75, 20))
        assert out.size == 1
        assert out[0] == 0.5

    def test_pushforward_range_error(self):
        grid = MeasureGrid(knots=np.linspace(0, 1, 11), mass=np.linspace(0, 2, 11))
        with pytest.raises(DomainError):
            pushforward_set(grid, [1.5])

    def test_pushforward_sorted_unique(self):
        grid = MeasureGrid(knots=np.linspace(0, 1, 11), mass=np.linspace(0, 1, 11) ** 2)
        out = pushforward_set(grid, [0.9, 0.1, 0.5, 0.5])
        assert np.all(np.diff(out) > 0)
        assert out.size == 3
