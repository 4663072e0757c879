import math

import numpy as np
import pytest

from simulation.aggregator import aggregate
from tests.factories import make_log


def test_mean_and_sample_std():
    series = aggregate([make_log([4.0, 4.0], run_id=0), make_log([6.0, 8.0], run_id=1)], label="fixed")
    np.testing.assert_allclose(series.mean, [5.0, 6.0])
    np.testing.assert_allclose(series.std, [math.sqrt(2), math.sqrt(8)])
    assert series.num_runs == 2
    assert series.label == "fixed"


def test_single_run_has_zero_spread():
    series = aggregate([make_log([1.0, 2.0, 3.0])])
    np.testing.assert_array_equal(series.mean, [1.0, 2.0, 3.0])
    np.testing.assert_array_equal(series.std, [0.0, 0.0, 0.0])


def test_time_axis_comes_from_records():
    series = aggregate([make_log([5.0] * 4)])
    assert series.t.tolist() == [0, 1, 2, 3]
    assert len(series) == 4


def test_identical_runs():
    runs = [make_log([5.5, 6.5], run_id=i) for i in range(5)]
    series = aggregate(runs)
    np.testing.assert_array_equal(series.std, [0.0, 0.0])


def test_empty():
    with pytest.raises(ValueError):
        aggregate([])


def test_length_mismatch():
    with pytest.raises(ValueError):
        aggregate([make_log([1.0, 2.0]), make_log([1.0])])
