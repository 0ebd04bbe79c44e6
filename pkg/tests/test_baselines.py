"""Reference estimators: medians, sample mean, spectral filtering."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from robustmean import (
    FilterConfig,
    coordinate_median,
    geometric_median,
    iterative_filter,
    sample_mean,
)


def _summed_distances(data, point):
    return float(np.linalg.norm(data - point, axis=1).sum())


# ---------------------------------------------------------------------------
# coordinate_median
# ---------------------------------------------------------------------------

def test_coordinate_median_single_point():
    assert np.array_equal(
        coordinate_median(np.array([[3.0, -1.0]])), np.array([3.0, -1.0])
    )


def test_coordinate_median_odd_count_ignores_far_value():
    data = np.array([[1.0], [2.0], [100.0]])
    assert coordinate_median(data) == np.array([2.0])


def test_coordinate_median_even_count_averages_middle_pair():
    data = np.array([[0.0, 0.0], [1.0, 10.0], [2.0, 0.0], [3.0, 10.0]])
    assert np.array_equal(coordinate_median(data), np.array([1.5, 5.0]))


def test_coordinate_median_permutation_invariant_bitwise(rng):
    data = rng.normal(size=(9, 3))
    perm = rng.permutation(9)
    assert np.array_equal(coordinate_median(data), coordinate_median(data[perm]))


@given(
    data=arrays(np.float64, (6, 2), elements=st.floats(-100, 100)),
    shift=arrays(np.float64, (2,), elements=st.floats(-50, 50)),
)
@settings(max_examples=50, deadline=None)
def test_coordinate_median_translation_equivariant(data, shift):
    lhs = coordinate_median(data + shift)
    rhs = coordinate_median(data) + shift
    assert np.allclose(lhs, rhs, rtol=0, atol=1e-12)


def test_coordinate_median_rejects_bad_shapes():
    with pytest.raises(ValueError):
        coordinate_median(np.zeros(4))
    with pytest.raises(ValueError):
        coordinate_median(np.zeros((0, 3)))


# ---------------------------------------------------------------------------
# sample_mean
# ---------------------------------------------------------------------------

def test_sample_mean_matches_numpy(rng):
    data = rng.normal(size=(7, 4))
    assert np.array_equal(sample_mean(data), data.mean(axis=0))


def test_sample_mean_rejects_bad_shapes():
    with pytest.raises(ValueError):
        sample_mean(np.zeros(4))
    with pytest.raises(ValueError):
        sample_mean(np.zeros((0, 2)))


# ---------------------------------------------------------------------------
# geometric_median
# ---------------------------------------------------------------------------

def test_geometric_median_identical_points_returned_exactly():
    data = np.tile(np.array([2.0, 3.0]), (4, 1))
    assert np.array_equal(geometric_median(data), np.array([2.0, 3.0]))


def test_geometric_median_sample_point_certificate():
    # four unit pulls cancel, so the central sample is certified optimal
    # and returned exactly rather than approached by iteration
    data = np.array([[0.0, 0.0], [1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    assert np.array_equal(geometric_median(data), np.array([0.0, 0.0]))


def test_geometric_median_dimension_one_matches_median_objective():
    # on the line every point between the middle pair is optimal, so the
    # objectives agree even when the argmins differ
    data = np.array([[1.0], [2.0], [7.0], [9.0]])
    med = coordinate_median(data)
    g = geometric_median(data)
    assert abs(_summed_distances(data, g) - _summed_distances(data, med)) < 1e-6


def test_geometric_median_equilateral_triangle_centroid():
    data = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]])
    centroid = data.mean(axis=0)
    g = geometric_median(data)
    assert np.allclose(g, centroid, atol=1e-6)
    diff = g - data
    pull = (diff / np.linalg.norm(diff, axis=1)[:, None]).sum(axis=0)
    assert np.linalg.norm(pull) < 1e-6


def test_geometric_median_objective_never_above_coordinate_median(rng):
    data = rng.normal(size=(25, 5)) * 2.0 + 1.0
    g = geometric_median(data)
    med = coordinate_median(data)
    assert _summed_distances(data, g) <= _summed_distances(data, med) + 1e-9


def test_geometric_median_translation_equivariant(rng):
    data = rng.normal(size=(12, 3))
    shift = np.array([10.0, -4.0, 0.5])
    lhs = geometric_median(data + shift)
    rhs = geometric_median(data) + shift
    assert np.allclose(lhs, rhs, rtol=0, atol=1e-8)


def test_geometric_median_warns_when_iteration_budget_exhausted():
    data = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]])
    with pytest.warns(RuntimeWarning):
        geometric_median(data, max_iter=1)


def test_geometric_median_rejects_bad_shapes():
    with pytest.raises(ValueError):
        geometric_median(np.zeros(3))
    with pytest.raises(ValueError):
        geometric_median(np.zeros((0, 2)))


# ---------------------------------------------------------------------------
# iterative_filter
# ---------------------------------------------------------------------------

def test_filter_clean_data_stops_immediately_at_sample_mean(rng):
    # n samples of unit gaussian: top sample eigenvalue sits near
    # (1 + sqrt(d/n))^2 < 2, so the very first spectral check passes
    data = rng.normal(size=(200, 5))
    out = iterative_filter(data, sigma=1.0)
    assert np.array_equal(out, data.mean(axis=0))


def test_filter_removes_single_far_outlier(rng):
    d = 5
    inliers = rng.normal(size=(49, d))
    outlier = 10.0 * np.sqrt(d) * np.eye(d)[0]
    data = np.vstack([inliers, outlier[None, :]])
    out = iterative_filter(data, sigma=1.0)
    clean_mean = inliers.mean(axis=0)
    assert np.linalg.norm(out - clean_mean) < 0.2
    assert np.linalg.norm(out - data.mean(axis=0)) > 0.3


def test_filter_deterministic_bitwise(rng):
    data = rng.normal(size=(60, 4))
    data[:5] += 8.0
    a = iterative_filter(data, sigma=1.0)
    b = iterative_filter(data, sigma=1.0)
    assert np.array_equal(a, b)


def test_filter_round_cap_limits_removal_per_round(rng):
    # six identical far outliers, removal fraction 0.1 on fifty points:
    # each round strips at most ceil(0.1 * m) = 5, so one round must leave
    # an outlier behind while two rounds clear them all
    d = 4
    inliers = rng.normal(size=(44, d))
    outliers = np.tile(45.0 * np.eye(d)[0], (6, 1))
    data = np.vstack([inliers, outliers])
    cfg_one = FilterConfig(removal_fraction=0.1, max_rounds=1)
    cfg_two = FilterConfig(removal_fraction=0.1, max_rounds=2)
    partial = iterative_filter(data, sigma=1.0, cfg=cfg_one)
    full = iterative_filter(data, sigma=1.0, cfg=cfg_two)
    assert abs(partial[0]) > 0.5  # surviving outlier still drags the mean
    assert abs(full[0]) < 0.3


def test_filter_warns_when_survivors_run_out():
    data = np.array([[0.0, 0.0], [100.0, 0.0]])
    with pytest.warns(RuntimeWarning):
        out = iterative_filter(data, sigma=0.01, cfg=FilterConfig(max_rounds=5))
    # the fallback is the last mean computed from >= 2 points
    assert np.array_equal(out, data.mean(axis=0))


def test_filter_validation_errors():
    data = np.zeros((3, 2))
    with pytest.raises(ValueError):
        iterative_filter(np.zeros((1, 2)), sigma=1.0)
    with pytest.raises(ValueError):
        iterative_filter(data, sigma=0.0)
    with pytest.raises(ValueError):
        iterative_filter(data, sigma=-1.0)


def test_filter_config_validation():
    with pytest.raises(ValueError):
        FilterConfig(spectral_threshold=0.5)
    with pytest.raises(ValueError):
        FilterConfig(removal_fraction=0.0)
    with pytest.raises(ValueError):
        FilterConfig(removal_fraction=0.5)
    with pytest.raises(ValueError):
        FilterConfig(max_rounds=0)
