from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lppkit.core import (ParamSet, exact_law_dp, exact_single_time_prob, exact_twotime_prob,
                         grow, grow_batch, height_interface, sample_weights, weights_block)
from lppkit.errors import OraclePrecisionError, ParameterError, RangeError


def test_params_validation():
    with pytest.raises(ParameterError):
        ParamSet.geometric([1], [1])
    with pytest.raises(ParameterError):
        ParamSet.geometric([F(3, 2)], [F(1, 2)])
    with pytest.raises(ParameterError):
        ParamSet.exponential([-1.0], [0.5])
    p = ParamSet.geometric(["1/3", "1/2"], [F(1, 2)])
    assert p.is_exact and p.rate(2, 1) == F(1, 4)
    assert not p.as_float().is_exact
    with pytest.raises(ParameterError):
        p.require(3, 1)


def test_grow_hand_example():
    # w(i, j) with i the column index
    w = np.array([[1, 0], [2, 3]])
    g = grow(ParamSet.geometric([F(1, 2)] * 2, [F(1, 2)] * 2), (0, 0), 2, weights=w)
    assert g(2, 1) == 3 and g(2, 2) == 6
    assert g(0, 2) == 0 and g(2, 0) == 0
    with pytest.raises(RangeError):
        g(3, 1)
    H = height_interface(g)
    assert H(0, 1) == g(1, 1)
    assert H(0, 3) == 6
    assert H(0, 2) == 0.5 * (H(-1, 2) + H(1, 2))
    with pytest.raises(RangeError):
        H(5, 3)


def test_zero_weights_and_single_column_sum():
    zero = np.zeros((3, 2), dtype=np.int64)
    g = grow(ParamSet.geometric([F(1, 2)] * 3, [F(1, 2)] * 2), (0, 0), 3, weights=zero)
    assert np.all(g.values == 0)
    w = np.array([[2], [0], [5]])
    g = grow(ParamSet.geometric([F(1, 2)] * 3, [F(1, 2)]), (0,), 3, weights=w)
    assert [g(m, 1) for m in (1, 2, 3)] == [2, 2, 7]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(1, 4), st.integers(0, 10_000),
       st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_growth_monotone(m, N, seed, inc):
    x = np.cumsum((inc * N)[:N])
    p = ParamSet.geometric([0.6] * m, [0.7] * N)
    G = grow(p, x, m, seed).values
    assert np.all(np.diff(G, axis=0) >= 0)
    assert np.all(np.diff(G, axis=1) >= 0)
    assert np.all(G[0] >= x)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 1000))
def test_height_interface_at_lattice_points(m, N, seed):
    p = ParamSet.exponential([1.0] * m, [0.5] * N)
    g = grow(p, [0.0] * N, m, seed)
    H = height_interface(g)
    for i in range(1, m + 1):
        for j in range(1, N + 1):
            assert H(i - j, i + j - 1) == g(i, j)


def test_weights_deterministic_and_block_keyed():
    p = ParamSet.geometric([0.5, 0.3], [0.6, 0.4, 0.5])
    a = sample_weights(p, 2, 3, seed=7)
    b = sample_weights(p, 2, 3, seed=7)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sample_weights(p, 2, 3, seed=8))
    blk = weights_block(p, 2, 3, seed=7, block=0, size=5)
    assert np.array_equal(blk[0], a)
    assert not np.array_equal(weights_block(p, 2, 3, 7, 1, 5), blk)


def test_vanishing_rate_gives_zero_weights():
    # rate 0 itself is outside the model; the a_i b_j -> 0+ limit is the point mass at 0
    p = ParamSet.geometric([1e-12, 1e-12], [0.5, 0.5])
    assert np.all(weights_block(p, 2, 2, 0, 0, 1000) == 0)


def test_weight_moments():
    # geometric with parameter 1/2 has mean 1
    w = weights_block(ParamSet.geometric([1.0], [0.5]), 1, 1, 3, 0, 1_000_000)
    assert abs(w.mean() - 1.0) < 4e-3
    e = weights_block(ParamSet.exponential([1.2], [0.8]), 1, 1, 3, 0, 1_000_000)
    assert abs(e.mean() - 0.5) < 3 * 0.5 / 1000


def test_dp_examples():
    law = exact_law_dp(ParamSet.geometric([F(1, 2)], [1]), (0,), 1, cutoff=10)
    for y in range(11):
        assert law.prob((y,)) == F(1, 2) ** (y + 1)
    law = exact_law_dp(ParamSet.geometric([F(1, 2), F(1, 3)], [1]), (0,), 2, cutoff=8)
    assert law.prob((0,)) == F(1, 3)
    with pytest.raises(OraclePrecisionError):
        exact_law_dp(ParamSet.geometric([F(1, 2)], [1]), (0,), 1, cutoff=3, tolerance=F(1, 100))
    with pytest.raises(ParameterError):
        exact_law_dp(ParamSet.geometric([0.5], [0.5]), (0,), 1, cutoff=3)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 4),
       st.lists(st.sampled_from([F(1, 3), F(1, 2), F(2, 3)]), min_size=6, max_size=6))
def test_dp_mass_budget(m, N, cutoff, rates):
    p = ParamSet.geometric(rates[:m], rates[3:3 + N])
    law = exact_law_dp(p, (0,) * N, m, cutoff)
    assert law.total() <= 1
    assert law.total() == 1 - law.truncation_error
    assert all(w >= 0 for w in law.mass)


def test_dp_event_probabilities_consistent():
    p = ParamSet.geometric([F(1, 3), F(1, 2)], [F(1, 2), F(3, 5)])
    law = exact_law_dp(p, (0, 0), 2, cutoff=6)
    direct = sum(w for y, w in zip(law.support, law.mass) if y[0] < 2 and y[1] < 4)
    assert exact_single_time_prob(p, (0, 0), 2, (1, 2), (2, 4)) == direct
    # G(1, 1) <= G(2, 2) < 4 <= h makes the first constraint redundant
    assert exact_twotime_prob(p, (0, 0), 1, 1, 9, 2, 2, 4) == \
        exact_single_time_prob(p, (0, 0), 2, (2,), (4,))


def test_empirical_cdf_matches_dp():
    p = ParamSet.geometric([F(1, 2), F(1, 3)], [F(3, 5), F(1, 2)])
    n_samples = 1_000_000
    G = grow_batch(weights_block(p, 2, 2, 11, 0, n_samples), (0, 0))
    for h in (1, 2, 3, 5):
        exact = float(exact_single_time_prob(p, (0, 0), 2, (2,), (h,)))
        emp = float(np.mean(G[:, 1, 1] < h))
        assert abs(emp - exact) <= 3 * np.sqrt(exact * (1 - exact) / n_samples)
