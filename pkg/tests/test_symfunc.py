import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lppkit.core import ParamSet, exact_law_dp
from lppkit.errors import ContractError, ParameterError
from lppkit.finite import transition_prob
from lppkit.symfunc import (LatticeFunction, complete_homogeneous, elementary, nabla,
                            nabla_inv, one_step_transition, one_step_transition_contour,
                            summation_by_parts_residual, w_weight, w_weight_contour)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=7)


def test_symmetric_polynomial_examples():
    assert complete_homogeneous(0, [F(2), F(5)]) == 1
    assert complete_homogeneous(-3, [F(2)]) == 0
    assert complete_homogeneous(2, [F(1), F(1)]) == 3
    assert elementary(1, [F(2), F(3)]) == 5
    assert elementary(3, [F(2), F(3)]) == 0
    assert elementary(2, [F(2), F(3)]) == 6


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-0.9, 0.9), min_size=1, max_size=5), st.floats(0, 2 * np.pi))
def test_generating_functions(alpha, phase):
    # |z| < 1/max|alpha| keeps the h-series convergent
    z = 0.5 / max(1.0, max(abs(a) for a in alpha)) * np.exp(1j * phase)
    e_sum = sum(elementary(k, alpha) * z ** k for k in range(len(alpha) + 1))
    assert abs(e_sum - np.prod([1 + a * z for a in alpha])) < 1e-12
    h_sum = sum(complete_homogeneous(k, alpha) * z ** k for k in range(80))
    assert abs(h_sum - 1 / np.prod([1 - a * z for a in alpha])) < 1e-12


def test_w_weight_special_cases():
    alpha = [F(2), F(3), F(5, 2)]
    for i in (1, 2, 3):
        assert w_weight(i, i, 4, alpha) == 1
        assert w_weight(i, 1, -1, alpha) == 0
    with pytest.raises(ParameterError):
        w_weight(0, 1, 1, alpha)


@pytest.mark.parametrize("i,j,k", list(itertools.product((1, 2, 3), (1, 2, 3), (0, 1, 3))))
def test_w_weight_matches_contour_form(i, j, k):
    alpha = [2.0, 3.0, 2.5]
    assert abs(w_weight(i, j, k, alpha) - w_weight_contour(i, j, k, alpha)) < 1e-12


def test_one_step_examples():
    assert one_step_transition([F(1, 2)], (2,), (5,)) == F(1, 2) * F(1, 2) ** 3
    assert one_step_transition([F(1, 2), F(1, 3)], (0, 0), (0, 0)) == F(1, 3)
    assert one_step_transition([F(1, 2), F(1, 3)], (1, 1), (0, 2)) == 0


def _states(N, top):
    return [y for y in itertools.product(range(top + 1), repeat=N)
            if all(a <= b for a, b in zip(y, y[1:]))]


@pytest.mark.parametrize("p,x", [((F(1, 2), F(1, 3)), (0, 0)),
                                 ((F(2, 5), F(1, 2), F(1, 3)), (0, 1, 1))])
def test_one_step_matches_dp_and_transition(p, x):
    law = exact_law_dp(ParamSet.geometric([1], p), x, 1, cutoff=4).as_dict()
    pf = [float(v) for v in p]
    for y in _states(len(p), 4):
        if any(a < b for a, b in zip(y, x)):
            continue
        exact = one_step_transition(p, x, y)
        if y[-1] - x[0] <= 4:
            assert exact == law.get(y, 0)
        assert exact == one_step_transition_contour(p, x, y)
        assert abs(one_step_transition(pf, x, y) - float(exact)) < 1e-12
        assert abs(transition_prob(ParamSet.geometric([1.0], pf), x, y, 1).value
                   - float(exact)) < 1e-10


def test_one_step_sums_to_one():
    p = [F(1, 3), F(1, 4)]
    total = sum(one_step_transition(p, (0, 0), y) for y in _states(2, 40))
    # omitted mass: some weight above ~40
    assert 0 < 1 - total < F(1, 10 ** 15)


def test_nabla_example():
    f = LatticeFunction.from_values([F(1)], 0)
    b = F(3)
    g = nabla(b, f)
    assert g(-1) == 1 and g(0) == -1 / b and g(1) == 0 and g(-2) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=6), st.integers(-4, 4),
       rationals.filter(lambda b: b != 0))
def test_nabla_round_trip(values, x0, b):
    f = LatticeFunction.from_values(values, x0)
    lo, hi = x0 - 3, x0 + len(values) + 3
    assert nabla(b, nabla_inv(b, f)).values(lo, hi) == f.values(lo, hi)


def test_nabla_inv_needs_support():
    with pytest.raises(ContractError):
        nabla_inv(F(2), LatticeFunction(lambda x: 1))


@settings(max_examples=50, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=4), st.lists(rationals, min_size=1, max_size=4),
       st.integers(-3, 3), st.integers(-3, 3), rationals.filter(lambda c: c != 0))
def test_summation_by_parts(fv, gv, f0, g0, c):
    f = LatticeFunction.from_values(fv, f0)
    g = LatticeFunction.from_values(gv, g0)
    assert summation_by_parts_residual(c, f, g, -8, 8) == 0
