from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import airy

from lppkit.core import ParamSet
from lppkit.errors import ContractError, EvaluationError, TruncationError
from lppkit.finite.integrands import transition_integrand
from lppkit.quadrature import (Circle, Factored, NystromScheme, VerticalLine, Wedge,
                               balanced_det, circle_integral, det_exact, double_contour,
                               fredholm_det, graded_panels, line_integral,
                               residue_sum_rational, theta_integral)
from tw_oracle import GUE_MEAN, GUE_VAR, gue_cdf, moments


def test_circle_integral_examples():
    assert abs(circle_integral(lambda z: 1 / z, Circle(0, 1, 32)).value - 1) < 1e-14
    assert abs(circle_integral(lambda z: np.ones_like(z), Circle(0.3, 2, 32)).value) < 1e-14
    assert abs(circle_integral(lambda z: 1 / (z - 0.4) ** 2, Circle(0, 1, 64)).value) < 1e-12
    with pytest.raises(EvaluationError), np.errstate(divide="ignore", invalid="ignore"):
        circle_integral(lambda z: 1 / (z - 1), Circle(0, 1, 8))
    with pytest.raises(ContractError):
        Circle(0, -1)


def test_spectral_convergence():
    f = lambda z: np.exp(z) / (z - 0.5)
    deltas = [circle_integral(f, Circle(0, 1, n)).node_doubling_delta for n in (8, 16, 32)]
    assert deltas[1] < deltas[0] / 100 and deltas[2] <= max(deltas[1] / 100, 1e-15)


def test_residue_sum_examples():
    assert residue_sum_rational([1], [(2, 1)], [2]) == 1
    assert residue_sum_rational([0, 1], [(1, 1), (3, 1)], [1]) == F(-1, 2)
    with pytest.raises(ContractError):
        residue_sum_rational([1], [(2, 1), (2, 1)], [2])
    with pytest.raises(ContractError):
        residue_sum_rational([1], [(2, 1)], [5])


roots = st.fractions(min_value=-2, max_value=2, max_denominator=5)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(-3, 3, max_denominator=4), min_size=1, max_size=4),
       st.lists(st.tuples(roots, st.integers(1, 3)), min_size=1, max_size=3,
                unique_by=lambda t: t[0]))
def test_residue_sum_matches_circle(num, dens):
    val = residue_sum_rational(num, dens, [r for r, _ in dens])

    def f(z):
        out = sum(float(c) * z ** k for k, c in enumerate(num))
        for r, mu in dens:
            out = out / (z - float(r)) ** mu
        return out * np.ones_like(z)

    q = circle_integral(f, Circle(0, 5, 256)).value
    assert abs(complex(val) - q) < 1e-12 * max(1, abs(complex(val)))


def test_contour_deformation_on_transition_integrand():
    p = ParamSet.geometric([F(1, 3), F(1, 2)], [F(1, 2), F(3, 5)])
    f = transition_integrand(p, (0, 1), (2, 3), 2, 2, 1)
    exact = f.residue_sum(f.poles())
    a = circle_integral(f, Circle(0, 4, 128)).value
    b = circle_integral(f, Circle(0, 7, 256)).value
    assert abs(a - b) < 1e-10
    assert abs(a - float(exact)) < 1e-12


def test_line_integral_airy():
    # Ai(s) = (1/2 pi i) int_{Re z = 1} exp(z^3/3 - s z) dz
    line = VerticalLine(1.0, half_height=6.0, nodes=256)
    r = line_integral(lambda z: np.exp(z ** 3 / 3 - 0 * z), line)
    assert abs(r.value - 0.3550280539) < 1e-10
    assert abs(r.value.imag) < 1e-12
    assert abs(line_integral(lambda z: np.exp(z ** 3 / 3), VerticalLine(1.0, 12.0, 256)).value
               - r.value) < 1e-12
    with pytest.raises(TruncationError):
        line_integral(lambda z: np.exp(z ** 3 / 3), VerticalLine(1.0, 1.0, 64))


def test_wedge_contour_airy():
    w = Wedge(0.5, np.pi / 3, length=7.0, per_panel=16)
    for s in (-1.0, 0.0, 1.5):
        v = line_integral(lambda z: np.exp(z ** 3 / 3 - s * z), w).value
        assert abs(v - airy(s)[0]) < 1e-12


def test_graded_panels():
    b = graded_panels(8.0, 6, max_panel=0.5)
    assert b[0] == 0 and b[-1] == 8.0 and np.all(np.diff(b) <= 0.5 + 1e-15)
    assert np.diff(b)[0] < np.diff(b)[-1]


def test_theta_integral_examples():
    assert abs(theta_integral(lambda t: 1.0).value - 1) < 1e-14
    assert abs(theta_integral(lambda t: t).value - 1) < 1e-14
    assert abs(theta_integral(lambda t: 1 / t).value) < 1e-14
    for sub in (True, False):
        v = theta_integral(lambda t: 2 + t ** 3 - 1 / t ** 2, 1.5, 64, sub).value
        assert abs(v - 3) < 1e-10
    with pytest.raises(ContractError):
        theta_integral(lambda t: 1.0, 0.9)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10_000))
def test_balanced_det_matches_numpy(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    a *= 10.0 ** rng.integers(-8, 8, size=(n, 1))
    ref = np.linalg.det(a)
    assert abs(balanced_det(a) - ref) <= 1e-10 * abs(ref)


def test_det_exact():
    assert det_exact([[F(1, 2), F(1, 3)], [F(1, 4), F(1, 5)]]) == F(1, 10) - F(1, 12)
    assert det_exact([[0, 1], [1, 0]]) == -1


def test_fredholm_zero_and_rank_one():
    sch = NystromScheme.interval(0.0, 2.0, 24)
    assert fredholm_det(lambda u, v: 0 * u * v, sch) == 1
    a = lambda u: np.exp(-u)
    b = lambda v: np.cos(v)
    # int_0^2 e^{-u} cos u du
    ab = 0.5 * (1 + np.exp(-2) * (np.sin(2) - np.cos(2)))
    assert abs(fredholm_det(lambda u, v: a(u) * b(v), sch) - (1 + ab)) < 1e-12


def _airy_kernel(u, v):
    ai_u, aip_u, _, _ = airy(u)
    ai_v, aip_v, _, _ = airy(v)
    with np.errstate(invalid="ignore", divide="ignore"):
        K = (ai_u * aip_v - aip_u * ai_v) / (u - v)
    diag = np.broadcast_to(u == v, K.shape)
    return -np.where(diag, aip_u ** 2 - u * ai_u ** 2, K)


def test_airy_kernel_fredholm_matches_oracle():
    sch = NystromScheme.interval(0.0, 14.0, 24, panels=4)
    v = fredholm_det(_airy_kernel, sch)
    assert abs(v - gue_cdf(0.0)) < 1e-10
    assert abs(fredholm_det(_airy_kernel, sch.refined()) - v) < 1e-12


def test_oracle_moments():
    mean, var = moments(gue_cdf, -9.0, 6.0)
    assert abs(mean - GUE_MEAN) < 1e-8 and abs(var - GUE_VAR) < 1e-8


def test_double_contour_layouts():
    f = Factored(F(1), 0, {F(2): -1})
    g = Factored(F(1), 0, {F(1, 2): -1})
    # separated contours only see the z-pole at 2: 1/(2 - 1/2)
    assert double_contour(f, g, [F(2)], [F(1, 2)], "disjoint") == F(2, 3)
    # nested: the residue at z = w cancels it
    assert double_contour(f, g, [F(2)], [F(1, 2)], "z_outer") == 0
    assert double_contour(f, g, [F(2)], [F(1, 2)], "w_outer") == 0
    # check the nested value against quadrature on circles |w| = 1 inside |z| = 3
    z, wz = Circle(0, 3, 128).rule()
    w, ww = Circle(0, 1, 128).rule()
    q = wz @ (1 / ((z[:, None] - 2) * (w[None, :] - 0.5) * (z[:, None] - w[None, :]))) @ ww
    assert abs(q) < 1e-12
    with pytest.raises(ContractError):
        double_contour(f, g, [], [], "sideways")
