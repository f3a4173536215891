import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lppkit.core import ParamSet, exact_law_dp, exact_single_time_prob, exact_twotime_prob
from lppkit.errors import ContractError, ParameterError
from lppkit.finite import (Fb_inverse, Fb_matrix, J_matrix, SingleTimeQuery, TwoTimeQuery,
                           clamp_thresholds, exp_single_time_dist, exp_transition_density,
                           exp_twotime_dist, orthogonalizer_A, orthogonalizer_B,
                           single_time_dist, spatial_fredholm_dist, transition_matrix,
                           transition_prob, twotime_dist, twotime_fredholm_dist,
                           twotime_matrices)
from lppkit.finite.orthogonal import twotime_fredholm_matrices

P2 = ParamSet.geometric([F(1, 3), F(1, 2), F(2, 5)], [F(1, 2), F(3, 5)])
P3 = ParamSet.geometric([F(1, 2), F(1, 3), F(1, 2)], [F(3, 5), F(1, 2), F(11, 20)])


def test_transition_examples():
    p = ParamSet.geometric([F(1, 2)], [F(1, 2)])
    assert transition_prob(p, (0,), (0,), 1).exact == F(3, 4)
    assert transition_prob(p, (0,), (2,), 1).exact == F(3, 4) * F(1, 4) ** 2
    # y below x has probability zero; unordered states are rejected
    assert transition_prob(P2, (1, 1), (0, 3), 1).value == 0
    with pytest.raises(ParameterError):
        transition_prob(P2, (0, 0), (2, 1), 1)


def test_transition_rows_sum_to_one():
    x = (0, 1)
    total = sum(transition_prob(P2, x, y, 2).exact
                for y in itertools.product(range(30), repeat=2) if y[0] <= y[1])
    assert 0 <= 1 - total < F(1, 10 ** 8)


def test_transition_matches_dp():
    x = (0, 1)
    law = exact_law_dp(P2, x, 2, cutoff=4).as_dict()
    # beyond the cutoff the DP carries only part of the mass
    for y, w in ((y, w) for y, w in law.items() if y[-1] - x[0] <= 4):
        assert transition_prob(P2, x, y, 2).exact == w
        assert abs(transition_prob(P2.as_float(), x, y, 2, method="quadrature").value
                   - float(w)) < 1e-12


def test_single_time_examples():
    p = ParamSet.geometric([F(1, 2)], [1])
    assert single_time_dist(p, SingleTimeQuery(1, (1,), (1,), (0,))).exact == F(1, 2)
    assert single_time_dist(p, SingleTimeQuery(1, (1,), (3,), (0,))).exact == F(7, 8)
    far = single_time_dist(P3.as_float(), SingleTimeQuery(2, (3,), (200,), (0, 0, 0)))
    assert abs(far.value - 1) < 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3), st.integers(0, 4), st.integers(0, 3))
def test_single_time_monotone(m, h, step):
    x = (0, 1, 1)
    lo = single_time_dist(P3, SingleTimeQuery(m, (3,), (h + 1,), x)).exact
    hi = single_time_dist(P3, SingleTimeQuery(m, (3,), (h + 1 + step,), x)).exact
    more = single_time_dist(P3, SingleTimeQuery(min(m + 1, 3), (3,), (h + 1,), x)).exact
    assert 0 <= more <= lo <= hi <= 1


@pytest.mark.parametrize("m,cuts,hs", [(1, (3,), (2,)), (2, (1, 3), (1, 3)),
                                       (3, (1, 2, 3), (2, 2, 4))])
def test_single_time_matches_dp(m, cuts, hs):
    x = (0, 0, 1)
    q = SingleTimeQuery(m, cuts, hs, x)
    assert single_time_dist(P3, q).exact == exact_single_time_prob(P3, x, m, cuts, hs)
    assert abs(single_time_dist(P3.as_float(), q, method="quadrature").value
               - float(exact_single_time_prob(P3, x, m, cuts, hs))) < 1e-12


def test_strict_inequality_convention():
    # P(G < 1) for one geometric cell is P(w = 0) = 1 - a b
    p = ParamSet.geometric([F(1, 2)], [F(1, 2)])
    assert single_time_dist(p, SingleTimeQuery(1, (1,), (1,), (0,))).exact == F(3, 4)
    assert single_time_dist(p, SingleTimeQuery(1, (1,), (0,), (0,))).exact == 0


def test_clamp_thresholds():
    assert clamp_thresholds([5, 3, 4]) == [3, 3, 4]
    assert clamp_thresholds([1, 2, 3]) == [1, 2, 3]
    with pytest.raises(ContractError):
        SingleTimeQuery(2, (1, 3), (4, 2), (0, 0, 0))
    q = SingleTimeQuery(2, (1, 3), (4, 2), (0, 0, 0), clamp=True)
    assert q.thresholds == (2, 2)
    assert single_time_dist(P3, q).exact == exact_single_time_prob(P3, (0, 0, 0), 2, (1, 3), (4, 2))


def test_query_validation():
    with pytest.raises(ParameterError):
        SingleTimeQuery(1, (2,), (1,), (0, 0, 0))
    with pytest.raises(ParameterError):
        TwoTimeQuery(2, 1, 1, 2, 3, (0, 0))
    with pytest.raises(ParameterError):
        TwoTimeQuery(1, 2, 1, 2, 3, (0, 0))
    with pytest.raises(ParameterError):
        TwoTimeQuery(1, 1, 1, 2, 3, (0, 0), theta_radius=1.0)


@pytest.mark.parametrize("hs", [(2, 2, 2), (1, 2, 3)])
def test_Fb_unit_lower_triangular_and_inverse(hs):
    q = SingleTimeQuery(2, (1, 2, 3), hs, (0, 0, 0))
    Fb = Fb_matrix(P3, q)
    inv = Fb_inverse(P3, q)
    N = 3
    for i in range(N):
        assert Fb[i][i] == 1
        assert all(Fb[i][j] == 0 for j in range(i + 1, N))
    prod = [[sum(Fb[i][k] * inv[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
    assert prod == [[int(i == j) for j in range(N)] for i in range(N)]


def test_spatial_fredholm_matches_determinant():
    q = SingleTimeQuery(3, (1, 3), (2, 3), (0, 0, 0))
    assert spatial_fredholm_dist(P3, q).exact == single_time_dist(P3, q).exact
    with pytest.raises(ParameterError):
        spatial_fredholm_dist(P3, SingleTimeQuery(3, (3,), (2,), (0, 0, 1)))


TQ = TwoTimeQuery(1, 1, 2, 3, 4, (0, 0, 0))


def test_orthogonalizers_unit_lower_triangular():
    for fn in (orthogonalizer_A, orthogonalizer_B):
        M = [[fn(P3, TQ, i, j) for j in range(1, 4)] for i in range(1, 4)]
        assert all(M[i][i] == 1 for i in range(3))
        assert all(M[i][j] == 0 for i in range(3) for j in range(i + 1, 3))


def test_J_indicator_structure():
    n = TQ.n
    for i in range(1, 4):
        for j in range(1, 4):
            if j > n:
                assert J_matrix("J1", P3, TQ, i, j) == 0
            if i <= n:
                assert J_matrix("J2", P3, TQ, i, j) == 0


def test_orthogonalization_identity_and_shifted_exponent():
    N, n = TQ.N, TQ.n
    L1, _ = twotime_matrices(P3, TQ)
    A = [[orthogonalizer_A(P3, TQ, i, j) for j in range(1, N + 1)] for i in range(1, N + 1)]
    B = [[orthogonalizer_B(P3, TQ, i, j) for j in range(1, N + 1)] for i in range(1, N + 1)]
    AL = [[sum(A[i][k] * L1[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
    ALB = [[sum(AL[i][k] * B[k][j] for k in range(N)) for j in range(N)] for i in range(N)]

    def residual(shift):
        F1, _ = twotime_fredholm_matrices(P3, TQ, zeta_shift=shift)
        return max(abs(ALB[i][j] - (1 if i == j < n else 0) - F1[i][j])
                   for i in range(N) for j in range(N))

    assert residual(0) == 0
    assert residual(1) > F(1, 1000)


def test_twotime_matches_dp_and_fredholm():
    for m, n, h, M, H in [(1, 1, 2, 3, 4), (1, 2, 1, 2, 3), (2, 1, 3, 3, 3)]:
        q = TwoTimeQuery(m, n, h, M, H, (0, 0, 0))
        exact = exact_twotime_prob(P3, (0, 0, 0), m, n, h, M, 3, H)
        assert twotime_dist(P3, q).exact == exact
        assert twotime_fredholm_dist(P3, q).exact == exact
        assert abs(twotime_dist(P3.as_float(), q).value - float(exact)) < 1e-12
        assert abs(twotime_fredholm_dist(P3.as_float(), q).value - float(exact)) < 1e-9


def test_twotime_theta_radius_invariance():
    pf = P3.as_float()
    vals = [twotime_dist(pf, TwoTimeQuery(1, 1, 2, 3, 4, (0, 1, 1), theta_radius=r)).value
            for r in (1.5, 3.0)]
    assert abs(vals[0] - vals[1]) < 1e-12
    q = TwoTimeQuery(1, 1, 2, 3, 4, (0, 1, 1))
    assert abs(twotime_dist(pf, q, method="quadrature").value - vals[0]) < 1e-12
    assert abs(twotime_dist(P3, q).value - vals[0]) < 1e-12


PE = ParamSet.exponential([1.0, 0.8, 1.2], [0.5, 0.7])


def test_exponential_one_cell_density():
    p = ParamSet.exponential([1.5], [0.5])
    for y in (0.0, 0.3, 2.0):
        assert abs(exp_transition_density(p, (0.0,), (y,), 1) - 2.0 * np.exp(-2.0 * y)) < 1e-12
    q = SingleTimeQuery(1, (1,), (1.0,), (0.0,))
    assert abs(exp_single_time_dist(p, q).value - (1 - np.exp(-2.0))) < 1e-12


def test_exponential_residue_matches_quadrature():
    x, y = (0.0, 0.4), (0.7, 1.3)
    a = exp_transition_density(PE, x, y, 3)
    b = exp_transition_density(PE, x, y, 3, method="quadrature")
    assert a > 0 and abs(a - b) < 1e-10
    q = SingleTimeQuery(3, (2,), (2.0,), x)
    assert abs(exp_single_time_dist(PE, q).value
               - exp_single_time_dist(PE, q, method="quadrature").value) < 1e-10
    tq = TwoTimeQuery(1, 1, 1.5, 3, 3.0, x)
    r = exp_twotime_dist(PE, tq).value
    assert 0 < r < 1
    assert abs(r - exp_twotime_dist(PE, tq, method="quadrature").value) < 1e-9
