"""Validation suites: each compares formula values against an independent oracle."""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import replace
from fractions import Fraction

import numpy as np

from ..core.oracle import exact_law_dp, exact_twotime_prob
from ..core.params import ParamSet
from ..finite import (SingleTimeQuery, TwoTimeQuery, exp_single_time_dist,
                      exp_transition_density, geometric_limit_transition, orthogonalizer_A,
                      orthogonalizer_B, single_time_dist, spatial_fredholm_dist,
                      transition_prob, twotime_dist, twotime_fredholm_dist,
                      twotime_fredholm_matrices, twotime_matrices)
from ..kpz.kernels import KernelConfig, LimitKernels, TwoTimeCoords
from ..kpz.scaling import KPZCoords
from ..kpz.twotime import bbp_two_time, brownian_two_time
from ..symfunc import one_step_transition
from .anchors import tracy_widom_gue, tracy_widom_goe
from .montecarlo import Event, binomial_half_width, mc_joint_cdf
from .report import ValidationReport, check

F = Fraction


def _cycle(values, k):
    return [values[i % len(values)] for i in range(k)]


def exact_small(cfg) -> ValidationReport:
    """Transition probabilities against the DP law for N <= 3, m <= 4.

    Every weight is at most y_N - x_1, so DP probabilities of states with
    y_N - x_1 <= cutoff are exact.
    """
    rep = ValidationReport("exact-small")
    cutoff = 3
    for N, m, shift in itertools.product((1, 2, 3), (1, 2, 3, 4), (0, 1)):
        a = _cycle([F(1, 3), F(1, 2)][shift:] + [F(1, 3), F(1, 2)][:shift], m)
        b = _cycle([F(1, 2), F(3, 5)][shift:] + [F(1, 2), F(3, 5)][:shift], N)
        params = ParamSet.geometric(a, b)
        x = tuple(range(N)) if shift else (0,) * N
        law = exact_law_dp(params, x, m, cutoff)
        floats = params.as_float()
        for y, p in zip(law.support, law.mass):
            if y[-1] - x[0] > cutoff:
                continue
            tag = f"N={N} m={m} a={[str(v) for v in a]} x={x} y={y}"
            t0 = time.perf_counter()
            exact = transition_prob(params, x, y, m).exact
            rep.rows.append(check(f"rational {tag}", p, exact, 0.0,
                                  error=abs(exact - p), t0=t0))
            t0 = time.perf_counter()
            v = transition_prob(floats, x, y, m).value
            rep.rows.append(check(f"float {tag}", p, v, 1e-10, t0=t0))
    return rep


def one_step(cfg, instances: int = 50) -> ValidationReport:
    """Symmetric-function one-column law against the m = 1 transition determinant."""
    rep = ValidationReport("one-step")
    rng = np.random.default_rng(cfg.seed)
    for k in range(instances):
        N = int(rng.integers(1, 5))
        p = [float(v) for v in np.round(rng.uniform(0.1, 0.8, N), 6)]
        x = np.sort(rng.integers(0, 4, N))
        y = np.maximum.accumulate(x + rng.integers(0, 4, N))
        x, y = tuple(int(v) for v in x), tuple(int(v) for v in y)
        t0 = time.perf_counter()
        dw = one_step_transition(p, x, y)
        v = transition_prob(ParamSet.geometric([1.0], p), x, y, 1).value
        rep.rows.append(check(f"#{k} p={p} x={x} y={y}", dw, v, 1e-10, t0=t0))
    return rep


def _identity_params(N: int, exact: bool = False) -> ParamSet:
    p = ParamSet.geometric([F(7, 20), F(1, 2), F(9, 20)],
                           _cycle([F(1, 2), F(3, 5), F(11, 20)], N))
    return p if exact else p.as_float()


def _orthogonalization_error(params: ParamSet, q: TwoTimeQuery, method: str) -> float:
    """max |A L1 B - (1{i = j <= n} + F1)|."""
    N = q.N
    L1, _ = twotime_matrices(params, q, method)
    F1, _ = twotime_fredholm_matrices(params, q, method)
    A = [[orthogonalizer_A(params, q, i, j, method) for j in range(1, N + 1)]
         for i in range(1, N + 1)]
    B = [[orthogonalizer_B(params, q, i, j, method) for j in range(1, N + 1)]
         for i in range(1, N + 1)]
    if params.is_exact and method == "residue":
        AL = [[sum(A[i][k] * L1[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
        return float(max(abs(sum(AL[i][k] * B[k][j] for k in range(N))
                             - (1 if i == j < q.n else 0) - F1[i][j])
                         for i in range(N) for j in range(N)))
    lhs = np.array(A, dtype=complex) @ np.array(L1, dtype=complex) @ np.array(B, dtype=complex)
    rhs = np.diag([1.0 if i <= q.n else 0.0 for i in range(1, N + 1)]) + np.array(F1)
    return float(np.abs(lhs - rhs).max())


def identity(cfg) -> ValidationReport:
    """Determinant forms against their Fredholm rewritings at x = 0, N <= 6."""
    rep = ValidationReport("identity")
    for N in range(2, 7):
        params = _identity_params(N)
        x = (0,) * N
        cuts = tuple(range(1, N + 1, 2))[:-1] + (N,) if N > 2 else (N,)
        hs = tuple(2 + k for k in range(len(cuts)))
        sq = SingleTimeQuery(3, cuts, hs, x)
        t0 = time.perf_counter()
        a = single_time_dist(params, sq).value
        b = spatial_fredholm_dist(params, sq).value
        rep.rows.append(check(f"spatial N={N} cuts={cuts} h={hs}", a, b, 1e-10, t0=t0))

        q = TwoTimeQuery(2, N // 2, 3, 3, 5, x)
        t0 = time.perf_counter()
        a = twotime_dist(params, q).value
        b = twotime_fredholm_dist(params, q).value
        rep.rows.append(check(f"two-time N={N} (m,n,h,M,H)=(2,{N // 2},3,3,5)", a, b, 1e-8,
                              t0=t0))

        for label, prm, method in [("rational", _identity_params(N, exact=True), "residue"),
                                   ("quadrature", params, "quadrature")]:
            t0 = time.perf_counter()
            err = _orthogonalization_error(prm, q, method)
            rep.rows.append(check(f"A.L1.B {label} N={N}", 0.0, err, 1e-10, error=err, t0=t0))
    return rep


def marginalization(cfg) -> ValidationReport:
    """Two-time values with one threshold far out against single-time values."""
    rep = ValidationReport("marginalization")
    cases = [((F(1, 3), F(1, 2), F(1, 3)), (F(1, 2), F(3, 5)), (0, 1), 1, 1, 2, 3, 4),
             ((F(1, 2), F(1, 3), F(1, 2)), (F(3, 5), F(1, 2), F(3, 5)), (0, 0, 0), 2, 2, 3, 3, 5),
             ((F(1, 3), F(1, 2), F(1, 2)), (F(1, 2), F(1, 2), F(3, 5)), (0, 1, 1), 1, 1, 2, 3, 6)]
    for a, b, x, m, n, h, M, H in cases:
        params = ParamSet.geometric(a, b).as_float()
        N = len(x)
        t0 = time.perf_counter()
        single = single_time_dist(params, SingleTimeQuery(m, (n,), (h,), x[:n])).value
        joint = twotime_dist(params, TwoTimeQuery(m, n, h, M, H + 50, x), theta="float").value
        rep.rows.append(check(f"H+50 (m,n,h)=({m},{n},{h}) N={N}", single, joint, 1e-6, t0=t0))
        t0 = time.perf_counter()
        single = single_time_dist(params, SingleTimeQuery(M, (N,), (H,), x)).value
        joint = twotime_dist(params, TwoTimeQuery(m, n, H + 50, M, H, x), theta="float").value
        rep.rows.append(check(f"h+50 (M,N,H)=({M},{N},{H})", single, joint, 1e-6, t0=t0))
    return rep


MC_INSTANCES = [
    (((F(1, 3), F(1, 2), F(1, 3), F(1, 2)), (F(1, 2), F(3, 5))), (0, 0), 2, 1, 4),
    (((F(1, 2), F(1, 3), F(1, 2)), (F(3, 5), F(1, 2), F(3, 5))), (0, 0, 1), 2, 2, 3),
]


def mc_concordance(cfg) -> ValidationReport:
    """Exact two-time probabilities against Monte Carlo at 40 (h, H) points.

    The 3 sigma half-width uses the exact probability (the null hypothesis).
    """
    rep = ValidationReport("mc-concordance", required_fraction=0.95)
    for (a, b), x, m, n, M in MC_INSTANCES:
        params = ParamSet.geometric(a, b)
        N = len(x)
        grid = list(itertools.product((1, 2, 3, 4), (3, 4, 5, 6, 7)))
        t0 = time.perf_counter()
        est = mc_joint_cdf(params, x, [Event.two_time(m, n, h, M, N, H) for h, H in grid],
                           cfg.sample_count, cfg.seed, cfg.workers)
        for (h, H), e in zip(grid, est):
            p = twotime_dist(params, TwoTimeQuery(m, n, h, M, H, x)).value
            rep.rows.append(check(f"N={N} (m,n,M)=({m},{n},{M}) h={h} H={H}", p, e.estimate,
                                  binomial_half_width(p, e.samples), t0=t0))
    return rep


EXP_MC = [((0.6, 0.9, 0.7), (0.5, 0.8), (0.0, 0.5), 3, [(2.0, 3.0), (3.0, 4.0), (4.0, 5.0),
                                                          (3.0, 6.0)]),
          ((1.0, 0.8), (0.4, 0.7, 0.6), (0.0, 0.0, 0.3), 2, [(2.0, 3.0), (3.0, 4.0)])]
EPS_PROBES = [((0.0, 0.5), (1.2, 2.0)), ((0.0, 0.5), (2.0, 2.4)), ((0.0, 0.5), (0.7, 3.1)),
              ((0.0, 0.5), (1.6, 1.7)), ((0.0, 0.5), (2.5, 3.5))]


def exponential(cfg) -> ValidationReport:
    """Exponential single-time law against Monte Carlo, and the geometric limit.

    A limit row passes when err(1e-4)/err(1e-3) lies within a factor 2 of 1/10,
    i.e. |log10(ratio) + 1| <= log10(2).
    """
    rep = ValidationReport("exponential")
    for alpha, beta, x, m, points in EXP_MC:
        params = ParamSet.exponential(alpha, beta)
        N = len(x)
        cuts = tuple(range(N - len(points[0]) + 1, N + 1))
        t0 = time.perf_counter()
        est = mc_joint_cdf(params, x, [Event.single_time(m, cuts, hs) for hs in points],
                           cfg.sample_count, cfg.seed, cfg.workers)
        for hs, e in zip(points, est):
            p = exp_single_time_dist(params, SingleTimeQuery(m, cuts, hs, x)).value
            rep.rows.append(check(f"mc N={N} m={m} cuts={cuts} h={hs}", p, e.estimate,
                                  binomial_half_width(p, e.samples), t0=t0))
    params = ParamSet.exponential((0.7, 1.1), (0.4, 0.9))
    for x, y in EPS_PROBES:
        t0 = time.perf_counter()
        exact = exp_transition_density(params, x, y, 2)
        e3 = abs(geometric_limit_transition(params, x, y, 2, "0.001") - exact)
        e4 = abs(geometric_limit_transition(params, x, y, 2, "0.0001") - exact)
        ratio = e4 / e3
        rep.rows.append(check(f"eps-limit x={x} y={y} err(1e-3)={e3:.3e}", e3, e4,
                              math.log10(2), error=abs(math.log10(ratio) + 1), t0=t0))
    return rep


ANCHOR_XI = (-2.0, -1.0, 0.0, 1.0)


def asymptotic_anchor(cfg) -> ValidationReport:
    """Single-time marginals of the limit laws against Tracy-Widom anchors."""
    rep = ValidationReport("asymptotic-anchor")
    far = KPZCoords(2.0, 0.0, 6.0)
    for xi in ANCHOR_XI:
        t0 = time.perf_counter()
        v = bbp_two_time(KPZCoords(1.0, 0.0, xi), far).value
        rep.rows.append(check(f"bbp r=0 xi1={xi} vs F_GUE", tracy_widom_gue(xi), v, 1e-4,
                              t0=t0))
    for xi in ANCHOR_XI:
        t0 = time.perf_counter()
        v = brownian_two_time(KPZCoords(1.0, 0.0, xi), far).value
        rep.rows.append(check(f"brownian xi1={xi} vs F_GOE^2", tracy_widom_goe(xi) ** 2, v,
                              1e-3, t0=t0))
    return rep


def _perturbations(base: KernelConfig, details: dict):
    return [("mu+1", replace(base, mu=details["mu"] + 1)),
            ("offsets d x2", replace(base, d1=2 * base.d1, d2=2 * base.d2)),
            ("offsets D", replace(base, D1=0.6 * details["D1"], D2=0.8 * details["D2"])),
            ("theta radius 2", replace(base, theta_radius=2.0)),
            ("nodes x2", base.refined()),
            ("L x2", replace(base, L=2 * details["L"], auto_L=False))]


def numerical_health(cfg) -> ValidationReport:
    """Every free numerical knob changes reported probabilities by <= 1e-6."""
    rep = ValidationReport("numerical-health")
    first, second = KPZCoords(1.0, 0.0, -0.5), KPZCoords(2.0, 0.3, 0.4)
    runs = [("bbp lambda=(0.8,1.2)", lambda c: bbp_two_time(first, second, (0.8, 1.2), c)),
            ("bbp r=0", lambda c: bbp_two_time(first, second, (), c)),
            ("brownian", lambda c: brownian_two_time(first, second, c))]
    base = KernelConfig()
    for label, fn in runs:
        r0 = fn(base)
        for name, c in _perturbations(base, r0.details):
            t0 = time.perf_counter()
            rep.rows.append(check(f"{label} {name}", r0.value, fn(c).value, 1e-6, t0=t0))
    params = _identity_params(4)
    q = TwoTimeQuery(2, 2, 3, 3, 5, (0, 1, 1, 2))
    v0 = twotime_dist(params, q, theta="float").value
    for name, qq, method in [("theta radius 2", replace(q, theta_radius=2.0), "residue"),
                             ("theta nodes x2", replace(q, theta_nodes=2 * q.nodes), "residue"),
                             ("contour quadrature", q, "quadrature")]:
        t0 = time.perf_counter()
        v = twotime_dist(params, qq, method, theta="float").value
        rep.rows.append(check(f"finite two-time {name}", v0, v, 1e-6, t0=t0))
    return rep


# v < 0 throughout: J1 and its limit vanish identically for v > 0
KERNEL_PAIRS = [(-1.0, -0.8), (-0.3, -0.2), (0.4, -0.5), (1.2, -1.1), (-1.0, -0.1),
                (0.4, -0.8), (-0.6, -1.3), (1.5, -0.4), (0.1, -0.1), (-1.4, -1.6)]


def kernel_limit(cfg) -> ValidationReport:
    """Perturbed-column kernels approach the Brownian-start kernels as lambda -> 0.

    Each row compares err(1e-4) with err(1e-3) at one (u, v); the row passes
    when err(1e-4) <= err(1e-3)/2.
    """
    rep = ValidationReport("kernel-limit")
    coords = TwoTimeCoords(KPZCoords(1.0, 0.0, 0.3), KPZCoords(2.0, 0.2, 0.5))
    u = np.array([p[0] for p in KERNEL_PAIRS])
    v = np.array([p[1] for p in KERNEL_PAIRS])
    K = LimitKernels(coords, (), KernelConfig())
    ab, ac, ad = (K.rank_one(s)(u, v) for s in "bcd")
    targets = {"J1": K.K1()(u, v) + ab, "J3<": K.K3("<")(u, v) - ac,
               "J3>": K.K3(">")(u, v) - ac - ad}
    errs = {}
    for lam in (1e-3, 1e-4):
        t0 = time.perf_counter()
        J = LimitKernels(coords, (lam,), KernelConfig(mu=K.mu))
        vals = {"J1": J.J1()(u, v), "J3<": J.J3("<")(u, v), "J3>": J.J3(">")(u, v)}
        errs[lam] = {k: np.abs(vals[k] - targets[k]) for k in vals}
    for name in targets:
        for k, (uu, vv) in enumerate(KERNEL_PAIRS):
            e3, e4 = float(errs[1e-3][name][k]), float(errs[1e-4][name][k])
            rep.rows.append(check(f"{name} (u,v)=({uu},{vv})", e3, e4, 0.5,
                                  error=e4 / e3 if e3 > 0 else math.inf, t0=t0))
    return rep


SUITES = {
    "exact-small": exact_small,
    "one-step": one_step,
    "identity": identity,
    "marginalization": marginalization,
    "mc-concordance": mc_concordance,
    "exponential": exponential,
    "asymptotic-anchor": asymptotic_anchor,
    "numerical-health": numerical_health,
    "kernel-limit": kernel_limit,
}


def run_suite(name: str, cfg) -> ValidationReport:
    return SUITES[name](cfg)
