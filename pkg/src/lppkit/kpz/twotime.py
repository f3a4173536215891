"""Two-time limit distributions: the BBP family and the one-sided Brownian start."""
from __future__ import annotations

from dataclasses import replace

import numpy as np

from ..errors import TruncationError
from ..finite.results import DistResult, from_complex
from ..quadrature.contours import theta_integral
from ..quadrature.fredholm import balanced_det
from .kernels import KernelConfig, LimitKernels, TwoTimeCoords, decay_measure
from .scaling import KPZCoords

MAX_L = 30.0


def _resolve(build, cfg: KernelConfig):
    """Build kernels and grow L until the truncation decay test passes."""
    while True:
        lk, kernels = build(cfg)
        measure = decay_measure(kernels, cfg.L)
        if measure <= cfg.decay_tol:
            return cfg, lk, kernels, measure
        if not cfg.auto_L or cfg.L + 2 > MAX_L:
            raise TruncationError(
                f"kernel boundary size {measure:.3e} at L = {cfg.L} exceeds {cfg.decay_tol:.1e}")
        cfg = replace(cfg, L=cfg.L + 2.0)


def theta_fredholm(F1, F2, cfg: KernelConfig):
    """theta-integral of det(I + theta^{1(u>0)} F1 + theta^{-1(u<=0)} F2) on the Nystrom grid."""
    sch = cfg.scheme()
    u = sch.nodes
    s = np.sqrt(sch.weights)
    M1 = s[:, None] * F1.grid(u, u) * s[None, :]
    M2 = s[:, None] * F2.grid(u, u) * s[None, :]
    pos = u > 0
    eye = np.eye(len(u))

    def g(t):
        up = np.where(pos, t, 1.0)
        down = np.where(pos, 1.0, 1.0 / t)
        return balanced_det(eye + up[:, None] * M1 + down[:, None] * M2)

    return theta_integral(g, cfg.theta_radius, cfg.theta_nodes)


def _finish(res, cfg, lk, measure) -> DistResult:
    details = {"mu": lk.mu, "L": cfg.L, "D1": lk.D1, "D2": lk.D2, "d1": cfg.d1, "d2": cfg.d2,
               "decay_measure": measure, "nystrom_nodes": cfg.scheme().size}
    return from_complex(res.value, res.node_doubling_delta, 1e-7, details)


def bbp_two_time(first: KPZCoords, second: KPZCoords, lambdas=(),
                 cfg: KernelConfig | None = None) -> DistResult:
    """Limit two-time law for r perturbed columns with parameters lambdas."""
    coords = TwoTimeCoords(first, second)

    def build(c):
        lk = LimitKernels(coords, lambdas, c)
        return lk, lk.bbp_kernels()

    cfg, lk, (F1, F2), measure = _resolve(build, cfg or KernelConfig())
    return _finish(theta_fredholm(F1, F2, cfg), cfg, lk, measure)


def brownian_two_time(first: KPZCoords, second: KPZCoords,
                      cfg: KernelConfig | None = None) -> DistResult:
    """Limit two-time law for the one-sided Brownian initial interface."""
    coords = TwoTimeCoords(first, second)

    def build(c):
        lk = LimitKernels(coords, (), c)
        return lk, lk.brownian_kernels()

    cfg, lk, (K1, K2), measure = _resolve(build, cfg or KernelConfig())
    return _finish(theta_fredholm(K1, K2, cfg), cfg, lk, measure)
