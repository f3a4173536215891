"""Tracy-Widom distribution functions from their Airy-kernel Fredholm determinants.

These are independent of the two-time kernel machinery and serve as anchors
for its single-time marginals.
"""
from __future__ import annotations

import numpy as np
from scipy.special import airy


def _gl(lo: float, length: float, nodes: int):
    x, w = np.polynomial.legendre.leggauss(nodes)
    return lo + 0.5 * length * (x + 1), 0.5 * length * w


def tracy_widom_gue(s: float, nodes: int = 80, length: float = 16.0) -> float:
    """F_GUE(s) = det(I - K_Airy) on L^2(s, inf)."""
    x, w = _gl(s, length, nodes)
    ai, aip, _, _ = airy(x)
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    K = (ai[:, None] * aip[None, :] - aip[:, None] * ai[None, :]) / dx
    np.fill_diagonal(K, aip ** 2 - x * ai ** 2)
    sw = np.sqrt(w)
    return float(np.linalg.det(np.eye(nodes) - sw[:, None] * K * sw[None, :]))


def tracy_widom_goe(s: float, nodes: int = 80, length: float = 16.0) -> float:
    """F_GOE(s) = det(I - B_s) on L^2(0, inf) with B_s(x, y) = Ai(x + y + s)."""
    x, w = _gl(0.0, length, nodes)
    K = airy(x[:, None] + x[None, :] + s)[0]
    sw = np.sqrt(w)
    return float(np.linalg.det(np.eye(nodes) - sw[:, None] * K * sw[None, :]))
