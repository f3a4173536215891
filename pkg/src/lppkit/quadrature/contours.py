"""Contour parametrizations and quadrature rules.

Each contour exposes ``rule(nodes)`` returning points z_k and weights w_k such
that sum_k w_k f(z_k) approximates (1/2 pi i) times the integral of f along
the contour in its stated orientation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..errors import ContractError, EvaluationError, TruncationError


class Orientation(enum.Enum):
    COUNTER_CLOCKWISE = "ccw"
    UPWARD = "up"


def _gauss_legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


def graded_panels(length: float, levels: int, ratio: float = 0.5,
                  max_panel: float | None = None) -> np.ndarray:
    """Breakpoints 0 < ... < length refined geometrically toward 0.

    With ``max_panel`` every panel longer than it is split evenly.
    """
    pts = np.array([0.0] + [length * ratio ** k for k in range(levels, -1, -1)])
    if max_panel is None:
        return pts
    out = [0.0]
    for lo, hi in zip(pts[:-1], pts[1:]):
        k = max(1, int(np.ceil((hi - lo) / max_panel)))
        out.extend(np.linspace(lo, hi, k + 1)[1:])
    return np.array(out)


def composite_gl(breaks: np.ndarray, per_panel: int):
    """Gauss-Legendre nodes/weights on consecutive panels."""
    x0, w0 = _gauss_legendre(per_panel)
    xs, ws = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        half = 0.5 * (hi - lo)
        xs.append(lo + half * (x0 + 1.0))
        ws.append(half * w0)
    return np.concatenate(xs), np.concatenate(ws)


@dataclass(frozen=True)
class Circle:
    center: complex = 0.0
    radius: float = 1.0
    nodes: int = 64
    orientation: Orientation = Orientation.COUNTER_CLOCKWISE

    def __post_init__(self):
        if not self.radius > 0:
            raise ContractError(f"circle radius must be positive, got {self.radius}")
        if self.nodes < 8:
            raise ContractError(f"need at least 8 nodes, got {self.nodes}")
        if self.orientation is not Orientation.COUNTER_CLOCKWISE:
            raise ContractError("circles are oriented counter-clockwise")

    def rule(self, nodes: int | None = None):
        n = nodes or self.nodes
        t = 2 * np.pi * np.arange(n) / n
        e = np.exp(1j * t)
        z = self.center + self.radius * e
        # dz / (2 pi i) = r e^{it} dt / (2 pi)
        w = self.radius * e / n
        return z, w

    def contains(self, p) -> bool:
        return abs(complex(p) - self.center) < self.radius

    def with_nodes(self, nodes: int) -> "Circle":
        return Circle(self.center, self.radius, nodes, self.orientation)


@dataclass(frozen=True)
class VerticalLine:
    """Re(z) = offset, truncated to |Im z| <= half_height, traversed upward."""
    offset: float
    half_height: float = 12.0
    nodes: int = 128
    panels: int = 8
    orientation: Orientation = Orientation.UPWARD

    def __post_init__(self):
        if not self.half_height > 0:
            raise ContractError("half_height must be positive")
        if self.nodes < 8:
            raise ContractError(f"need at least 8 nodes, got {self.nodes}")

    def rule(self, nodes: int | None = None):
        n = nodes or self.nodes
        per = max(2, n // self.panels)
        breaks = np.linspace(-self.half_height, self.half_height, self.panels + 1)
        y, wy = composite_gl(breaks, per)
        z = self.offset + 1j * y
        w = 1j * wy / (2j * np.pi)
        return z, w

    def endpoints(self):
        return np.array([self.offset - 1j * self.half_height,
                         self.offset + 1j * self.half_height])

    def with_nodes(self, nodes: int) -> "VerticalLine":
        return VerticalLine(self.offset, self.half_height, nodes, self.panels)


@dataclass(frozen=True)
class Wedge:
    """Two rays from a real vertex at angles -angle and +angle, traversed upward.

    angle in (0, pi/2) opens to the right, in (pi/2, pi) opens to the left.
    Panels are graded geometrically toward the vertex.
    """
    vertex: float
    angle: float
    length: float = 8.0
    per_panel: int = 16
    levels: int = 6
    max_panel: float | None = None

    def rule(self, per_panel: int | None = None):
        n = per_panel or self.per_panel
        s, ws = composite_gl(graded_panels(self.length, self.levels,
                                           max_panel=self.max_panel), n)
        d = np.exp(1j * self.angle)
        up = self.vertex + s * d
        down = self.vertex + s * np.conj(d)
        # lower ray runs toward the vertex, upper ray away from it
        z = np.concatenate([down[::-1], up])
        w = np.concatenate([-(ws * np.conj(d))[::-1], ws * d]) / (2j * np.pi)
        return z, w

    def endpoints(self):
        d = np.exp(1j * self.angle)
        return np.array([self.vertex + self.length * np.conj(d),
                         self.vertex + self.length * d])

    @property
    def nodes(self) -> int:
        panels = len(graded_panels(self.length, self.levels, max_panel=self.max_panel)) - 1
        return 2 * self.per_panel * panels

    def with_nodes(self, per_panel: int) -> "Wedge":
        return Wedge(self.vertex, self.angle, self.length, per_panel, self.levels,
                     self.max_panel)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    node_doubling_delta: float

    def __post_init__(self):
        if not self.node_doubling_delta >= 0:
            raise ContractError("node_doubling_delta must be nonnegative")


def _apply(f, z, w):
    vals = np.asarray(f(z), dtype=complex)
    if vals.shape != z.shape:
        vals = np.broadcast_to(vals, z.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        k = int(np.argmax(bad))
        raise EvaluationError(f"integrand not finite at node {k} (z = {z[k]:.6g})")
    return complex(np.sum(w * vals))


def circle_integral(f, c: Circle) -> QuadratureResult:
    """(1/2 pi i) times the integral of f over a counter-clockwise circle."""
    v1 = _apply(f, *c.rule(c.nodes))
    v2 = _apply(f, *c.rule(2 * c.nodes))
    return QuadratureResult(v2, abs(v2 - v1))


def line_integral(f, c, tol: float = 1e-14) -> QuadratureResult:
    """(1/2 pi i) times the integral along a truncated vertical line or wedge.

    Raises TruncationError when |f| at the endpoints exceeds ``tol`` times
    the largest sampled magnitude.
    """
    z, w = c.rule()
    vals = np.asarray(f(z), dtype=complex)
    if not np.all(np.isfinite(vals)):
        k = int(np.argmax(~np.isfinite(vals)))
        raise EvaluationError(f"integrand not finite at node {k} (z = {z[k]:.6g})")
    ends = np.abs(np.asarray(f(c.endpoints()), dtype=complex))
    scale = max(np.max(np.abs(vals)), 1e-300)
    if np.max(ends) > tol * scale:
        raise TruncationError(
            f"integrand at contour ends is {np.max(ends) / scale:.3g} of its peak "
            f"(tolerance {tol:.1g}); extend the contour")
    v1 = complex(np.sum(w * vals))
    c2 = c.with_nodes(2 * (c.per_panel if isinstance(c, Wedge) else c.nodes))
    v2 = _apply(f, *c2.rule())
    return QuadratureResult(v2, abs(v2 - v1))


def theta_integral(g, r: float = 1.5, nodes: int = 64,
                   subtract_pole: bool = True) -> QuadratureResult:
    """(1/2 pi i) times the integral of g(t)/(t - 1) over |t| = r > 1.

    With ``subtract_pole`` the simple pole at t = 1 is removed analytically:
    the value is g(1) plus the trapezoid rule applied to (g(t) - g(1))/(t - 1),
    which is exact for Laurent polynomials of span below ``nodes``.
    """
    if not r > 1:
        raise ContractError(f"theta radius must exceed 1, got {r}")

    def run(n):
        c = Circle(0.0, r, n)
        t, w = c.rule()
        vals = np.array([complex(g(tk)) for tk in t])
        if not np.all(np.isfinite(vals)):
            k = int(np.argmax(~np.isfinite(vals)))
            raise EvaluationError(f"theta integrand not finite at node {k}")
        if subtract_pole:
            g1 = complex(g(1.0))
            return g1 + complex(np.sum(w * (vals - g1) / (t - 1.0)))
        return complex(np.sum(w * vals / (t - 1.0)))

    v1 = run(nodes)
    v2 = run(2 * nodes)
    return QuadratureResult(v2, abs(v2 - v1))
